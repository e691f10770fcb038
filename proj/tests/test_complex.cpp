#include <doctest.h>

#include <random>

#include "nkg/complex.hpp"

using namespace nkg;

namespace {

Simplex parse(int k, const char* text) { return parse_simplex(Level::of(k), text); }

}  // namespace

TEST_CASE("neighbourhood complex examples") {
  const SimplicialComplex kg0 = neighborhood_complex(KneserGraph(GraphKind::kKneser, 0));
  CHECK(kg0.maximal_faces().size() == 20);
  CHECK(kg0.dimension() == 0);
  CHECK(kg0.face_count(0) == 20);
  CHECK(kg0.face_count(1) == 0);

  const SimplicialComplex sg0 = neighborhood_complex(KneserGraph(GraphKind::kStable, 0));
  CHECK(sg0.maximal_faces().size() == 2);
  CHECK(sg0.face_count(0) == 2);

  const SimplicialComplex s1 = neighborhood_complex(KneserGraph(GraphKind::kS, 1));
  CHECK(s1.is_face(parse(1, "124 126")));
  CHECK_FALSE(s1.is_face(parse(1, "124 367")));
  bool found = false;
  for (const Simplex& m : s1.maximal_faces()) found = found || parse(1, "124 126").subset_of(m);
  CHECK(found);
}

TEST_CASE("complement sets") {
  const Level& l2 = Level::of(2);
  CHECK(complement_set(l2, parse(2, "357 368")).complement == element_mask({1, 2, 4}));
  CHECK(complement_set(l2, parse(2, "357 358 368")).complement == element_mask({1, 2, 4}));
  CHECK(complement_set(Level::of(0), parse(0, "123 456")).complement == 0);
  // Adding a triple removes its elements; removing one can only add them back.
  std::mt19937 rng(7);
  const Level& l = Level::of(2);
  for (int it = 0; it < 500; ++it) {
    Simplex s;
    for (int m = 0; m < 3; ++m) s.insert(static_cast<VertexId>(rng() % l.size()));
    const VertexId x = static_cast<VertexId>(rng() % l.size());
    const ElementMask c = complement_mask(l, s);
    CHECK(complement_mask(l, s.with(x)) == (c & ~l.mask(x)));
    if (s.contains(x) && s.size() > 1)
      CHECK((complement_mask(l, s.without(x)) & ~(c | l.mask(x))) == 0);
  }
}

TEST_CASE("containment pairs") {
  const SimplicialComplex sg1 = neighborhood_complex(KneserGraph(GraphKind::kStable, 1));
  CHECK(sg1.containment_pairs(1).size() == 2 * sg1.face_count(1));
  const SimplicialComplex kg0 = neighborhood_complex(KneserGraph(GraphKind::kKneser, 0));
  CHECK(kg0.containment_pairs(1).empty());
  const SimplicialComplex tri(Level::of(0), {Simplex{0, 1, 2}});
  CHECK(tri.containment_pairs(2).size() == 3);
}

TEST_CASE("downward closure and rotation") {
  std::mt19937 rng(11);
  for (int k = 0; k <= 2; ++k) {
    const Level& lv = Level::of(k);
    for (GraphKind kind : {GraphKind::kKneser, GraphKind::kS}) {
      const SimplicialComplex x = neighborhood_complex(KneserGraph(kind, k));
      for (int d = 0; d <= std::min(x.dimension(), 3); ++d) {
        for (const Simplex& s : x.faces(d)) {
          for (int j = 1; j < k + 6; ++j) CHECK(x.is_face(rotate(lv, s, j)));
          if (s.size() > 1) {
            const auto members = s.members();
            CHECK(x.is_face(s.without(members[rng() % members.size()])));
          }
        }
      }
    }
  }
}

TEST_CASE("face counts against brute force") {
  for (int k = 0; k <= 1; ++k) {
    for (GraphKind kind : {GraphKind::kKneser, GraphKind::kS, GraphKind::kStable}) {
      const KneserGraph g(kind, k);
      const SimplicialComplex x = neighborhood_complex(g);
      const auto& vs = g.vertices();
      const int n = static_cast<int>(vs.size());
      // Subsets of size 1..3 with a common neighbour.
      std::size_t brute[3] = {0, 0, 0};
      for (int a = 0; a < n; ++a) {
        if (!g.neighborhood_unchecked(Simplex{vs[a]}).empty()) ++brute[0];
        for (int b = a + 1; b < n; ++b) {
          if (!g.neighborhood_unchecked(Simplex{vs[a], vs[b]}).empty()) ++brute[1];
          for (int c = b + 1; c < n; ++c)
            if (!g.neighborhood_unchecked(Simplex{vs[a], vs[b], vs[c]}).empty()) ++brute[2];
        }
      }
      for (int d = 0; d < 3; ++d) CHECK(x.face_count(d) == brute[d]);
    }
  }
}
