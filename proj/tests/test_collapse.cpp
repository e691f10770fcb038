#include <doctest.h>

#include <map>
#include <random>

#include "nkg/collapse.hpp"
#include "nkg/verification.hpp"

using namespace nkg;

namespace {

Simplex parse(int k, const char* text) { return parse_simplex(Level::of(k), text); }
VertexId vid(int k, const char* text) { return Level::of(k).id(parse_vertex(k, text)); }

SimplexSet set_of(const std::vector<Simplex>& v) { return SimplexSet(v.begin(), v.end()); }

SimplexSet all_faces(const SimplicialComplex& x) { return x.face_set(x.dimension()); }

}  // namespace

TEST_CASE("index sets") {
  for (int k = 0; k <= 4; ++k)
    for (int s = 1; s <= k + 6; ++s) CHECK(index_set_I(k, s).size() == static_cast<std::size_t>(k + 3));
  CHECK(index_set_I(0, 1) == std::vector<int>{3, 4, 5});
  CHECK(index_set_J(2, 1) == std::vector<int>{3, 4, 5, 6, 7});
  CHECK(index_set_J(2, 3) == std::vector<int>{5, 6, 7, 8});
  CHECK(index_set_J(2, 7).empty());
  CHECK(index_set_J(2, 8).empty());
}

TEST_CASE("classification examples") {
  const FaceClass a = classify(Level::of(2), parse(2, "357 368"));
  CHECK(a.family == FaceFamily::kA);
  CHECK(a.s == 1);
  CHECK(a.t == 4);
  CHECK(classify(Level::of(0), parse(0, "135")).family == FaceFamily::kStable);
  const FaceClass c = classify(Level::of(1), parse(1, "124"));
  CHECK(c.family == FaceFamily::kC);
  CHECK(c.v == vid(1, "124"));
  CHECK(to_string(FaceFamily::kA) == "a1");
}

TEST_CASE("A and B families are pairwise disjoint and partition N(S) with C and N(SG)") {
  for (int k = 0; k <= 2; ++k) {
    const Level& lv = Level::of(k);
    const SimplicialComplex ns = neighborhood_complex(KneserGraph(GraphKind::kS, k));
    const SimplicialComplex nsg = neighborhood_complex(KneserGraph(GraphKind::kStable, k));
    const SimplexSet faces = all_faces(ns);
    const SimplexSet stable = all_faces(nsg);
    SimplexMap<int> hits;
    SimplexMap<std::pair<int, int>> a_tag, b_tag;
    for (int s = 1; s <= k + 6; ++s)
      for (int t : index_set_I(k, s))
        for (const Simplex& x : family_A(k, s, t)) {
          ++hits[x];
          a_tag[x] = {s, t};
        }
    for (int s = 1; s <= k + 4; ++s)
      for (int u : index_set_J(k, s))
        for (const Simplex& x : family_B(k, s, u)) {
          ++hits[x];
          b_tag[x] = {s, u};
        }
    for (const Simplex& x : faces) {
      if (has_unstable(lv, x)) ++hits[x];
      if (stable.contains(x)) ++hits[x];
    }
    for (const Simplex& x : faces) {
      REQUIRE(hits[x] == 1);
      const FaceClass fc = classify(lv, x);
      if (a_tag.contains(x)) {
        CHECK(fc.family == FaceFamily::kA);
        CHECK(std::make_pair(fc.s, fc.t) == a_tag[x]);
      } else if (b_tag.contains(x)) {
        CHECK(fc.family == FaceFamily::kB);
        CHECK(std::make_pair(fc.s, fc.t) == b_tag[x]);
      } else if (has_unstable(lv, x)) {
        CHECK(fc.family == FaceFamily::kC);
        CHECK(fc.v == least_unstable(lv, x));
      } else {
        CHECK(fc.family == FaceFamily::kStable);
      }
    }
    CHECK(hits.size() == faces.size());
    CHECK(verify_poset_map([&](const Simplex& x) { return phi_rank(lv, x); }, faces, ComparisonScope::kCoveringPairs).order_preserving);
  }
}

TEST_CASE("sampled classification at k = 3") {
  const Level& lv = Level::of(3);
  const SimplicialComplex ns = neighborhood_complex(KneserGraph(GraphKind::kS, 3));
  std::mt19937_64 rng(3);
  for (int it = 0; it < 300; ++it) {
    const auto members = ns.maximal_faces()[rng() % ns.maximal_faces().size()].members();
    Simplex x;
    for (VertexId v : members)
      if (rng() % 3 == 0) x.insert(v);
    if (x.empty()) x.insert(members.front());
    CHECK_NOTHROW(classify(lv, x));
  }
}

TEST_CASE("A family matchings") {
  for (int ell = 3; ell <= 6; ++ell) {
    CHECK(family_A(1, 1, ell).empty());
    CHECK(matching_A(1, 1, ell).empty());
  }
  const Matching m4 = matching_A(2, 1, 4);
  REQUIRE(m4.size() == 1);
  CHECK(m4.pairs().front().second == parse(2, "357 358 368"));
  const Matching m7 = matching_A(2, 1, 7);
  REQUIRE(m7.size() == 1);
  CHECK(m7.pairs().front().second == parse(2, "358 368 468"));
  CHECK(delta_decompose(2, 4, parse(2, "357 358 368")) == 0);

  for (int r = 1; r <= 3; ++r) {
    for (int ell = 3; ell <= r + 5; ++ell) {
      CHECK_NOTHROW(verify_delta_bijections(r, ell));
      const SimplexSet fam = set_of(family_A(r, 1, ell));
      for (const Simplex& x : fam) {
        const int i = delta_decompose(r, ell, x);
        CHECK(i >= 0);
        CHECK(i <= 7);
      }
      CHECK(verify_poset_map([&](const Simplex& x) { return theta_rank(r, ell, x); }, fam).order_preserving);
    }
    for (int s = 1; s <= r + 6; ++s)
      for (int t : index_set_I(r, s)) {
        const SimplexSet fam = set_of(family_A(r, s, t));
        const Matching m = matching_A(r, s, t);
        CHECK(is_perfect(m, fam));
        CHECK(is_acyclic(m, fam));
        CHECK(euler_characteristic(fam) == 0);
      }
  }
}

TEST_CASE("B family matchings") {
  for (int s = 1; s <= 5; ++s)
    for (int u : index_set_J(1, s)) {
      CHECK(family_B(1, s, u).empty());
      CHECK(matching_B(1, s, u).empty());
    }
  for (int s = 1; s <= 6; ++s)
    for (int u : index_set_J(2, s)) {
      CHECK_NOTHROW(verify_shift_bijection(2, s, u));
      const auto [sp, tp] = shift_target(2, s, u);
      const std::vector<Simplex> fam = family_B(2, s, u);
      CHECK(fam.size() == family_A(1, sp, tp).size());
      for (const Simplex& x : fam) {
        const auto img = shift_map(2, s, u, x);
        REQUIRE(img.has_value());
        const Simplex back = embed(*img, Level::of(1), Level::of(2));
        CHECK(rotate(Level::of(2), back, -(2 + 5 - u)) == x);
      }
      const SimplexSet cells = set_of(fam);
      const Matching m = matching_B(2, s, u);
      CHECK(is_perfect(m, cells));
      CHECK(is_acyclic(m, cells));
    }
}

TEST_CASE("cover data") {
  const int k = 4;
  CHECK(cover(parse_vertex(k, "357")) == std::vector<int>{3, 4, 5, 6, 7});
  CHECK(comp(parse_vertex(k, "359"), 8) == std::vector<int>{4, 6});
  CHECK(comp_min(parse_vertex(k, "359"), 8) == 4);
  CHECK(cover_length(Level::of(k), parse(k, "124 678")) == 8);
}

TEST_CASE("C family matchings") {
  for (int k = 0; k <= 2; ++k) {
    const Level& lv = Level::of(k);
    for (VertexId v = 0; v < lv.size(); ++v) {
      if (lv.stable(v)) continue;
      const SimplexSet fiber = c_fiber(lv, v);
      Matching m;
      REQUIRE_NOTHROW(m = matching_C(lv, v, fiber));
      CHECK(is_perfect(m, fiber));
      CHECK(is_acyclic(m, fiber));
      CHECK(euler_characteristic(fiber) == 0);
      for (const Simplex& x : fiber) {
        // The toggle is an involution.
        const Simplex y = x.toggled(c_toggle(lv, v, x));
        CHECK(fiber.contains(y));
        CHECK(c_toggle(lv, v, y) == c_toggle(lv, v, x));
      }
      CHECK(verify_poset_map([&](const Simplex& x) { return psi_rank(lv, v, x); }, fiber, ComparisonScope::kCoveringPairs).order_preserving);
    }
  }
}

TEST_CASE("collapse onto the stable complex") {
  for (int k = 0; k <= 2; ++k) {
    const Theorem2Result r = theorem2_matching(k);
    CHECK(r.passed());
    CHECK(r.acyclic);
    CHECK(r.critical_is_stable_complex);
    const SimplicialComplex nsg = neighborhood_complex(KneserGraph(GraphKind::kStable, k));
    CHECK(r.critical == all_faces(nsg));
    if (k == 0) CHECK(r.critical.size() == 2);
    for (const LemmaRecord& rec : r.records) CHECK_MESSAGE(rec.passed, rec.lemma << " " << rec.fiber);
  }
}
