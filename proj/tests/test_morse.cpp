#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "nkg/collapse.hpp"
#include "nkg/morse.hpp"
#include "nkg/verification.hpp"
#include "oracles.hpp"

using namespace nkg;

namespace {

Simplex parse(int k, const char* text) { return parse_simplex(Level::of(k), text); }

SimplexSet set_of(const std::vector<Simplex>& v) { return SimplexSet(v.begin(), v.end()); }

}  // namespace

TEST_CASE("matching validation") {
  Matching m;
  CHECK_THROWS_AS(m.add(Simplex{1}, Simplex{1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(m.add(Simplex{1}, Simplex{2, 3}), std::invalid_argument);
  m.add(Simplex{1}, Simplex{1, 2});
  CHECK_THROWS_AS(m.add(Simplex{1}, Simplex{1, 3}), std::invalid_argument);
  CHECK(m.size() == 1);
  CHECK(*m.partner(Simplex{1, 2}) == Simplex{1});
}

TEST_CASE("element matchings on A families") {
  const auto a4 = set_of(family_A(2, 1, 4));
  const ElementMatching e = element_matching(a4, parse(2, "358").front());
  REQUIRE(e.matching.size() == 1);
  CHECK(e.matching.pairs().front() ==
        std::make_pair(parse(2, "357 368"), parse(2, "357 358 368")));
  CHECK(e.matched == a4);
  CHECK(is_acyclic(e.matching, a4));
  CHECK(is_perfect(e.matching, a4));

  const auto a7 = set_of(family_A(2, 1, 7));
  const ElementMatching f = element_matching(a7, parse(2, "368").front());
  REQUIRE(f.matching.size() == 1);
  CHECK(f.matching.pairs().front() ==
        std::make_pair(parse(2, "358 468"), parse(2, "358 368 468")));
  CHECK(f.matched == a7);

  CHECK(element_matching(a4, parse(2, "123").front()).matching.empty());
  CHECK(is_perfect(Matching{}, SimplexSet{}));
  CHECK_FALSE(is_perfect(Matching{}, a4));
  CHECK(is_acyclic(Matching{}, a4));
}

TEST_CASE("alternating cycle witness") {
  // Triangle boundary with every vertex pushed into the next edge.
  const SimplexSet cells{Simplex{0}, Simplex{1}, Simplex{2}, Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}};
  Matching m;
  m.add(Simplex{0}, Simplex{0, 1});
  m.add(Simplex{1}, Simplex{1, 2});
  m.add(Simplex{2}, Simplex{0, 2});
  const AcyclicityResult r = check_acyclic(m, cells);
  CHECK_FALSE(r.acyclic);
  REQUIRE(r.cycle.size() == 6);
  for (std::size_t i = 0; i < r.cycle.size(); i += 2) {
    CHECK(*m.partner(r.cycle[i]) == r.cycle[i + 1]);
    CHECK(r.cycle[(i + 2) % r.cycle.size()].subset_of(r.cycle[i + 1]));
  }
  Matching straddle;
  straddle.add(Simplex{0}, Simplex{0, 5});
  CHECK_THROWS_AS(check_acyclic(straddle, cells), std::invalid_argument);
}

TEST_CASE("acyclicity agrees with brute force on small posets") {
  std::mt19937 rng(2024);
  int cyclic = 0, acyclic = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int nv = 3 + static_cast<int>(rng() % 3);
    std::vector<VertexId> ground;
    for (int i = 0; i < nv; ++i) ground.push_back(static_cast<VertexId>(i));
    std::vector<Simplex> cells = oracle::all_subsets(ground, nv == 5 ? 2 : 3);
    std::shuffle(cells.begin(), cells.end(), rng);
    cells.resize(std::min<std::size_t>(cells.size(), 20));
    const SimplexSet cs = set_of(cells);
    Matching m;
    SimplexSet used;
    for (int tries = 0; tries < 30; ++tries) {
      const Simplex& a = cells[rng() % cells.size()];
      const Simplex& b = cells[rng() % cells.size()];
      if (b.size() != a.size() + 1 || !a.subset_of(b) || used.contains(a) || used.contains(b)) continue;
      m.add(a, b);
      used.insert(a);
      used.insert(b);
    }
    const bool fast = is_acyclic(m, cs);
    CHECK(fast == !oracle::has_cycle(m, cells));
    (fast ? acyclic : cyclic)++;
    // Pairs cancel in the Euler characteristic, cyclic or not.
    CHECK(euler_characteristic(cs) == euler_characteristic(critical_cells(cs, m)));
  }
  CHECK(cyclic > 0);
  CHECK(acyclic > 0);
}

TEST_CASE("poset maps") {
  const auto a4 = set_of(family_A(2, 1, 4));
  CHECK(verify_poset_map([](const Simplex&) { return 0LL; }, a4).order_preserving);
  // Larger cells ranked lower: every proper containment violates.
  const PosetMapResult bad =
      verify_poset_map([](const Simplex& s) { return -static_cast<long long>(s.size()); }, a4);
  CHECK_FALSE(bad.order_preserving);
  REQUIRE(bad.violation.has_value());
  CHECK(bad.violation->first.subset_of(bad.violation->second));
}

TEST_CASE("cluster composition") {
  Matching m1, m2;
  m1.add(Simplex{0}, Simplex{0, 1});
  m2.add(Simplex{2}, Simplex{2, 3});
  auto label = [](const Simplex& s) { return s.contains(0) ? 1LL : 2LL; };
  const Matching all = compose_cluster(label, {{1, m1}, {2, m2}});
  CHECK(all.size() == 2);
  const Matching single = compose_cluster([](const Simplex&) { return 1LL; }, {{1, m1}});
  CHECK(single.pairs() == m1.pairs());
  // m2 filed under the wrong label.
  CHECK_THROWS_AS(compose_cluster(label, {{1, m1}, {1 + 5, m2}}), VerificationError);
  Matching clash;
  clash.add(Simplex{0, 1}, Simplex{0, 1, 4});
  CHECK_THROWS_AS(compose_cluster([](const Simplex&) { return 1LL; }, {{1, m1}, {2, clash}}),
                  VerificationError);
}

TEST_CASE("critical cells and counts") {
  const SimplexSet cells{Simplex{0}, Simplex{1}, Simplex{0, 1}};
  Matching m;
  m.add(Simplex{0}, Simplex{0, 1});
  CHECK(critical_cells(cells, m) == SimplexSet{Simplex{1}});
  CHECK(critical_cells(cells, Matching{}) == cells);
  CHECK(count_by_dimension(cells) == std::vector<std::size_t>{2, 1});
  CHECK(euler_characteristic(cells) == 1);
}
