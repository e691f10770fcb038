#include <doctest.h>

#include <algorithm>

#include "nkg/homology.hpp"
#include "nkg/verification.hpp"
#include "nkg/wedge.hpp"

using namespace nkg;

namespace {

SimplexSet set_of(const std::vector<Simplex>& v) { return SimplexSet(v.begin(), v.end()); }

long long signed_count(std::size_t count, int dim) {
  return dim % 2 == 0 ? static_cast<long long>(count) : -static_cast<long long>(count);
}

}  // namespace

TEST_CASE("filtration is a chain and filtration_index agrees with membership") {
  for (int k = 0; k <= 2; ++k) {
    const Level& lv = Level::of(k);
    const SimplicialComplex x0 = filtration(k, 0), x1 = filtration(k, 1), x2 = filtration(k, 2),
                            x3 = filtration(k, 3);
    CHECK(x0.is_subcomplex_of(x1));
    CHECK(x1.is_subcomplex_of(x2));
    CHECK(x2.is_subcomplex_of(x3));
    for (const Simplex& s : x3.face_set(x3.dimension())) {
      const int idx = filtration_index(lv, s);
      CHECK(idx == (x1.is_face(s) ? 1 : x2.is_face(s) ? 2 : 3));
    }
  }
  CHECK_THROWS_AS(filtration_index(Level::of(0), Simplex::from_ids(std::vector<VertexId>{0, 1, 2, 3, 4, 5, 6, 7})),
                  std::domain_error);
}

TEST_CASE("P and Q fibers partition the faces outside N(S)") {
  for (int k = 0; k <= 2; ++k) {
    const Level& lv = Level::of(k);
    const int n = k + 6;
    const SimplicialComplex x1 = filtration(k, 1), x3 = filtration(k, 3);
    SimplexMap<PQTag> tag;
    std::size_t total = 0;
    for (int i = 1; i <= n; ++i) {
      for (int j : index_set_I(k, i))
        for (const Simplex& s : p_fiber(k, i, j)) {
          CHECK(tag.emplace(s, PQTag{PQTag::Kind::kP, i, j, least_unstable(lv, s)}).second);
          ++total;
        }
      for (int j : index_set_J(k, i))
        for (const Simplex& s : q_fiber(k, i, j)) {
          CHECK(tag.emplace(s, PQTag{PQTag::Kind::kQ, i, j, least_unstable(lv, s)}).second);
          ++total;
        }
    }
    std::size_t outside = 0;
    for (const Simplex& s : x3.face_set(x3.dimension())) {
      if (x1.is_face(s)) {
        CHECK_THROWS_AS(pq_classify(lv, s), VerificationError);
        continue;
      }
      ++outside;
      REQUIRE(tag.contains(s));
      const PQTag t = pq_classify(lv, s);
      CHECK(t == tag[s]);
      // Rotation by one shifts both indices.
      const PQTag r = pq_classify(lv, rotate(lv, s, 1));
      CHECK(r.kind == t.kind);
      const int ri = wrap(t.i + 1, n), rj = wrap(t.j + 1, n);
      if (t.kind == PQTag::Kind::kP) {
        CHECK(r.i == ri);
        CHECK(r.j == rj);
      } else {
        // {i, i+1, j, j+1} is symmetric in i and j.
        CHECK(std::minmax(r.i, r.j) == std::minmax(ri, rj));
      }
    }
    CHECK(outside == total);
    if (k == 0) {
      for (int i = 1; i <= n; ++i)
        for (int j : index_set_J(0, i)) CHECK(q_fiber(0, i, j).empty());
    }
  }
}

TEST_CASE("W sets and the C_j census") {
  for (int k = 0; k <= 3; ++k) {
    const Level& lv = Level::of(k);
    for (int j : index_set_I(k, 1)) {
      const auto cj = c_set(k, j);
      CHECK(cj.size() == static_cast<std::size_t>((k + 1) * (k + 2) / 2));
      const auto nc = nc_set(k, j);
      for (VertexId v = 0; v < lv.size(); ++v) {
        const bool in = std::binary_search(nc.begin(), nc.end(), v);
        CHECK(in == (!lv.stable(v) && in_nc(lv.vertex(v), j)));
        if (lv.stable(v)) continue;
        for (VertexId w : w_set(lv, v, j)) {
          CHECK((lv.mask(w) & element_mask({1, 2, j})) == 0);
          if (!lv.stable(w)) CHECK(v < w);
        }
        const bool listed = in || std::binary_search(cj.begin(), cj.end(), v);
        if (!listed) CHECK(w_set(lv, v, j).empty());
      }
    }
  }
}

TEST_CASE("W-sequence residue is one k-cell exactly for C_j") {
  for (int k = 0; k <= 2; ++k) {
    const Level& lv = Level::of(k);
    for (int j : index_set_I(k, 1)) {
      const auto cj = c_set(k, j);
      SimplexSet seen;
      for (VertexId v = 0; v < lv.size(); ++v) {
        if (lv.stable(v)) continue;
        const auto fiber = sigma_fiber(k, j, v);
        if (fiber.empty()) continue;
        seen.insert(fiber.begin(), fiber.end());
        const auto ranks = psi_j_ranks(k, j, v);
        std::vector<Simplex> residue;
        for (const auto& [s, r] : ranks)
          if (r == 0) residue.push_back(s);
        if (std::binary_search(cj.begin(), cj.end(), v)) {
          REQUIRE(residue.size() == 1);
          CHECK(residue.front().dim() == k);
        } else {
          CHECK(residue.empty());
        }
      }
      CHECK(seen == set_of(p_fiber(k, 1, j)));
    }
  }
}

TEST_CASE("fiber matchings and Euler characteristics") {
  for (int k = 0; k <= 2; ++k) {
    const int n = k + 6;
    for (int i = 1; i <= n; ++i) {
      for (int j : index_set_I(k, i)) {
        const FiberMatching fm = matching_P(k, i, j);
        CHECK(fm.cells == set_of(p_fiber(k, i, j)));
        CHECK(is_acyclic(fm.matching, fm.cells));
        CHECK(fm.critical.size() == static_cast<std::size_t>((k + 1) * (k + 2) / 2));
        for (const Simplex& c : fm.critical) CHECK(c.dim() == k);
        CHECK(euler_characteristic(fm.cells) == signed_count(fm.critical.size(), k));
      }
      if (k == 0) continue;
      for (int j : index_set_J(k, i)) {
        const FiberMatching fm = matching_Q(k, i, j);
        CHECK(fm.cells == set_of(q_fiber(k, i, j)));
        CHECK(is_acyclic(fm.matching, fm.cells));
        CHECK(fm.critical.size() == static_cast<std::size_t>(k * (k + 1) / 2));
        for (const Simplex& c : fm.critical) CHECK(c.dim() == k - 1);
        CHECK(euler_characteristic(fm.cells) == signed_count(fm.critical.size(), k - 1));
      }
    }
  }
}

TEST_CASE("closed-form counts") {
  const long long extra_k[] = {18, 84, 240, 540};
  const long long extra_km1[] = {0, 14, 60, 162};
  const long long t[] = {19, 71, 181, 379};
  for (int k = 0; k <= 3; ++k) {
    const Theorem3Counts c = theorem3_counts(k);
    CHECK(c.extra_k_cells == extra_k[k]);
    CHECK(c.extra_km1_cells == extra_km1[k]);
    CHECK(c.predicted_t == t[k]);
    CHECK(c.p_pairs == static_cast<std::size_t>((k + 3) * (k + 6)));
    CHECK(static_cast<long long>(c.p_pairs) * (k + 1) * (k + 2) / 2 == c.extra_k_cells);
    CHECK(static_cast<long long>(c.q_pairs) * k * (k + 1) / 2 == c.extra_km1_cells);
  }
}

TEST_CASE("critical census") {
  for (int k = 0; k <= 2; ++k) {
    CensusOptions opt;
    opt.spot_check_fraction = 1.0;
    const Census c = critical_census(k, opt);
    CHECK(c.passed());
    CHECK(c.spot_checks_passed);
    CHECK(static_cast<long long>(c.p_critical) == c.expected.extra_k_cells);
    CHECK(static_cast<long long>(c.q_critical) == c.expected.extra_km1_cells);
    for (const CensusRow& row : c.rows) {
      CHECK(row.acyclic);
      CHECK(row.critical == static_cast<std::size_t>(row.family == 'P' ? (k + 1) * (k + 2) / 2 : k * (k + 1) / 2));
    }
  }
  // Per-fibre counts at small k.
  const Census c1 = critical_census(1);
  CHECK(std::all_of(c1.rows.begin(), c1.rows.end(),
                    [](const CensusRow& r) { return r.critical == (r.family == 'P' ? 3u : 1u); }));
}

TEST_CASE("wedge poset maps") {
  for (int k = 0; k <= 2; ++k)
    for (const PosetCheck& pc : verify_wedge_poset_maps(k))
      CHECK_MESSAGE(pc.passed, pc.lemma << " " << pc.fiber << " " << pc.witness);
}

TEST_CASE("Morse count matches the wedge homology") {
  for (int k = 0; k <= 1; ++k) {
    const BettiReport b = betti(filtration(k, 3), k + 1);
    const Theorem3Counts c = theorem3_counts(k);
    for (int d = 0; d <= k + 1; ++d) CHECK(b.betti[d] == (d == k ? c.predicted_t : 0));
    CHECK(b.torsion_free());
  }
}
