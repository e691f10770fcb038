#include "nkg/wedge.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "nkg/verification.hpp"

namespace nkg {

namespace {

ElementMask cyc_mask(int n, std::initializer_list<int> elements) {
  ElementMask m = 0;
  for (int e : elements) m |= ElementMask{1} << (wrap(e, n) - 1);
  return m;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

SimplicialComplex filtration(int k, int level) {
  switch (level) {
    case 0: return neighborhood_complex(KneserGraph(GraphKind::kStable, k));
    case 1: return neighborhood_complex(KneserGraph(GraphKind::kS, k));
    case 3: return neighborhood_complex(KneserGraph(GraphKind::kKneser, k));
    case 2: break;
    default: throw std::invalid_argument("filtration level must be 0..3");
  }
  const Level& lv = Level::of(k);
  const SimplicialComplex x1 = filtration(k, 1);
  std::vector<Simplex> gens = x1.maximal_faces();
  // Every face with |C| = 4 outside X_1 lies in the full triple set of [n] \ C
  // for a 4-set C without stable triples.
  const ElementMask full = lv.full_mask();
  for (ElementMask c = 0; c <= full; ++c) {
    if (std::popcount(c) != 4 || !Simplex(lv.stable_triples_inside(c)).empty()) continue;
    const Simplex g(lv.triples_inside(full & ~c));
    if (!g.empty()) gens.push_back(g);
  }
  return SimplicialComplex(lv, std::move(gens));
}

std::string to_string(const PQTag& tag) {
  return std::string(tag.kind == PQTag::Kind::kP ? "P" : "Q") + "(" + std::to_string(tag.i) + "," +
         std::to_string(tag.j) + ")";
}

PQTag pq_classify(const Level& level, const Simplex& sigma) {
  const ElementMask c = complement_mask(level, sigma);
  auto fail = [&](const std::string& why) {
    return VerificationError("pq partition", "{" + to_string(level, sigma) + "}: " + why);
  };
  if (!has_unstable(level, sigma)) throw fail("no unstable member");
  if (!Simplex(level.stable_triples_inside(c)).empty()) throw fail("face of N(S)");
  PQTag tag;
  tag.v = least_unstable(level, sigma);
  if (auto st = a_shape(level.k(), c)) {
    tag.kind = PQTag::Kind::kP;
    std::tie(tag.i, tag.j) = *st;
    return tag;
  }
  if (auto su = b_shape(level.k(), c)) {
    tag.kind = PQTag::Kind::kQ;
    std::tie(tag.i, tag.j) = *su;
    return tag;
  }
  throw fail("complement " + mask_to_string(c));
}

bool in_nc(const Vertex& v, int j) {
  const auto [s1, s2, s3] = v.elements;
  if (s3 != s2 + 1) return false;
  if (s1 > v.k + 4 || s1 == 1 || s1 == 2 || s1 == 3 || s1 == j || s1 == j + 1) return false;
  return s3 > s1 + 1 && s3 != j && s3 != j + 1;
}

std::vector<VertexId> nc_set(int k, int j) {
  const Level& level = Level::of(k);
  std::vector<VertexId> out;
  for (VertexId id = 0; id < level.size(); ++id)
    if (!level.stable(id) && in_nc(level.vertex(id), j)) out.push_back(id);
  return out;
}

std::vector<VertexId> c_set(int k, int j) {
  const Level& level = Level::of(k);
  const ElementMask banned = cyc_mask(k + 6, {1, 2, j});
  std::vector<VertexId> out;
  for (VertexId id = 0; id < level.size(); ++id) {
    if (level.stable(id) || in_nc(level.vertex(id), j)) continue;
    if (!(level.mask(id) & banned)) out.push_back(id);
  }
  return out;
}

std::vector<VertexId> w_set(const Level& level, VertexId v, int j) {
  const int k = level.k();
  const int n = k + 6;
  const Vertex& vx = level.vertex(v);
  const auto [s1, s2, s3] = vx.elements;
  std::vector<VertexId> out;
  auto add = [&](int a, int b, int c) { out.push_back(level.id(make_vertex(k, a, b, c))); };
  auto excluded = [](int t, std::initializer_list<int> xs) {
    return std::find(xs.begin(), xs.end(), t) != xs.end();
  };

  if (!level.stable(v) && in_nc(vx, j)) {
    for (int t = s1 + 1; t <= n; ++t)
      if (!excluded(t, {j, s2, s3})) add(t, s2, s3);
    for (int t = 1; t <= s1 - 2; ++t)
      if (!excluded(t, {1, 2, j})) add(t, s1, s3);
  } else if (!level.stable(v) && !(vx.mask() & cyc_mask(n, {1, 2, j}))) {
    if (j != 3 && s1 == 3 && s3 == s2 + 1) {
      for (int t = 1; t <= n; ++t)
        if (!excluded(t, {1, 2, 3, j, s2, s2 + 1})) add(t, s2, s2 + 1);
    } else if (s1 == j + 1 && s3 == s2 + 1) {
      for (int t = j + 2; t <= n; ++t)
        if (!excluded(t, {s2, s2 + 1})) add(t, s2, s2 + 1);
      for (int t = 3; t <= j - 1; ++t) add(t, j + 1, s2 + 1);
    } else if (s3 != s2 + 1) {
      for (int t = 1; t <= n; ++t)
        if (!excluded(t, {1, 2, j, s1, s2, s3})) add(t, s2, s3);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Simplex> p_fiber(int k, int i, int j) {
  if (i < 1 || i > k + 6 || !contains(index_set_I(k, i), j)) {
    throw std::invalid_argument("p_fiber: j not in I_i");
  }
  return covering_sets(Level::of(k), cyc_mask(k + 6, {i, i + 1, j}), false, true);
}

std::vector<Simplex> q_fiber(int k, int i, int j) {
  if (i < 1 || i > k + 4 || !contains(index_set_J(k, i), j)) {
    throw std::invalid_argument("q_fiber: j not in J_i");
  }
  return covering_sets(Level::of(k), cyc_mask(k + 6, {i, i + 1, j, j + 1}), false, true);
}

std::vector<Simplex> sigma_fiber(int k, int j, VertexId v) {
  const Level& level = Level::of(k);
  std::vector<Simplex> out;
  for (const Simplex& s : p_fiber(k, 1, j))
    if (least_unstable(level, s) == v) out.push_back(s);
  return out;
}

SimplexMap<long long> psi_j_ranks(int k, int j, VertexId v) {
  const Level& level = Level::of(k);
  const std::vector<Simplex> cells = sigma_fiber(k, j, v);
  SimplexSet rest(cells.begin(), cells.end());
  const std::vector<VertexId> w = w_set(level, v, j);
  const long long p = static_cast<long long>(w.size());
  SimplexMap<long long> rank;
  for (std::size_t t = 0; t < w.size(); ++t) {
    Matching m;
    peel_element_matching(rest, w[t], m);
    m.for_each_pair([&](const Simplex& a, const Simplex& b) {
      rank[a] = p - static_cast<long long>(t);
      rank[b] = p - static_cast<long long>(t);
    });
  }
  for (const Simplex& s : rest) rank[s] = 0;
  return rank;
}

namespace {

FiberMatching build_p1(int k, int j) {
  const Level& level = Level::of(k);
  FiberMatching out;
  const std::vector<Simplex> cells = p_fiber(k, 1, j);
  out.cells.reserve(cells.size());
  std::map<VertexId, SimplexSet> by_v;
  for (const Simplex& s : cells) {
    out.cells.insert(s);
    by_v[least_unstable(level, s)].insert(s);
  }
  for (auto& [v, rest] : by_v) {
    for (VertexId w : w_set(level, v, j)) peel_element_matching(rest, w, out.matching);
    out.critical.insert(rest.begin(), rest.end());
  }
  return out;
}

FiberMatching rotated(const FiberMatching& f, const Level& level, int shift) {
  if (shift == 0) return f;
  FiberMatching out;
  auto rot = [&](const Simplex& s) { return rotate(level, s, shift); };
  out.cells.reserve(f.cells.size());
  for (const Simplex& s : f.cells) out.cells.insert(rot(s));
  for (const Simplex& s : f.critical) out.critical.insert(rot(s));
  out.matching = f.matching.transformed(rot);
  return out;
}

}  // namespace

FiberMatching matching_P(int k, int i, int j) {
  const int n = k + 6;
  if (i < 1 || i > n || !contains(index_set_I(k, i), j)) {
    throw std::invalid_argument("matching_P: j not in I_i");
  }
  if (i == 1) return build_p1(k, j);
  return rotated(build_p1(k, wrap(j - (i - 1), n)), Level::of(k), i - 1);
}

std::pair<int, int> q_source(int k, int i, int j) {
  if (k < 1) throw std::invalid_argument("q_source: k must be positive");
  const int n = k + 6;
  const int d = k + 5 - j;
  const ElementMask shifted = rotate_mask(cyc_mask(n, {i, i + 1, j, j + 1}), d, n);
  const ElementMask top = ElementMask{1} << (n - 1);
  const std::string where = "Q(" + std::to_string(i) + "," + std::to_string(j) + ")";
  if (!(shifted & top)) throw VerificationError("q bijection", where + ": k+6 not in C");
  const ElementMask reduced = shifted & ~top;
  const int ip = i + k + 5 - j;
  if (reduced != element_mask({ip, ip + 1, k + 5})) {
    throw VerificationError("q bijection", where + ": complement " + mask_to_string(reduced) +
                                               " differs from the stated source");
  }
  auto st = a_shape(k - 1, reduced);
  if (!st) throw VerificationError("q bijection", where + ": source is not a P fibre");
  return *st;
}

FiberMatching matching_Q(int k, int i, int j) {
  const std::vector<Simplex> cells = q_fiber(k, i, j);
  const auto [ip, jp] = q_source(k, i, j);
  const FiberMatching base = matching_P(k - 1, ip, jp);
  const Level& level = Level::of(k);
  const Level& lower = Level::of(k - 1);
  const int d = k + 5 - j;
  auto lift = [&](const Simplex& s) { return rotate(level, embed(s, lower, level), -d); };
  FiberMatching out;
  out.cells.insert(cells.begin(), cells.end());
  std::size_t lifted = 0;
  for (const Simplex& s : base.cells) {
    if (!out.cells.contains(lift(s))) {
      throw VerificationError("q bijection", "{" + to_string(lower, s) + "} lifts outside Q(" +
                                                 std::to_string(i) + "," + std::to_string(j) + ")");
    }
    ++lifted;
  }
  if (lifted != out.cells.size()) {
    throw VerificationError("q bijection", "Q(" + std::to_string(i) + "," + std::to_string(j) +
                                               ") is larger than its source");
  }
  for (const Simplex& s : base.critical) out.critical.insert(lift(s));
  out.matching = base.matching.transformed(lift);
  return out;
}

Theorem3Counts theorem3_counts(int k) {
  Theorem3Counts c;
  const long long kk = k;
  c.extra_k_cells = (kk + 1) * (kk + 2) * (kk + 3) * (kk + 6) / 2;
  c.extra_km1_cells = kk * (kk + 1) * (kk + 3) * (kk + 6) / 4;
  c.predicted_t = (kk + 1) * (kk + 3) * (kk + 4) * (kk + 6) / 4 + 1;
  for (int i = 1; i <= k + 6; ++i) c.p_pairs += index_set_I(k, i).size();
  for (int i = 1; i <= k + 4; ++i) c.q_pairs += index_set_J(k, i).size();
  return c;
}

bool Census::passed() const {
  if (!spot_checks_passed) return false;
  if (static_cast<long long>(p_critical) != expected.extra_k_cells) return false;
  if (static_cast<long long>(q_critical) != expected.extra_km1_cells) return false;
  if (rows.size() != expected.p_pairs + expected.q_pairs) return false;
  return std::all_of(rows.begin(), rows.end(), [](const CensusRow& r) { return r.passed; });
}

namespace {

CensusRow evaluate(char family, int k, int i, int j, const FiberMatching& f,
                   const CensusOptions& opt, std::size_t& spot, bool& spot_ok) {
  CensusRow row;
  row.family = family;
  row.i = i;
  row.j = j;
  row.cells = f.cells.size();
  row.pairs = f.matching.size();
  row.critical = f.critical.size();
  int dim = -2;
  for (const Simplex& s : f.critical) dim = (dim == -2 || dim == s.dim()) ? s.dim() : -1;
  row.critical_dim = dim == -2 ? -1 : dim;
  row.acyclic = !opt.check_acyclicity || is_acyclic(f.matching, f.cells);

  const long long kk = k;
  const std::size_t want = family == 'P' ? (kk + 1) * (kk + 2) / 2 : kk * (kk + 1) / 2;
  const int want_dim = family == 'P' ? k : k - 1;
  row.passed = row.acyclic && row.critical == want && (want == 0 || row.critical_dim == want_dim) &&
               row.critical == critical_cells(f.cells, f.matching).size();

  if (opt.spot_check_fraction > 0) {
    const Level& level = Level::of(k);
    std::mt19937_64 rng(opt.seed ^ (static_cast<std::uint64_t>(family) << 48) ^
                        (static_cast<std::uint64_t>(i) << 24) ^ static_cast<std::uint64_t>(j));
    std::bernoulli_distribution pick(std::min(1.0, opt.spot_check_fraction));
    const PQTag::Kind kind = family == 'P' ? PQTag::Kind::kP : PQTag::Kind::kQ;
    for (const Simplex& s : sorted(f.cells)) {
      if (!pick(rng)) continue;
      ++spot;
      try {
        const PQTag tag = pq_classify(level, s);
        if (tag.kind != kind || tag.i != i || tag.j != j) spot_ok = false;
      } catch (const VerificationError&) {
        spot_ok = false;
      }
    }
  }
  return row;
}

}  // namespace

Census critical_census(int k, const CensusOptions& options) {
  Census census;
  census.k = k;
  census.expected = theorem3_counts(k);
  const int n = k + 6;

  struct Job {
    char family;
    int a;  // P: j' with i = 1; Q: i
    int b;  // Q: j
  };
  std::vector<Job> jobs;
  for (int j : index_set_I(k, 1)) jobs.push_back({'P', j, 0});
  for (int i = 1; i <= k + 4; ++i)
      for (int j : index_set_J(k, i)) jobs.push_back({'Q', i, j});

  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    while (true) {
      Job job;
      {
        std::lock_guard lock(mu);
        if (next == jobs.size()) return;
        job = jobs[next++];
      }
      std::vector<CensusRow> rows;
      std::size_t spot = 0;
      bool spot_ok = true;
      if (job.family == 'P') {
        const FiberMatching base = build_p1(k, job.a);
        for (int i = 1; i <= n; ++i) {
          const int j = wrap(job.a + i - 1, n);
          const FiberMatching f = rotated(base, Level::of(k), i - 1);
          rows.push_back(evaluate('P', k, i, j, f, options, spot, spot_ok));
        }
      } else {
        FiberMatching f;
        if (k >= 1) {
          f = matching_Q(k, job.a, job.b);
        } else {
          // No level below 0; the fibre itself must be empty.
          for (const Simplex& s : q_fiber(k, job.a, job.b)) f.cells.insert(s);
          f.critical = f.cells;
        }
        rows.push_back(evaluate('Q', k, job.a, job.b, f, options, spot, spot_ok));
      }
      std::lock_guard lock(mu);
      census.rows.insert(census.rows.end(), rows.begin(), rows.end());
      census.spot_checked += spot;
      census.spot_checks_passed = census.spot_checks_passed && spot_ok;
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(census.rows.begin(), census.rows.end(), [](const CensusRow& a, const CensusRow& b) {
    return std::tie(a.family, a.i, a.j) < std::tie(b.family, b.i, b.j);
  });
  for (const CensusRow& r : census.rows) (r.family == 'P' ? census.p_critical : census.q_critical) += r.critical;
  return census;
}

}  // namespace nkg

namespace nkg {

int filtration_index(const Level& level, const Simplex& sigma) {
  const ElementMask c = complement_mask(level, sigma);
  if (Simplex(level.triples_inside(c)).empty()) {
    throw std::domain_error("filtration_index: {" + to_string(level, sigma) + "} is not a face");
  }
  if (!has_unstable(level, sigma) || !Simplex(level.stable_triples_inside(c)).empty()) return 1;
  return std::popcount(c) >= 4 ? 2 : 3;
}

long long p_layer_rank(const Level& level, const Simplex& sigma) {
  if (filtration_index(level, sigma) < 3) return 0;
  return level.k() + 7 - pq_classify(level, sigma).i;
}

long long q_layer_rank(const Level& level, const Simplex& sigma) {
  const int f = filtration_index(level, sigma);
  if (f == 3) throw std::domain_error("q_layer_rank: face outside X_2");
  if (f == 1) return 0;
  return level.k() + 5 - pq_classify(level, sigma).i;
}

long long p_column_rank(int k, int i, int j) {
  const int n = k + 6;
  const int pos = j >= i + 2 ? j - (i + 2) : (n - i - 1) + (j - 1);
  return -pos;
}

long long q_column_rank(int k, int i, int j) {
  const std::vector<int> J = index_set_J(k, i);
  const auto it = std::find(J.begin(), J.end(), j);
  if (it == J.end()) throw std::invalid_argument("q_column_rank: j not in J_i");
  return -static_cast<long long>(it - J.begin());
}

long long least_unstable_rank(const Level& level, const Simplex& sigma) {
  const VertexId v = least_unstable(level, sigma);
  long long s = 0, m = 0;
  for (VertexId id = 0; id < level.size(); ++id) {
    if (level.stable(id)) continue;
    ++m;
    if (id <= v) ++s;
  }
  return m - s;
}

namespace {

PosetCheck run_check(const std::string& lemma, const std::string& fiber, const Level& level,
                     const SimplexSet& cells, const RankMap& rank, ComparisonScope scope) {
  PosetCheck out{lemma, fiber, cells.size(), true, {}};
  try {
    const PosetMapResult r = verify_poset_map(rank, cells, scope);
    if (!r.order_preserving) {
      out.passed = false;
      if (r.violation)
        out.witness = "{" + to_string(level, r.violation->first) + "} < {" +
                      to_string(level, r.violation->second) + "}";
    }
  } catch (const std::exception& e) {
    out.passed = false;
    out.witness = e.what();
  }
  return out;
}

std::string pair_name(char family, int i, int j) {
  return std::string(1, family) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

std::vector<PosetCheck> verify_wedge_poset_maps(int k) {
  const Level& level = Level::of(k);
  const int n = k + 6;
  std::vector<PosetCheck> out;

  // Layer labels on whole face posets; both are convex, so covering pairs suffice.
  const SimplicialComplex x3 = filtration(k, 3);
  const SimplexSet all3 = x3.face_set(x3.dimension());
  out.push_back(run_check("p-layer poset map", "X_3", level, all3,
                          [&](const Simplex& s) { return p_layer_rank(level, s); },
                          ComparisonScope::kCoveringPairs));
  SimplexSet all2;
  for (const Simplex& s : all3)
    if (filtration_index(level, s) <= 2) all2.insert(s);
  out.push_back(run_check("q-layer poset map", "X_2", level, all2,
                          [&](const Simplex& s) { return q_layer_rank(level, s); },
                          ComparisonScope::kCoveringPairs));

  for (int i = 1; i <= n; ++i) {
    SimplexSet column;
    for (int j : index_set_I(k, i)) {
      const std::vector<Simplex> f = p_fiber(k, i, j);
      const SimplexSet cells(f.begin(), f.end());
      column.insert(f.begin(), f.end());
      out.push_back(run_check("p-vertex poset map", pair_name('P', i, j), level, cells,
                              [&](const Simplex& s) { return least_unstable_rank(level, s); },
                              ComparisonScope::kAllPairs));
    }
    out.push_back(run_check(
        "p-column poset map", "P(" + std::to_string(i) + ",*)", level, column,
        [&](const Simplex& s) { return p_column_rank(k, i, pq_classify(level, s).j); },
        ComparisonScope::kAllPairs));
  }
  for (int i = 1; i <= k + 4; ++i) {
    SimplexSet column;
    for (int j : index_set_J(k, i)) {
      const std::vector<Simplex> f = q_fiber(k, i, j);
      const SimplexSet cells(f.begin(), f.end());
      column.insert(f.begin(), f.end());
      out.push_back(run_check("q-vertex poset map", pair_name('Q', i, j), level, cells,
                              [&](const Simplex& s) { return least_unstable_rank(level, s); },
                              ComparisonScope::kAllPairs));
    }
    out.push_back(run_check(
        "q-column poset map", "Q(" + std::to_string(i) + ",*)", level, column,
        [&](const Simplex& s) { return q_column_rank(k, i, pq_classify(level, s).j); },
        ComparisonScope::kAllPairs));
  }

  for (int j : index_set_I(k, 1)) {
    std::map<VertexId, SimplexSet> by_v;
    for (const Simplex& s : p_fiber(k, 1, j)) by_v[least_unstable(level, s)].insert(s);
    for (const auto& [v, cells] : by_v) {
      const SimplexMap<long long> rank = psi_j_ranks(k, j, v);
      out.push_back(run_check("w-sequence poset map",
                              "Sigma(" + level.vertex(v).to_string() + "," + std::to_string(j) + ")",
                              level, cells, [&](const Simplex& s) { return rank.at(s); },
                              ComparisonScope::kAllPairs));
    }
  }
  return out;
}

}  // namespace nkg
