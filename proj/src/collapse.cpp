#include "nkg/collapse.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>

#include "nkg/verification.hpp"

namespace nkg {

namespace {

ElementMask bit(int e) { return ElementMask{1} << (e - 1); }

ElementMask cyc_mask(int n, std::initializer_list<int> elements) {
  ElementMask m = 0;
  for (int e : elements) m |= bit(wrap(e, n));
  return m;
}

std::vector<Simplex> to_sorted(std::vector<Simplex> v) {
  std::sort(v.begin(), v.end(), canonical_less);
  return v;
}

SimplexSet to_set(const std::vector<Simplex>& v) { return SimplexSet(v.begin(), v.end()); }

std::string fiber_name(char family, int a, int b) {
  return std::string(1, family) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

std::vector<int> index_set_I(int k, int s) {
  const int n = k + 6;
  std::vector<int> out;
  for (int t = 1; t <= n; ++t)
    if (t != wrap(s - 1, n) && t != s && t != wrap(s + 1, n)) out.push_back(t);
  return out;
}

std::vector<int> index_set_J(int k, int s) {
  std::vector<int> out;
  if (s == 1) {
    for (int u = 3; u <= k + 5; ++u) out.push_back(u);
  } else if (s > 1 && s < k + 5) {
    for (int u = s + 2; u <= k + 6; ++u) out.push_back(u);
  }
  return out;
}

std::optional<std::pair<int, int>> a_shape(int k, ElementMask complement) {
  const int n = k + 6;
  if (std::popcount(complement) != 3) return std::nullopt;
  for (int s = 1; s <= n; ++s) {
    const ElementMask pair = cyc_mask(n, {s, s + 1});
    if ((complement & pair) != pair) continue;
    const int t = std::countr_zero(complement & ~pair) + 1;
    if (t != wrap(s - 1, n)) return std::make_pair(s, t);
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> b_shape(int k, ElementMask complement) {
  const int n = k + 6;
  if (std::popcount(complement) != 4) return std::nullopt;
  for (int s = 1; s <= k + 4; ++s)
    for (int u : index_set_J(k, s))
      if (cyc_mask(n, {s, s + 1, u, u + 1}) == complement) return std::make_pair(s, u);
  return std::nullopt;
}

std::vector<Simplex> covering_sets(const Level& level, ElementMask complement, bool stable_only,
                                   bool need_unstable) {
  const ElementMask target = level.full_mask() & ~complement;
  const Simplex pool(stable_only ? level.stable_triples_inside(target)
                                 : level.triples_inside(target));
  const std::vector<VertexId> cand = pool.members();
  const int m = static_cast<int>(cand.size());
  if (m > 24) throw std::domain_error("covering_sets: too many candidate triples");
  constexpr std::uint32_t kUnstableFlag = 1U << 31;
  std::vector<std::uint32_t> item(m);
  for (int i = 0; i < m; ++i)
    item[i] = level.mask(cand[i]) | (level.stable(cand[i]) ? 0U : kUnstableFlag);

  std::vector<Simplex> out;
  const std::uint32_t total = std::uint32_t{1} << m;
  std::vector<std::uint32_t> acc(total, 0);
  for (std::uint32_t sub = 1; sub < total; ++sub) {
    acc[sub] = acc[sub & (sub - 1)] | item[std::countr_zero(sub)];
    if ((acc[sub] & ~kUnstableFlag) != target) continue;
    if (need_unstable && !(acc[sub] & kUnstableFlag)) continue;
    Simplex s;
    for (std::uint32_t b = sub; b; b &= b - 1) s.insert(cand[std::countr_zero(b)]);
    out.push_back(s);
  }
  return to_sorted(std::move(out));
}

std::vector<Simplex> family_A(int k, int s, int t) {
  const Level& level = Level::of(k);
  const int n = k + 6;
  return covering_sets(level, cyc_mask(n, {s, s + 1, t}), true, false);
}

std::vector<Simplex> family_B(int k, int s, int u) {
  const Level& level = Level::of(k);
  const int n = k + 6;
  return covering_sets(level, cyc_mask(n, {s, s + 1, u, u + 1}), true, false);
}

std::string to_string(FaceFamily f) {
  switch (f) {
    case FaceFamily::kA: return "a1";
    case FaceFamily::kB: return "a2";
    case FaceFamily::kC: return "a3";
    case FaceFamily::kStable: return "a4";
  }
  return "?";
}

FaceClass classify(const Level& level, const Simplex& sigma) {
  FaceClass out;
  if (has_unstable(level, sigma)) {
    out.family = FaceFamily::kC;
    out.v = least_unstable(level, sigma);
    return out;
  }
  const ElementMask c = complement_mask(level, sigma);
  if (!Simplex(level.stable_triples_inside(c)).empty()) {
    out.family = FaceFamily::kStable;
    return out;
  }
  if (auto st = a_shape(level.k(), c)) {
    out.family = FaceFamily::kA;
    std::tie(out.s, out.t) = *st;
    return out;
  }
  if (auto su = b_shape(level.k(), c)) {
    out.family = FaceFamily::kB;
    std::tie(out.s, out.t) = *su;
    return out;
  }
  throw VerificationError("face partition", "{" + to_string(level, sigma) +
                                                "} has complement " + mask_to_string(c));
}

long long phi_rank(const Level& level, const Simplex& sigma) {
  return static_cast<long long>(classify(level, sigma).family);
}

// ---------------------------------------------------------------- A family

VertexId a_pivot(int r, int ell) {
  if (r < 1 || ell < 3 || ell > r + 5) throw std::invalid_argument("a_pivot: bad (r, l)");
  const Level& level = Level::of(r);
  const int top = r + 6;
  switch (ell) {
    case 3: return level.id_of(4, 6, top);
    case 4: return level.id_of(3, 5, top);
    case 5: return level.id_of(3, 6, top);
    default: return level.id_of(3, ell - 1, top);
  }
}

namespace {

constexpr int kDeltaShift[8] = {0, 1, 1, 0, 2, 1, 1, 2};

// Y = C_{sigma - pivot} \ C for each Delta index, from the pivot elements a < b < c.
ElementMask delta_y(int r, int ell, int i) {
  const Vertex& p = Level::of(r).vertex(a_pivot(r, ell));
  const ElementMask a = bit(p.elements[0]), b = bit(p.elements[1]), c = bit(p.elements[2]);
  const ElementMask table[8] = {0, a, b, c, a | b, a | c, b | c, a | b | c};
  return table[i];
}

int delta_index(int r, int ell, ElementMask y) {
  for (int i = 1; i <= 7; ++i)
    if (delta_y(r, ell, i) == y) return i;
  return -1;
}

// Target labels as printed, read as element sets at the lower level.
ElementMask printed_target(int ell, int i) {
  static const int fixed[3][7][3] = {
      {{1, 2, 3}, {1, 2, 5}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3}, {1, 2, 5}, {1, 2, 4}},
      {{1, 2, 3}, {3, 4, 1}, {1, 2, 4}, {1, 2, 3}, {1, 2, 3}, {3, 4, 1}, {1, 2, 3}},
      {{1, 2, 4}, {4, 5, 1}, {1, 2, 5}, {3, 4, 1}, {1, 2, 4}, {4, 5, 1}, {3, 4, 1}},
  };
  if (ell <= 5) {
    const int* e = fixed[ell - 3][i - 1];
    return element_mask({e[0], e[1], e[2]});
  }
  const int rows[7][3] = {{1, 2, ell - 1},       {ell - 2, ell - 1, 1}, {1, 2, ell},
                          {ell - 3, ell - 2, 1}, {1, 2, ell - 1},       {ell - 2, ell - 1, 1},
                          {ell - 3, ell - 2, 1}};
  const int* e = rows[i - 1];
  return element_mask({e[0], e[1], e[2]});
}

}  // namespace

int delta_decompose(int r, int ell, const Simplex& sigma) {
  const Level& level = Level::of(r);
  const int n = r + 6;
  const ElementMask c = cyc_mask(n, {1, 2, ell});
  if (complement_mask(level, sigma) != c || has_unstable(level, sigma)) {
    throw std::invalid_argument("delta_decompose: face outside A_r^{1,l}");
  }
  const VertexId p = a_pivot(r, ell);
  const ElementMask pm = level.mask(p);
  auto fail = [&](const std::string& why) {
    return VerificationError("delta decomposition",
                             "{" + to_string(level, sigma) + "} at r=" + std::to_string(r) +
                                 ", l=" + std::to_string(ell) + ": " + why);
  };
  if (!sigma.contains(p)) {
    if (level.stable(p) && (pm & c) == 0) return 0;
    throw fail("pivot absent but sigma + pivot leaves the family");
  }
  const Simplex rest = sigma.without(p);
  if (rest.empty()) throw fail("sigma is the pivot alone");
  const ElementMask rc = complement_mask(level, rest);
  if (rc == c) return 0;
  const int i = delta_index(r, ell, rc & ~c);
  if (i < 0) throw fail("C_{sigma - pivot} = " + mask_to_string(rc));
  return i;
}

DeltaTarget delta_target(int r, int ell, int i) {
  if (i < 1 || i > 7) throw std::invalid_argument("delta_target: index out of range");
  const int n = r + 6;
  const ElementMask y = delta_y(r, ell, i);
  DeltaTarget out;
  out.shift = kDeltaShift[i];
  out.level = r - std::popcount(y);
  const std::string where = "r=" + std::to_string(r) + ", l=" + std::to_string(ell) +
                            ", i=" + std::to_string(i);
  if (out.level < 0) throw VerificationError("delta bijection", where + ": no level below 0");
  const ElementMask shifted = rotate_mask(cyc_mask(n, {1, 2, ell}) | y, -out.shift, n);
  ElementMask tail = 0;
  for (int e = out.level + 7; e <= n; ++e) tail |= bit(e);
  if ((shifted & tail) != tail) {
    throw VerificationError("delta bijection", where + ": shifted complement " +
                                                   mask_to_string(shifted) +
                                                   " misses the tail");
  }
  const ElementMask reduced = shifted & ~tail;
  if (reduced != printed_target(ell, i)) {
    throw VerificationError("delta bijection", where + ": complement " +
                                                   mask_to_string(reduced) +
                                                   " differs from the stated target");
  }
  auto st = a_shape(out.level, reduced);
  if (!st) throw VerificationError("delta bijection", where + ": target is not an A family");
  std::tie(out.s, out.t) = *st;
  return out;
}

std::optional<Simplex> delta_map(int r, int ell, int i, const Simplex& sigma) {
  const DeltaTarget tgt = delta_target(r, ell, i);
  const Level& from = Level::of(r);
  const Simplex moved = rotate(from, sigma.without(a_pivot(r, ell)), -tgt.shift);
  try {
    return embed(moved, from, Level::of(tgt.level));
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

namespace {

struct Decomposition {
  std::vector<Simplex> family;
  Matching pivot_matching;
  std::vector<Simplex> delta[8];
};

Decomposition decompose(int r, int ell) {
  Decomposition d;
  d.family = family_A(r, 1, ell);
  if (d.family.empty()) return d;
  SimplexSet rest = to_set(d.family);
  peel_element_matching(rest, a_pivot(r, ell), d.pivot_matching);
  for (const Simplex& s : sorted(rest)) {
    const int i = delta_decompose(r, ell, s);
    if (i == 0) {
      throw VerificationError("delta decomposition", "{" + to_string(Level::of(r), s) +
                                                         "} unmatched by the pivot");
    }
    d.delta[i].push_back(s);
  }
  return d;
}

void check_bijection(int r, int ell, int i, const std::vector<Simplex>& piece,
                     const DeltaTarget& tgt, const std::vector<Simplex>& target) {
  const Level& level = Level::of(r);
  const SimplexSet tset = to_set(target);
  SimplexSet images;
  for (const Simplex& s : piece) {
    auto img = delta_map(r, ell, i, s);
    if (!img || !tset.contains(*img) || !images.insert(*img).second) {
      throw VerificationError("delta bijection",
                              "f_" + std::to_string(i) + " at r=" + std::to_string(r) +
                                  ", l=" + std::to_string(ell) + " fails at {" +
                                  to_string(level, s) + "}");
    }
  }
  if (images.size() != target.size()) {
    throw VerificationError("delta bijection",
                            "f_" + std::to_string(i) + " at r=" + std::to_string(r) + ", l=" +
                                std::to_string(ell) + " is not onto A_" +
                                std::to_string(tgt.level) + "^{" + std::to_string(tgt.s) + "," +
                                std::to_string(tgt.t) + "}");
  }
}

std::recursive_mutex memo_mu;
std::map<std::pair<int, int>, Matching>& memo() {
  static std::map<std::pair<int, int>, Matching> m;
  return m;
}

const Matching& matching_A1(int r, int ell) {
  std::lock_guard lock(memo_mu);
  auto it = memo().find({r, ell});
  if (it != memo().end()) return it->second;

  Matching out;
  if (r >= 1) {
    Decomposition d = decompose(r, ell);
    out = d.pivot_matching;
    const Level& level = Level::of(r);
    const VertexId p = a_pivot(r, ell);
    for (int i = 1; i <= 7; ++i) {
      if (d.delta[i].empty()) continue;
      const DeltaTarget tgt = delta_target(r, ell, i);
      const std::vector<Simplex> target = family_A(tgt.level, tgt.s, tgt.t);
      check_bijection(r, ell, i, d.delta[i], tgt, target);
      const Level& lower = Level::of(tgt.level);
      const Matching sub = matching_A(tgt.level, tgt.s, tgt.t);
      const SimplexSet piece = to_set(d.delta[i]);
      auto lift = [&](const Simplex& s) {
        return rotate(level, embed(s, lower, level), tgt.shift).with(p);
      };
      sub.for_each_pair([&](const Simplex& a, const Simplex& b) {
        const Simplex la = lift(a), lb = lift(b);
        if (!piece.contains(la) || !piece.contains(lb)) {
          throw VerificationError("delta bijection", "lifted pair leaves Delta_" +
                                                         std::to_string(i));
        }
        out.add(la, lb);
      });
    }
  } else if (!family_A(r, 1, ell).empty()) {
    throw VerificationError("a-matching", "nonempty A family at k=0");
  }
  return memo().emplace(std::make_pair(r, ell), std::move(out)).first->second;
}

}  // namespace

void verify_delta_bijections(int r, int ell) {
  Decomposition d = decompose(r, ell);
  for (int i = 1; i <= 7; ++i) {
    if (d.delta[i].empty()) continue;
    const DeltaTarget tgt = delta_target(r, ell, i);
    check_bijection(r, ell, i, d.delta[i], tgt, family_A(tgt.level, tgt.s, tgt.t));
  }
}

long long theta_rank(int r, int ell, const Simplex& sigma) {
  const int i = delta_decompose(r, ell, sigma);
  return i == 0 ? 7 : 7 - i;
}

Matching matching_A(int k, int s, int t) {
  const int n = k + 6;
  const std::vector<int> I = index_set_I(k, s);
  if (s < 1 || s > n || std::find(I.begin(), I.end(), t) == I.end()) {
    throw std::invalid_argument("matching_A: t not in I_s");
  }
  const int ell = wrap(t - s + 1, n);
  const Matching& base = matching_A1(k, ell);
  if (s == 1) return base;
  const Level& level = Level::of(k);
  return base.transformed([&](const Simplex& x) { return rotate(level, x, s - 1); });
}

// ---------------------------------------------------------------- B family

std::pair<int, int> shift_target(int k, int s, int u) {
  if (k < 1) throw std::invalid_argument("shift_target: k must be positive");
  const int n = k + 6;
  const int d = k + 5 - u;
  const ElementMask shifted = rotate_mask(cyc_mask(n, {s, s + 1, u, u + 1}), d, n);
  const std::string where = "(s,u)=(" + std::to_string(s) + "," + std::to_string(u) + ")";
  if (!(shifted & bit(n))) throw VerificationError("shift bijection", where + ": k+6 not in C");
  const ElementMask reduced = shifted & ~bit(n);
  const int sp = s + k + 5 - u;
  if (reduced != element_mask({sp, sp + 1, k + 5})) {
    throw VerificationError("shift bijection",
                            where + ": complement " + mask_to_string(reduced) +
                                " differs from the stated target");
  }
  auto st = a_shape(k - 1, reduced);
  if (!st) throw VerificationError("shift bijection", where + ": target is not an A family");
  return *st;
}

std::optional<Simplex> shift_map(int k, int /*s*/, int u, const Simplex& sigma) {
  const Level& from = Level::of(k);
  try {
    return embed(rotate(from, sigma, k + 5 - u), from, Level::of(k - 1));
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

void verify_shift_bijection(int k, int s, int u) {
  const auto [sp, tp] = shift_target(k, s, u);
  const std::vector<Simplex> fam = family_B(k, s, u);
  const SimplexSet target = to_set(family_A(k - 1, sp, tp));
  SimplexSet images;
  for (const Simplex& x : fam) {
    auto img = shift_map(k, s, u, x);
    if (!img || !target.contains(*img) || !images.insert(*img).second) {
      throw VerificationError("shift bijection", "f_{" + std::to_string(s) + "," +
                                                     std::to_string(u) + "} fails at {" +
                                                     to_string(Level::of(k), x) + "}");
    }
  }
  if (images.size() != target.size()) {
    throw VerificationError("shift bijection", "f_{" + std::to_string(s) + "," +
                                                   std::to_string(u) + "} is not onto");
  }
}

Matching matching_B(int k, int s, int u) {
  const std::vector<int> J = index_set_J(k, s);
  if (s < 1 || s > k + 4 || std::find(J.begin(), J.end(), u) == J.end()) {
    throw std::invalid_argument("matching_B: u not in J_s");
  }
  const std::vector<Simplex> fam = family_B(k, s, u);
  if (fam.empty()) return {};
  verify_shift_bijection(k, s, u);
  const auto [sp, tp] = shift_target(k, s, u);
  const Level& level = Level::of(k);
  const Level& lower = Level::of(k - 1);
  const int d = k + 5 - u;
  const SimplexSet famset = to_set(fam);
  Matching out;
  matching_A(k - 1, sp, tp).for_each_pair([&](const Simplex& a, const Simplex& b) {
    const Simplex la = rotate(level, embed(a, lower, level), -d);
    const Simplex lb = rotate(level, embed(b, lower, level), -d);
    if (!famset.contains(la) || !famset.contains(lb)) {
      throw VerificationError("shift bijection", "pulled-back pair leaves B");
    }
    out.add(la, lb);
  });
  return out;
}

// ---------------------------------------------------------------- C family

std::vector<int> cover(const Vertex& v) {
  std::vector<int> out;
  for (int t = v.elements[0]; t <= v.elements[2]; ++t) out.push_back(t);
  return out;
}

ElementMask co(const Level& level, const Simplex& sigma) {
  ElementMask m = 0;
  sigma.for_each([&](VertexId id) {
    const Vertex& v = level.vertex(id);
    for (int t = v.elements[0]; t <= v.elements[2]; ++t) m |= bit(t);
  });
  return m;
}

int cover_length(const Level& level, const Simplex& sigma) {
  const ElementMask m = co(level, sigma);
  if (!m) return 0;
  return (31 - std::countl_zero(m)) - std::countr_zero(m) + 1;
}

std::vector<int> comp(const Vertex& v, int ell) {
  std::vector<int> out;
  for (int t = v.elements[0]; t <= v.elements[2]; ++t) {
    if (std::abs(t - ell) > 1 && t != v.elements[0] && t != v.elements[1] && t != v.elements[2])
      out.push_back(t);
  }
  return out;
}

std::optional<int> comp_min(const Vertex& v, int ell) {
  const std::vector<int> c = comp(v, ell);
  if (c.empty()) return std::nullopt;
  return c.front();
}

SimplexSet c_fiber(const Level& level, VertexId v) {
  if (level.stable(v)) throw std::invalid_argument("c_fiber: stable vertex");
  SimplexSet out;
  Simplex banned;
  for (VertexId w = 0; w < v; ++w)
    if (!level.stable(w)) banned.insert(w);
  banned.insert(v);
  for (VertexId u = 0; u < level.size(); ++u) {
    if (!level.stable(u) || (level.mask(u) & level.mask(v))) continue;
    const Simplex pool =
        Simplex(level.triples_inside(level.full_mask() & ~level.mask(u))).minus(banned);
    const std::vector<VertexId> cand = pool.members();
    const std::uint64_t total = std::uint64_t{1} << cand.size();
    for (std::uint64_t sub = 0; sub < total; ++sub) {
      Simplex s{v};
      for (std::uint64_t b = sub; b; b &= b - 1) s.insert(cand[std::countr_zero(b)]);
      out.insert(s);
    }
  }
  return out;
}

namespace {

Simplex s_neighbourhood(const Level& level, const Simplex& sigma) {
  const ElementMask c = complement_mask(level, sigma);
  return Simplex(has_unstable(level, sigma) ? level.stable_triples_inside(c)
                                            : level.triples_inside(c));
}

}  // namespace

int c_stratum(const Level& level, VertexId v, const Simplex& sigma) {
  const UnstableRep rep = unstable_rep(level.vertex(v));
  return cover_length(level, s_neighbourhood(level, rotate(level, sigma, -rep.shift)));
}

long long psi_rank(const Level& level, VertexId v, const Simplex& sigma) {
  return -c_stratum(level, v, sigma);
}

std::vector<VertexId> b_set(const Level& level, int ell, int n, const SimplexSet& fiber) {
  const VertexId v = level.id_of(1, 2, ell);
  const Simplex nv = s_neighbourhood(level, Simplex{v});
  Simplex acc;
  for (const Simplex& s : fiber) {
    if (c_stratum(level, v, s) != n) continue;
    acc = acc | s_neighbourhood(level, s);
  }
  if (!acc.subset_of(nv)) throw VerificationError("c-rule", "B_n^l escapes N(12l)");
  return acc.members();
}

VertexId c_toggle(const Level& level, VertexId v, const Simplex& sigma) {
  const UnstableRep rep = unstable_rep(level.vertex(v));
  const Simplex tau = rotate(level, sigma, -rep.shift);
  const Simplex nbrs = s_neighbourhood(level, tau);
  if (nbrs.empty()) {
    throw VerificationError("c-rule", "{" + to_string(level, sigma) + "} has no neighbour");
  }
  const Vertex& u = level.vertex(nbrs.front());
  const auto r = comp_min(u, rep.ell);
  if (!r) throw VerificationError("c-rule", "Comp(" + u.to_string() + ") is empty");
  const VertexId w = level.id(make_vertex(level.k(), 1, rep.ell, *r));
  return level.rotate(w, rep.shift);
}

Matching matching_C(const Level& level, VertexId v, const SimplexSet& fiber) {
  Matching out;
  for (const Simplex& s : sorted(fiber)) {
    const VertexId w = c_toggle(level, v, s);
    if (s.contains(w)) continue;
    const Simplex up = s.with(w);
    auto fail = [&](const std::string& why) {
      return VerificationError("c-rule", "{" + to_string(level, s) + "}: " + why);
    };
    if (!fiber.contains(up)) throw fail("partner leaves the fibre");
    if (c_toggle(level, v, up) != w) throw fail("rule is not an involution");
    if (c_stratum(level, v, up) != c_stratum(level, v, s)) throw fail("stratum changes");
    out.add(s, up);
  }
  return out;
}

// ---------------------------------------------------------------- assembly

bool Theorem2Result::passed() const {
  if (!acyclic || !critical_is_stable_complex) return false;
  return std::all_of(records.begin(), records.end(), [](const LemmaRecord& r) { return r.passed; });
}

namespace {

LemmaRecord fiber_record(const std::string& lemma, int k, const std::string& fiber,
                         const SimplexSet& cells, const Matching& m) {
  LemmaRecord rec;
  rec.lemma = lemma;
  rec.k = k;
  rec.fiber = fiber;
  rec.cells = cells.size();
  rec.pairs = m.size();
  const AcyclicityResult ac = check_acyclic(m, cells);
  rec.acyclic = ac.acyclic;
  rec.perfect = is_perfect(m, cells);
  rec.critical_count = critical_cells(cells, m).size();
  rec.passed = rec.acyclic && rec.perfect;
  return rec;
}

LemmaRecord poset_record(const std::string& lemma, int k, const std::string& fiber,
                         const Level& level, const SimplexSet& cells, const RankMap& rank) {
  LemmaRecord rec;
  rec.lemma = lemma;
  rec.k = k;
  rec.fiber = fiber;
  rec.cells = cells.size();
  const PosetMapResult pm = verify_poset_map(rank, cells);
  rec.passed = pm.order_preserving;
  if (pm.violation) {
    rec.witness = "{" + to_string(level, pm.violation->first) + "} < {" +
                  to_string(level, pm.violation->second) + "}";
  }
  return rec;
}

}  // namespace

Theorem2Result theorem2_matching(int k, bool check_global_acyclicity) {
  Theorem2Result res;
  res.k = k;
  const Level& level = Level::of(k);
  const SimplicialComplex nx = neighborhood_complex(KneserGraph(GraphKind::kS, k));
  const SimplicialComplex ng = neighborhood_complex(KneserGraph(GraphKind::kStable, k));
  const SimplexSet faces = nx.face_set(nx.dimension());
  const SimplexSet stable_faces = ng.face_set(ng.dimension());
  res.faces = faces.size();

  std::map<std::pair<int, int>, SimplexSet> a_cells, b_cells;
  std::map<VertexId, SimplexSet> c_cells;
  LemmaRecord part{"face partition", k, "all", faces.size()};
  for (const Simplex& s : faces) {
    FaceClass fc;
    try {
      fc = classify(level, s);
    } catch (const VerificationError& e) {
      part.passed = false;
      part.witness = e.witness();
      break;
    }
    switch (fc.family) {
      case FaceFamily::kA: a_cells[{fc.s, fc.t}].insert(s); break;
      case FaceFamily::kB: b_cells[{fc.s, fc.t}].insert(s); break;
      case FaceFamily::kC: c_cells[fc.v].insert(s); break;
      case FaceFamily::kStable:
        if (!stable_faces.contains(s)) {
          part.passed = false;
          part.witness = "{" + to_string(level, s) + "} labelled a4 outside N(SG)";
        }
        break;
    }
  }
  res.records.push_back(part);
  if (!part.passed) return res;

  res.records.push_back(poset_record("phi poset map", k, "all", level, faces,
                                     [&](const Simplex& s) { return phi_rank(level, s); }));

  // Fibre labels for the cluster composition: distinct per family member.
  auto label = [&](const Simplex& s) -> long long {
    const FaceClass fc = classify(level, s);
    switch (fc.family) {
      case FaceFamily::kA: return 1'000'000LL + fc.s * 100 + fc.t;
      case FaceFamily::kB: return 2'000'000LL + fc.s * 100 + fc.t;
      case FaceFamily::kC: return 3'000'000LL + fc.v;
      default: return 0;
    }
  };
  std::map<long long, Matching> fibres;

  for (int s = 1; s <= k + 6; ++s) {
    for (int t : index_set_I(k, s)) {
      const SimplexSet fam = to_set(family_A(k, s, t));
      const SimplexSet& seen = a_cells[{s, t}];
      if (fam.empty() && seen.empty()) continue;
      LemmaRecord rec;
      try {
        Matching m = matching_A(k, s, t);
        rec = fiber_record("a-matching", k, fiber_name('A', s, t), fam, m);
        if (fam != seen) {
          rec.passed = false;
          rec.witness = "family differs from the classified faces";
        }
        fibres.emplace(1'000'000LL + s * 100 + t, std::move(m));
      } catch (const VerificationError& e) {
        rec = LemmaRecord{e.lemma(), k, fiber_name('A', s, t), fam.size()};
        rec.passed = false;
        rec.witness = e.witness();
      }
      res.records.push_back(rec);
      if (s == 1 && !fam.empty()) {
        res.records.push_back(poset_record("theta poset map", k, fiber_name('A', s, t), level, fam,
                                           [&](const Simplex& x) { return theta_rank(k, t, x); }));
      }
    }
  }

  for (int s = 1; s <= k + 4; ++s) {
    for (int u : index_set_J(k, s)) {
      const SimplexSet fam = to_set(family_B(k, s, u));
      const SimplexSet& seen = b_cells[{s, u}];
      if (fam.empty() && seen.empty()) continue;
      LemmaRecord rec;
      try {
        Matching m = matching_B(k, s, u);
        rec = fiber_record("b-matching", k, fiber_name('B', s, u), fam, m);
        if (fam != seen) {
          rec.passed = false;
          rec.witness = "family differs from the classified faces";
        }
        fibres.emplace(2'000'000LL + s * 100 + u, std::move(m));
      } catch (const VerificationError& e) {
        rec = LemmaRecord{e.lemma(), k, fiber_name('B', s, u), fam.size()};
        rec.passed = false;
        rec.witness = e.witness();
      }
      res.records.push_back(rec);
    }
  }

  for (const auto& [v, cells] : c_cells) {
    const std::string name = "C(" + level.vertex(v).to_string() + ")";
    LemmaRecord rec;
    try {
      Matching m = matching_C(level, v, cells);
      rec = fiber_record("c-matching", k, name, cells, m);
      fibres.emplace(3'000'000LL + v, std::move(m));
    } catch (const VerificationError& e) {
      rec = LemmaRecord{e.lemma(), k, name, cells.size()};
      rec.passed = false;
      rec.witness = e.witness();
    }
    res.records.push_back(rec);
    res.records.push_back(poset_record("psi poset map", k, name, level, cells,
                                       [&](const Simplex& x) { return psi_rank(level, v, x); }));
  }

  LemmaRecord cluster{"cluster composition", k, "all", faces.size()};
  try {
    res.matching = compose_cluster(label, fibres);
  } catch (const VerificationError& e) {
    cluster.passed = false;
    cluster.witness = e.witness();
  }
  cluster.pairs = res.matching.size();
  res.critical = critical_cells(faces, res.matching);
  cluster.critical_count = res.critical.size();
  res.critical_is_stable_complex = res.critical == stable_faces;
  cluster.perfect = false;
  if (check_global_acyclicity) {
    const AcyclicityResult ac = check_acyclic(res.matching, faces);
    res.acyclic = ac.acyclic;
    if (!ac.acyclic) {
      cluster.witness = "cycle through {" + to_string(level, ac.cycle.front()) + "}";
    }
  } else {
    res.acyclic = std::all_of(res.records.begin(), res.records.end(),
                              [](const LemmaRecord& r) { return r.acyclic; });
  }
  cluster.acyclic = res.acyclic;
  cluster.passed = cluster.passed && res.acyclic && res.critical_is_stable_complex;
  if (!res.critical_is_stable_complex && cluster.witness.empty()) {
    cluster.witness = "critical cells differ from F(N(SG))";
  }
  res.records.push_back(cluster);
  return res;
}

}  // namespace nkg
