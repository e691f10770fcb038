#include "nkg/morse.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "nkg/verification.hpp"

namespace nkg {

void Matching::add(const Simplex& lower, const Simplex& upper) {
  if (!lower.subset_of(upper) || upper.size() != lower.size() + 1 || lower.empty()) {
    throw std::invalid_argument("matched cells are not a covering pair");
  }
  if (partner_.contains(lower) || partner_.contains(upper)) {
    throw std::invalid_argument("cell matched twice");
  }
  partner_.emplace(lower, upper);
  partner_.emplace(upper, lower);
}

std::optional<Simplex> Matching::partner(const Simplex& cell) const {
  auto it = partner_.find(cell);
  if (it == partner_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<Simplex, Simplex>> Matching::pairs() const {
  std::vector<std::pair<Simplex, Simplex>> out;
  out.reserve(size());
  for_each_pair([&](const Simplex& a, const Simplex& b) { out.emplace_back(a, b); });
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
  return out;
}

void Matching::absorb(const Matching& other) {
  partner_.reserve(partner_.size() + other.partner_.size());
  other.for_each_pair([&](const Simplex& a, const Simplex& b) { add(a, b); });
}

Matching Matching::transformed(const std::function<Simplex(const Simplex&)>& f) const {
  Matching out;
  out.partner_.reserve(partner_.size());
  for_each_pair([&](const Simplex& a, const Simplex& b) { out.add(f(a), f(b)); });
  return out;
}

void Matching::write(std::ostream& out, const Level& level) const {
  for (const auto& [a, b] : pairs()) out << to_string(level, a) << " | " << to_string(level, b) << '\n';
}

ElementMatching element_matching(const SimplexSet& delta, VertexId x) {
  ElementMatching em;
  for (const Simplex& s : delta) {
    if (s.contains(x)) continue;
    const Simplex up = s.with(x);
    if (delta.contains(up)) {
      em.matching.add(s, up);
      em.matched.insert(s);
      em.matched.insert(up);
    }
  }
  return em;
}

void peel_element_matching(SimplexSet& delta, VertexId x, Matching& out) {
  std::vector<Simplex> lowers;
  for (const Simplex& s : delta)
    if (!s.contains(x) && delta.contains(s.with(x))) lowers.push_back(s);
  for (const Simplex& s : lowers) {
    const Simplex up = s.with(x);
    out.add(s, up);
    delta.erase(s);
    delta.erase(up);
  }
}

AcyclicityResult check_acyclic(const Matching& matching, const SimplexSet& cells) {
  // Nodes are lower cells of pairs inside `cells`; a -> a' whenever a' is
  // another facet of u(a) that is itself matched upward.
  SimplexMap<Simplex> up;
  matching.for_each_pair([&](const Simplex& a, const Simplex& b) {
    const bool ina = cells.contains(a), inb = cells.contains(b);
    if (ina != inb) throw std::invalid_argument("matched pair straddles the cell set");
    if (ina) up.emplace(a, b);
  });

  struct Frame {
    Simplex node;
    Simplex upper;
    std::vector<VertexId> members;
    std::size_t next = 0;
  };
  SimplexMap<std::uint8_t> state;  // 1 on stack, 2 finished
  state.reserve(up.size());
  std::vector<Frame> stack;

  auto push = [&](const Simplex& node) {
    const Simplex& u = up.at(node);
    state[node] = 1;
    stack.push_back(Frame{node, u, u.members(), 0});
  };

  for (const auto& [start, _] : up) {
    if (state.contains(start)) continue;
    push(start);
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == f.members.size()) {
        state[f.node] = 2;
        stack.pop_back();
        continue;
      }
      const Simplex facet = f.upper.without(f.members[f.next++]);
      if (facet == f.node || !up.contains(facet)) continue;
      auto it = state.find(facet);
      if (it == state.end()) {
        push(facet);
      } else if (it->second == 1) {
        AcyclicityResult r;
        r.acyclic = false;
        std::size_t i = stack.size();
        while (stack[i - 1].node != facet) --i;
        for (std::size_t j = i - 1; j < stack.size(); ++j) {
          r.cycle.push_back(stack[j].node);
          r.cycle.push_back(stack[j].upper);
        }
        return r;
      }
    }
  }
  return {};
}

bool is_perfect(const Matching& matching, const SimplexSet& cells) {
  return std::all_of(cells.begin(), cells.end(), [&](const Simplex& s) {
    auto p = matching.partner(s);
    return p && cells.contains(*p);
  });
}

SimplexSet critical_cells(const SimplexSet& cells, const Matching& matching) {
  SimplexSet out;
  for (const Simplex& s : cells) {
    auto p = matching.partner(s);
    if (!p || !cells.contains(*p)) out.insert(s);
  }
  return out;
}

long long euler_characteristic(const SimplexSet& cells) {
  long long chi = 0;
  for (const Simplex& s : cells) chi += (s.dim() % 2 == 0) ? 1 : -1;
  return chi;
}

std::vector<std::size_t> count_by_dimension(const SimplexSet& cells) {
  std::vector<std::size_t> out;
  for (const Simplex& s : cells) {
    const auto d = static_cast<std::size_t>(s.dim());
    if (out.size() <= d) out.resize(d + 1, 0);
    ++out[d];
  }
  return out;
}

PosetMapResult verify_poset_map(const RankMap& rank, const SimplexSet& cells,
                                ComparisonScope scope) {
  SimplexMap<long long> ranks;
  ranks.reserve(cells.size());
  for (const Simplex& s : cells) ranks.emplace(s, rank(s));

  for (const auto& [tau, rt] : ranks) {
    const std::vector<VertexId> members = tau.members();
    const int m = static_cast<int>(members.size());
    if (scope == ComparisonScope::kCoveringPairs || m <= 1) {
      for (VertexId v : members) {
        auto it = ranks.find(tau.without(v));
        if (it != ranks.end() && it->second > rt) return {false, std::make_pair(it->first, tau)};
      }
      continue;
    }
    if (m > 24) throw std::domain_error("verify_poset_map: cell too large for exhaustive scan");
    const std::uint32_t full = (std::uint32_t{1} << m) - 1;
    for (std::uint32_t sub = (full - 1) & full; sub != 0; sub = (sub - 1) & full) {
      Simplex sigma;
      for (int i = 0; i < m; ++i)
        if (sub >> i & 1U) sigma.insert(members[i]);
      auto it = ranks.find(sigma);
      if (it != ranks.end() && it->second > rt) return {false, std::make_pair(sigma, tau)};
    }
  }
  return {};
}

Matching compose_cluster(const RankMap& label, const std::map<long long, Matching>& fibers) {
  Matching out;
  for (const auto& [fiber, m] : fibers) {
    m.for_each_pair([&](const Simplex& a, const Simplex& b) {
      if (label(a) != fiber || label(b) != fiber) {
        throw VerificationError("Cluster Lemma",
                                "pair filed under fibre " + std::to_string(fiber) +
                                    " straddles fibres " + std::to_string(label(a)) + "/" +
                                    std::to_string(label(b)));
      }
      if (out.is_matched(a) || out.is_matched(b)) {
        throw VerificationError("Cluster Lemma", "cell matched in two fibres");
      }
      out.add(a, b);
    });
  }
  return out;
}

}  // namespace nkg
