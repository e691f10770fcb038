#pragma once

// Discrete Morse machinery on face posets: partial matchings, element
// matchings, acyclicity, order-preserving classifiers and Cluster-Lemma
// composition. Matchings are treated as untrusted input everywhere; the
// checks here are what turns a claimed matching into a verified one.

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "nkg/simplex.hpp"

namespace nkg {

/// A partial matching on a face poset. Every pair (lower, upper) has
/// upper = lower + one vertex; each cell occurs in at most one pair.
class Matching {
 public:
  /// Throws std::invalid_argument on a non-covering pair or a cell that is
  /// already matched.
  void add(const Simplex& lower, const Simplex& upper);

  std::optional<Simplex> partner(const Simplex& cell) const;
  bool is_matched(const Simplex& cell) const { return partner_.contains(cell); }
  std::size_t size() const { return partner_.size() / 2; }
  bool empty() const { return partner_.empty(); }

  template <class F>
  void for_each_pair(F&& f) const {
    for (const auto& [cell, other] : partner_)
      if (cell.size() < other.size()) f(cell, other);
  }
  /// Pairs ordered canonically by their lower cell.
  std::vector<std::pair<Simplex, Simplex>> pairs() const;

  /// Disjoint union; throws std::invalid_argument if a cell is matched twice.
  void absorb(const Matching& other);

  /// Applies a cell map to both ends of every pair.
  Matching transformed(const std::function<Simplex(const Simplex&)>& f) const;

  /// One pair per line: "sigma | tau".
  void write(std::ostream& out, const Level& level) const;

 private:
  SimplexMap<Simplex> partner_;
};

/// M(delta)_x together with (delta)_x, the cells it covers.
struct ElementMatching {
  Matching matching;
  SimplexSet matched;
};

/// Pairs (sigma - x, sigma + x) whenever both lie in delta.
ElementMatching element_matching(const SimplexSet& delta, VertexId x);

/// Removes (delta)_x from delta and appends M(delta)_x to `out`.
void peel_element_matching(SimplexSet& delta, VertexId x, Matching& out);

struct AcyclicityResult {
  bool acyclic = true;
  /// On failure: a_1, u(a_1), a_2, u(a_2), ..., a_m, u(a_m) with
  /// u(a_m) containing a_1.
  std::vector<Simplex> cycle;
};

/// Searches the alternating paths a_1 < u(a_1) > a_2 < ... for a closed
/// cycle, one dimension band at a time. Only pairs with both cells in
/// `cells` take part; a pair with exactly one cell inside is rejected with
/// std::invalid_argument.
AcyclicityResult check_acyclic(const Matching& matching, const SimplexSet& cells);
inline bool is_acyclic(const Matching& matching, const SimplexSet& cells) {
  return check_acyclic(matching, cells).acyclic;
}

/// Every cell of `cells` is matched to a partner inside `cells`.
bool is_perfect(const Matching& matching, const SimplexSet& cells);

/// Cells not matched inside `cells`.
SimplexSet critical_cells(const SimplexSet& cells, const Matching& matching);

/// Alternating sum of cell counts by dimension.
long long euler_characteristic(const SimplexSet& cells);
/// Cell counts indexed by dimension.
std::vector<std::size_t> count_by_dimension(const SimplexSet& cells);

/// A classifier onto a finite totally ordered label set, given as integer
/// ranks: it is order-preserving when sigma subset tau implies
/// rank(sigma) <= rank(tau).
using RankMap = std::function<long long(const Simplex&)>;

enum class ComparisonScope {
  /// Every comparable pair inside `cells` (exhaustive over subsets).
  kAllPairs,
  /// Covering pairs only; sufficient when `cells` is convex.
  kCoveringPairs,
};

struct PosetMapResult {
  bool order_preserving = true;
  /// (smaller cell, larger cell) with rank(smaller) > rank(larger).
  std::optional<std::pair<Simplex, Simplex>> violation;
};

PosetMapResult verify_poset_map(const RankMap& rank, const SimplexSet& cells,
                                ComparisonScope scope = ComparisonScope::kAllPairs);

/// Disjoint union of fibre matchings. `label` assigns each cell its fibre;
/// a pair whose cells do not both lie in the fibre it was filed under, or a
/// cell matched in two fibres, raises VerificationError("Cluster Lemma").
Matching compose_cluster(const RankMap& label, const std::map<long long, Matching>& fibers);

}  // namespace nkg
