#pragma once

// The filtration N(SG) c N(S) c X_2 c N(KG) and the P/Q matchings that
// count the spheres in the wedge N(KG_{3,k}).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nkg/collapse.hpp"

namespace nkg {

/// X_0 = N(SG), X_1 = N(S), X_2 = X_1 plus the faces of X_3 \ X_1 with
/// |C_sigma| = 4, X_3 = N(KG).
SimplicialComplex filtration(int k, int level);

struct PQTag {
  enum class Kind { kP, kQ } kind = Kind::kP;
  int i = 0;
  int j = 0;
  VertexId v = 0;  // least unstable member
  friend bool operator==(const PQTag&, const PQTag&) = default;
};
std::string to_string(const PQTag& tag);

/// Tag of a face of X_3 \ X_1. Throws VerificationError("pq partition") if
/// the complement has neither shape.
PQTag pq_classify(const Level& level, const Simplex& sigma);

/// NC_j and C_j as sorted vertex ids.
std::vector<VertexId> nc_set(int k, int j);
std::vector<VertexId> c_set(int k, int j);
bool in_nc(const Vertex& v, int j);

/// W_{v}^j, lexicographically sorted.
std::vector<VertexId> w_set(const Level& level, VertexId v, int j);

/// P_{i,j}^k: sets of triples covering [k+6] \ {i, i+1, j} with an unstable member.
std::vector<Simplex> p_fiber(int k, int i, int j);
/// Q_{i,j}^k: the same for the complement {i, i+1, j, j+1}.
std::vector<Simplex> q_fiber(int k, int i, int j);

/// Sigma^{v,j}: the part of P_{1,j}^k whose least unstable member is v.
std::vector<Simplex> sigma_fiber(int k, int j, VertexId v);

/// psi_j on Sigma^{v,j}: the t-th element matching gets p_j - t + 1, the
/// residue 0. Computed by replaying the sequential matchings.
SimplexMap<long long> psi_j_ranks(int k, int j, VertexId v);

struct FiberMatching {
  SimplexSet cells;
  Matching matching;
  SimplexSet critical;
};

/// The matching on P_{i,j}^k (rotated from P_{1,j'}^k when i != 1).
FiberMatching matching_P(int k, int i, int j);
/// Pull-back of the level k-1 matching on P_{i+k+5-j, k+5}.
FiberMatching matching_Q(int k, int i, int j);
/// The (i', j') of the level k-1 fibre behind Q_{i,j}^k, canonicalised.
std::pair<int, int> q_source(int k, int i, int j);

struct Theorem3Counts {
  long long extra_k_cells = 0;
  long long extra_km1_cells = 0;
  long long predicted_t = 0;
  std::size_t p_pairs = 0;  // number of (i, j) with j in I_i
  std::size_t q_pairs = 0;  // number of (i, j) with j in J_i
};
/// Closed forms, with the index-pair counts recomputed from I_i and J_i.
Theorem3Counts theorem3_counts(int k);

/// 1, 2 or 3: the first X_i containing sigma (sigma must be a face of X_3).
int filtration_index(const Level& level, const Simplex& sigma);

// Order-preserving labels on the two layers; a larger rank is a larger label.

/// On all of X_3: P_{i,*} -> k+7-i, faces of X_2 -> 0.
long long p_layer_rank(const Level& level, const Simplex& sigma);
/// On X_2: Q_{i,*} -> k+5-i, faces of X_1 -> 0.
long long q_layer_rank(const Level& level, const Simplex& sigma);
/// Position of j in the printed order c_{i+2} > ... > c_{k+6} > c_1 > ... > c_{i-2}.
long long p_column_rank(int k, int i, int j);
/// Position of j in J_i, largest label first.
long long q_column_rank(int k, int i, int j);
/// b_{v_s} for the least unstable member v_s: m - s.
long long least_unstable_rank(const Level& level, const Simplex& sigma);

struct PosetCheck {
  std::string lemma;
  std::string fiber;
  std::size_t cells = 0;
  bool passed = false;
  std::string witness;
};

/// Every poset map of the wedge construction: the layer, column and vertex
/// labels for P and Q, and the W-sequence labels on each Sigma^{v,j}.
std::vector<PosetCheck> verify_wedge_poset_maps(int k);

struct CensusRow {
  char family = 'P';
  int i = 0;
  int j = 0;
  std::size_t cells = 0;
  std::size_t pairs = 0;
  std::size_t critical = 0;
  int critical_dim = -1;  // -1 when critical cells span several dimensions
  bool acyclic = false;
  bool passed = false;
};

struct CensusOptions {
  bool check_acyclicity = true;
  /// Fraction of cells re-classified by pq_classify (0 disables).
  double spot_check_fraction = 0.0;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Census {
  int k = 0;
  std::vector<CensusRow> rows;
  std::size_t p_critical = 0;
  std::size_t q_critical = 0;
  std::size_t spot_checked = 0;
  bool spot_checks_passed = true;
  Theorem3Counts expected;
  bool passed() const;
};

/// Builds every P and Q fibre matching and checks the critical counts.
Census critical_census(int k, const CensusOptions& options = {});

}  // namespace nkg
