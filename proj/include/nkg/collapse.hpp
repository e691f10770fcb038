#pragma once

// The collapse of N(S_{3,k}) onto N(SG_{3,k}): the four-way face
// classification, the A/B/C family matchings and their composition.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nkg/complex.hpp"
#include "nkg/morse.hpp"

namespace nkg {

/// I_s = [k+6] \ {s-1, s, s+1}, indices taken cyclically.
std::vector<int> index_set_I(int k, int s);
/// J_1 = [k+5] \ [2]; J_s = [k+6] \ [s+1] for 1 < s < k+5; empty otherwise.
std::vector<int> index_set_J(int k, int s);

/// The unique (s, t) with t in I_s and C = {s, s+1, t}, if C has that shape.
std::optional<std::pair<int, int>> a_shape(int k, ElementMask complement);
/// The unique (s, u) with s in [k+4], u in J_s and C = {s, s+1, u, u+1}.
std::optional<std::pair<int, int>> b_shape(int k, ElementMask complement);

/// Nonempty sets of triples inside T = [k+6] \ C whose union is exactly T.
/// `stable_only` restricts to stable triples; `need_unstable` keeps only sets
/// with an unstable member. Exhaustive over subsets: at most 24 candidate
/// triples are accepted.
std::vector<Simplex> covering_sets(const Level& level, ElementMask complement, bool stable_only,
                                   bool need_unstable);

/// A_k^{s,t} and B_k^{s,u} in canonical order.
std::vector<Simplex> family_A(int k, int s, int t);
std::vector<Simplex> family_B(int k, int s, int u);

enum class FaceFamily { kStable = 1, kC = 2, kB = 3, kA = 4 };
std::string to_string(FaceFamily f);

struct FaceClass {
  FaceFamily family = FaceFamily::kStable;
  int s = 0;  // A: (s, t); B: (s, u)
  int t = 0;
  VertexId v = 0;  // C: least unstable member
};

/// Classifies a face of N(S_{3,k}). Throws VerificationError("face partition")
/// when no case applies.
FaceClass classify(const Level& level, const Simplex& sigma);
/// The four-way classifier as ranks a_1 > a_2 > a_3 > a_4.
long long phi_rank(const Level& level, const Simplex& sigma);

// ---------------------------------------------------------------- A family

/// Pivot vertex of the A_r^{1,l} recursion.
VertexId a_pivot(int r, int ell);

struct DeltaTarget {
  int shift = 0;  // f_i(sigma) = (sigma - pivot) (-) shift
  int level = 0;  // beta
  int s = 0;      // target A_beta^{s,t}
  int t = 0;
};

/// 0 for the pivot fiber (A)_pivot, otherwise the Delta index 1..7.
/// Throws VerificationError("delta decomposition") if sigma fits no piece.
int delta_decompose(int r, int ell, const Simplex& sigma);
/// Target family of f_i, derived from the complement bookkeeping and
/// checked against the printed labels.
DeltaTarget delta_target(int r, int ell, int i);
/// f_i(sigma) as a face at level beta; nullopt if a triple falls outside.
std::optional<Simplex> delta_map(int r, int ell, int i, const Simplex& sigma);

/// Checks f_i : Delta_i -> A_beta^{s,t} is a bijection, for every nonempty
/// Delta_i. Throws VerificationError("delta bijection").
void verify_delta_bijections(int r, int ell);

/// theta_l: pivot fiber 7, Delta_i 7 - i.
long long theta_rank(int r, int ell, const Simplex& sigma);

/// M_k^{s,t}, perfect and acyclic on A_k^{s,t}. M_r^{1,l} is memoised.
Matching matching_A(int k, int s, int t);

// ---------------------------------------------------------------- B family

/// f_{s,u}(sigma) = sigma (+) (k+5-u), reinterpreted at level k-1.
std::optional<Simplex> shift_map(int k, int s, int u, const Simplex& sigma);
/// Target (s', t') of f_{s,u} at level k-1, canonicalised.
std::pair<int, int> shift_target(int k, int s, int u);
/// Throws VerificationError("shift bijection").
void verify_shift_bijection(int k, int s, int u);
Matching matching_B(int k, int s, int u);

// ---------------------------------------------------------------- C family

/// t in [s1, s3].
std::vector<int> cover(const Vertex& v);
/// Union of Cover(u) over the members.
ElementMask co(const Level& level, const Simplex& sigma);
/// max(Co) - min(Co) + 1; 0 for the empty set.
int cover_length(const Level& level, const Simplex& sigma);
std::vector<int> comp(const Vertex& v, int ell);
/// min Comp(v, l); nullopt when Comp is empty.
std::optional<int> comp_min(const Vertex& v, int ell);

/// Faces of N(S_{3,k}) whose least unstable member is v.
SimplexSet c_fiber(const Level& level, VertexId v);
/// L(N(sigma (-) j)) for sigma in C_k^v, v = 12l (+) j.
int c_stratum(const Level& level, VertexId v, const Simplex& sigma);
/// psi: stratum n gets rank -n.
long long psi_rank(const Level& level, VertexId v, const Simplex& sigma);
/// B_n^l inside N(12l), in lexicographic order, collected from `fiber`
/// (which must be C_k^{12l}).
std::vector<VertexId> b_set(const Level& level, int ell, int n, const SimplexSet& fiber);
/// The vertex 1lR(u, l) (+) j toggled by the matching rule at sigma.
VertexId c_toggle(const Level& level, VertexId v, const Simplex& sigma);
/// M on C_k^v; verifies partner membership, involution and stratum.
/// Throws VerificationError("c-rule").
Matching matching_C(const Level& level, VertexId v, const SimplexSet& fiber);

// ---------------------------------------------------------------- assembly

struct LemmaRecord {
  std::string lemma;
  int k = 0;
  std::string fiber;
  std::size_t cells = 0;
  std::size_t pairs = 0;
  bool acyclic = true;
  bool perfect = true;
  std::size_t critical_count = 0;
  bool passed = true;
  std::string witness;
};

struct Theorem2Result {
  int k = 0;
  std::size_t faces = 0;
  Matching matching;
  SimplexSet critical;
  bool acyclic = false;
  bool critical_is_stable_complex = false;
  std::vector<LemmaRecord> records;
  bool passed() const;
};

/// Builds and verifies the full matching on F(N(S_{3,k})). `check_acyclic`
/// off skips the global cycle search (per-fibre checks still run).
Theorem2Result theorem2_matching(int k, bool check_global_acyclicity = true);

}  // namespace nkg
