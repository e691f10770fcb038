#pragma once

// Boundary matrices and (relative, reduced) Betti numbers over Z.

#include <cstdint>
#include <vector>

#include "nkg/complex.hpp"
#include "nkg/integer_matrix.hpp"

namespace nkg {

/// Primes used for the rank precheck.
inline constexpr std::uint32_t kCheckPrimes[] = {1000003U, 998244353U};

/// Rows are `lower` cells, columns `upper` cells. A column gets (-1)^i at the
/// facet that drops its i-th member (members in id order). Facets missing
/// from `lower` are skipped, which gives the quotient boundary.
IntegerMatrix boundary_matrix(const std::vector<Simplex>& lower, const std::vector<Simplex>& upper);

/// d-faces to (d-1)-faces. For d = 0 this is the 1 x #vertices
/// augmentation row when `augmented`, otherwise an empty 0 x #vertices map.
IntegerMatrix boundary_matrix(const SimplicialComplex& complex, int d, bool augmented = false);

struct BettiReport {
  std::vector<long long> betti;              // index d = 0..max_dim
  std::vector<std::vector<BigInt>> torsion;  // invariant factors > 1 per d
  std::vector<std::size_t> cells;            // cells per d
  std::vector<std::size_t> boundary_rank;    // rank of the map out of d-cells, d = 0..max_dim+1
  bool mod_p_agrees = true;
  bool torsion_free() const;
};

/// Betti numbers through max_dim from the SNF of boundary maps d = 0..max_dim+1.
/// `reduced` adds the augmentation.
BettiReport betti(const SimplicialComplex& complex, int max_dim, bool reduced = true);

/// H_*(X, A) from the faces of X outside A. Throws std::domain_error unless
/// A is a subcomplex of X.
BettiReport relative_betti(const SimplicialComplex& x, const SimplicialComplex& a, int max_dim);

}  // namespace nkg
