#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nkg {

using BigInt = boost::multiprecision::cpp_int;

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  std::int64_t value = 0;
};

/// Sparse exact-integer matrix in coordinate form. Duplicate coordinates
/// are summed by normalize().
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }
  const std::vector<Triplet>& entries() const { return entries_; }

  void add(std::size_t row, std::size_t col, std::int64_t value);
  /// Sorts row-major, merges duplicates, drops zeros.
  void normalize();

  std::vector<std::vector<std::int64_t>> to_dense() const;
  /// Product; throws std::overflow_error if an entry leaves int64.
  IntegerMatrix multiply(const IntegerMatrix& other) const;
  bool is_zero() const;

  /// "rows cols nnz" header, then one "row col value" line per entry.
  void write_triplets(std::ostream& out) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triplet> entries_;
};

struct SNFResult {
  /// Nonzero invariant factors d_1 | d_2 | ... | d_r, all positive.
  std::vector<BigInt> diagonal;
  std::size_t rank() const { return diagonal.size(); }
  /// Invariant factors other than 1.
  std::vector<BigInt> torsion() const;
};

/// Exact Smith normal form. Unit pivots are eliminated sparsely with a
/// Markowitz-style choice in 64-bit arithmetic (switching to arbitrary
/// precision on overflow); whatever is left is diagonalised densely.
SNFResult smith_normal_form(const IntegerMatrix& m);

/// Dense arbitrary-precision Smith normal form.
SNFResult dense_smith_normal_form(std::vector<std::vector<BigInt>> a);

/// Rank over Z/p (p prime, below 2^31).
std::size_t rank_mod_p(const IntegerMatrix& m, std::uint32_t p);

}  // namespace nkg
