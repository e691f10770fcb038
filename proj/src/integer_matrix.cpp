#include "nkg/integer_matrix.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace nkg {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.add(i, i, 1);
  return m;
}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  IntegerMatrix m(dense.size(), dense.empty() ? 0 : dense.front().size());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i].size() != m.cols_) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t j = 0; j < dense[i].size(); ++j)
      if (dense[i][j] != 0) m.add(i, j, dense[i][j]);
  }
  return m;
}

void IntegerMatrix::add(std::size_t row, std::size_t col, std::int64_t value) {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("matrix entry out of range");
  entries_.push_back({row, col, value});
}

void IntegerMatrix::normalize() {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  for (const Triplet& t : entries_) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0; });
  entries_ = std::move(merged);
}

std::vector<std::vector<std::int64_t>> IntegerMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols_, 0));
  for (const Triplet& t : entries_) d[t.row][t.col] += t.value;
  return d;
}

IntegerMatrix IntegerMatrix::multiply(const IntegerMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix shapes do not compose");
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> by_row(other.rows_);
  for (const Triplet& t : other.entries_) by_row[t.row].emplace_back(t.col, t.value);
  std::map<std::pair<std::size_t, std::size_t>, __int128> acc;
  for (const Triplet& a : entries_)
    for (const auto& [col, v] : by_row[a.col])
      acc[{a.row, col}] += static_cast<__int128>(a.value) * v;
  IntegerMatrix out(rows_, other.cols_);
  for (const auto& [rc, v] : acc) {
    if (v == 0) continue;
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("matrix product leaves int64");
    out.add(rc.first, rc.second, static_cast<std::int64_t>(v));
  }
  return out;
}

bool IntegerMatrix::is_zero() const {
  IntegerMatrix copy = *this;
  copy.normalize();
  return copy.entries_.empty();
}

void IntegerMatrix::write_triplets(std::ostream& out) const {
  out << rows_ << ' ' << cols_ << ' ' << entries_.size() << '\n';
  for (const Triplet& t : entries_) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

std::vector<BigInt> SNFResult::torsion() const {
  std::vector<BigInt> out;
  for (const BigInt& d : diagonal)
    if (d != 1) out.push_back(d);
  return out;
}

namespace {

struct Overflow {};

struct CheckedI64 {
  using T = std::int64_t;
  T from(std::int64_t v) const { return v; }
  bool zero(T x) const { return x == 0; }
  bool unit(T x) const { return x == 1 || x == -1; }
  T inverse(T x) const { return x; }
  T mul(T a, T b) const {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  T sub(T a, T b) const {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  T neg(T a) const { return sub(0, a); }
  BigInt big(T x) const { return BigInt(x); }
};

struct Arbitrary {
  using T = BigInt;
  T from(std::int64_t v) const { return T(v); }
  bool zero(const T& x) const { return x.is_zero(); }
  bool unit(const T& x) const { return x == 1 || x == -1; }
  T inverse(const T& x) const { return x; }
  T mul(const T& a, const T& b) const { return a * b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T neg(const T& a) const { return -a; }
  BigInt big(const T& x) const { return x; }
};

struct ModP {
  using T = std::uint32_t;
  std::uint32_t p;
  T from(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<T>(r < 0 ? r + p : r);
  }
  bool zero(T x) const { return x == 0; }
  bool unit(T x) const { return x != 0; }
  T mul(T a, T b) const { return static_cast<T>(static_cast<std::uint64_t>(a) * b % p); }
  T sub(T a, T b) const { return a >= b ? a - b : static_cast<T>(a + static_cast<std::uint64_t>(p) - b); }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inverse(T x) const {
    std::uint64_t result = 1, base = x, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<T>(result);
  }
  BigInt big(T x) const { return BigInt(x); }
};

// Sparse elimination on unit pivots. Each pivot is a unimodular step that
// contributes one invariant factor 1 and removes its row and column.
template <class R>
class Eliminator {
 public:
  using T = typename R::T;
  using Row = std::vector<std::pair<std::uint32_t, T>>;

  Eliminator(const IntegerMatrix& m, R ring) : ring_(std::move(ring)) {
    IntegerMatrix copy = m;
    copy.normalize();
    rows_.resize(m.rows());
    col_rows_.resize(m.cols());
    col_count_.assign(m.cols(), 0);
    for (const Triplet& t : copy.entries()) {
      const T v = ring_.from(t.value);
      if (ring_.zero(v)) continue;
      rows_[t.row].emplace_back(static_cast<std::uint32_t>(t.col), v);
      col_rows_[t.col].push_back(static_cast<std::uint32_t>(t.row));
      ++col_count_[t.col];
    }
    for (std::size_t c = 0; c < col_count_.size(); ++c)
      if (col_count_[c] > 0) queue_.emplace(col_count_[c], static_cast<std::uint32_t>(c));
  }

  std::size_t run() {
    while (!queue_.empty()) {
      std::uint32_t best_row = 0, best_col = 0;
      std::size_t best_len = std::numeric_limits<std::size_t>::max();
      bool found = false;
      for (auto it = queue_.begin(); it != queue_.end() && !found; ++it) {
        const std::uint32_t c = it->second;
        for (std::uint32_t r : live_rows(c)) {
          const T* v = find(rows_[r], c);
          if (v && ring_.unit(*v) && rows_[r].size() < best_len) {
            best_len = rows_[r].size();
            best_row = r;
            best_col = c;
            found = true;
          }
        }
      }
      if (!found) break;
      eliminate(best_row, best_col);
      ++pivots_;
    }
    return pivots_;
  }

  std::vector<std::vector<BigInt>> remainder() const {
    std::vector<std::uint32_t> cols;
    for (const auto& [count, c] : queue_) cols.push_back(c);
    std::sort(cols.begin(), cols.end());
    std::map<std::uint32_t, std::size_t> col_index;
    for (std::size_t i = 0; i < cols.size(); ++i) col_index[cols[i]] = i;
    std::vector<std::vector<BigInt>> dense;
    for (const Row& row : rows_) {
      if (row.empty()) continue;
      std::vector<BigInt> d(cols.size());
      for (const auto& [c, v] : row) d[col_index.at(c)] = ring_.big(v);
      dense.push_back(std::move(d));
    }
    return dense;
  }

 private:
  static const T* find(const Row& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  // Drops stale entries from a column's row list and returns it.
  const std::vector<std::uint32_t>& live_rows(std::uint32_t c) {
    auto& list = col_rows_[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::erase_if(list, [&](std::uint32_t r) { return find(rows_[r], c) == nullptr; });
    return list;
  }

  void set_count(std::uint32_t c, int count) {
    if (col_count_[c] > 0) queue_.erase({col_count_[c], c});
    col_count_[c] = count;
    if (count > 0) queue_.emplace(count, c);
  }

  void eliminate(std::uint32_t pr, std::uint32_t pc) {
    const Row pivot_row = rows_[pr];
    const T inv = ring_.inverse(*find(pivot_row, pc));
    const std::vector<std::uint32_t> targets = live_rows(pc);
    for (std::uint32_t r : targets) {
      if (r == pr) continue;
      const T f = ring_.mul(*find(rows_[r], pc), inv);
      Row merged;
      merged.reserve(rows_[r].size() + pivot_row.size());
      const Row& row = rows_[r];
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < pivot_row.size()) {
        if (b == pivot_row.size() || (a < row.size() && row[a].first < pivot_row[b].first)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || pivot_row[b].first < row[a].first) {
          const std::uint32_t c = pivot_row[b].first;
          const T v = ring_.neg(ring_.mul(f, pivot_row[b].second));
          ++b;
          if (ring_.zero(v)) continue;
          merged.emplace_back(c, v);
          col_rows_[c].push_back(r);
          set_count(c, col_count_[c] + 1);
        } else {
          const std::uint32_t c = row[a].first;
          const T v = ring_.sub(row[a].second, ring_.mul(f, pivot_row[b].second));
          ++a;
          ++b;
          if (ring_.zero(v)) {
            set_count(c, col_count_[c] - 1);
          } else {
            merged.emplace_back(c, v);
          }
        }
      }
      rows_[r] = std::move(merged);
    }
    for (const auto& [c, v] : pivot_row) set_count(c, col_count_[c] - 1);
    rows_[pr].clear();
    set_count(pc, 0);
  }

  R ring_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<int> col_count_;
  std::set<std::pair<int, std::uint32_t>> queue_;
  std::size_t pivots_ = 0;
};

}  // namespace

SNFResult dense_smith_normal_form(std::vector<std::vector<BigInt>> a) {
  SNFResult res;
  const std::size_t m = a.size();
  const std::size_t n = m ? a.front().size() : 0;
  auto abs_less = [](const BigInt& x, const BigInt& y) { return abs(x) < abs(y); };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block to (t, t).
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (!a[i][j].is_zero() && (bi == m || abs_less(a[i][j], a[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi == m) break;
    std::swap(a[t], a[bi]);
    for (auto& row : a) std::swap(row[t], row[bj]);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t].is_zero()) continue;
        const BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (!a[i][t].is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j].is_zero()) continue;
        const BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (!a[t][j].is_zero()) clean = false;
      }
      if (!clean) {
        // Bring the smallest remainder in row/column t to the pivot.
        std::size_t pi = t, pj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (!a[i][t].is_zero() && abs_less(a[i][t], a[pi][pj])) {
            pi = i;
            pj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (!a[t][j].is_zero() && abs_less(a[t][j], a[pi][pj])) {
            pi = t;
            pj = j;
          }
        std::swap(a[t], a[pi]);
        for (auto& row : a) std::swap(row[t], row[pj]);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (BigInt(a[i][j] % a[t][t]) != 0) {
            for (std::size_t c = t; c < n; ++c) a[t][c] += a[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
    res.diagonal.push_back(abs(a[t][t]));
  }
  return res;
}

SNFResult smith_normal_form(const IntegerMatrix& m) {
  std::size_t units = 0;
  std::vector<std::vector<BigInt>> rest;
  try {
    Eliminator<CheckedI64> e(m, CheckedI64{});
    units = e.run();
    rest = e.remainder();
  } catch (const Overflow&) {
    Eliminator<Arbitrary> e(m, Arbitrary{});
    units = e.run();
    rest = e.remainder();
  }
  SNFResult tail = dense_smith_normal_form(std::move(rest));
  SNFResult res;
  res.diagonal.assign(units, BigInt(1));
  res.diagonal.insert(res.diagonal.end(), tail.diagonal.begin(), tail.diagonal.end());
  return res;
}

std::size_t rank_mod_p(const IntegerMatrix& m, std::uint32_t p) {
  if (p < 2 || p >= (1U << 31)) throw std::invalid_argument("rank_mod_p: modulus out of range");
  Eliminator<ModP> e(m, ModP{p});
  return e.run();
}

}  // namespace nkg
