#pragma once

// Reference implementations shared by the unit tests and the acceptance
// driver. Deliberately naive and independent of the library algorithms.

#include <bit>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nkg/integer_matrix.hpp"
#include "nkg/morse.hpp"

namespace nkg::oracle {

// Exhaustive search for a closed path that alternates matched up-steps and
// unmatched down-steps.
inline bool has_cycle(const Matching& m, const std::vector<Simplex>& cells) {
  const int n = static_cast<int>(cells.size());
  std::vector<std::vector<int>> next(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (cells[b].size() == cells[a].size() + 1 && cells[a].subset_of(cells[b])) {
        auto p = m.partner(cells[a]);
        if (p && *p == cells[b]) next[a].push_back(b);  // up along the matching
      }
      if (cells[a].size() == cells[b].size() + 1 && cells[b].subset_of(cells[a])) {
        auto p = m.partner(cells[b]);
        if (!p || *p != cells[a]) next[a].push_back(b);  // down, not matched
      }
    }
  std::vector<char> on_path(n, 0);
  std::function<bool(int, int)> walk = [&](int start, int at) {
    for (int b : next[at]) {
      if (b == start) return true;
      if (on_path[b] || b < start) continue;
      on_path[b] = 1;
      if (walk(start, b)) return true;
      on_path[b] = 0;
    }
    return false;
  };
  for (int s = 0; s < n; ++s) {
    on_path[s] = 1;
    if (walk(s, s)) return true;
    on_path[s] = 0;
  }
  return false;
}

inline std::vector<Simplex> all_subsets(const std::vector<VertexId>& ground, int max_size) {
  std::vector<Simplex> out;
  const int n = static_cast<int>(ground.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) > max_size) continue;
    Simplex s;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(ground[i]);
    out.push_back(s);
  }
  return out;
}

// Plain Gaussian elimination over Q.
inline std::size_t rational_rank(const IntegerMatrix& m) {
  using boost::multiprecision::cpp_rational;
  const auto dense = m.to_dense();
  std::vector<std::vector<cpp_rational>> a;
  for (const auto& row : dense) a.emplace_back(row.begin(), row.end());
  std::size_t rank = 0;
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][c] == 0) continue;
      const cpp_rational f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace nkg::oracle
