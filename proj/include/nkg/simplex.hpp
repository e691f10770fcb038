#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nkg/level.hpp"

namespace nkg {

/// A finite set of vertex ids, stored as a 256-bit membership word array.
/// Simplices carry no level; callers pair them with the Level they were
/// built against.
class Simplex {
 public:
  using Words = std::array<std::uint64_t, 4>;

  Simplex() = default;
  explicit Simplex(const Words& words) : words_(words) {}
  Simplex(std::initializer_list<VertexId> ids) {
    for (VertexId id : ids) insert(id);
  }
  static Simplex from_ids(std::span<const VertexId> ids);

  bool contains(VertexId id) const { return (words_[id >> 6] >> (id & 63)) & 1U; }
  void insert(VertexId id) { words_[id >> 6] |= std::uint64_t{1} << (id & 63); }
  void erase(VertexId id) { words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63)); }
  Simplex with(VertexId id) const {
    Simplex s = *this;
    s.insert(id);
    return s;
  }
  Simplex without(VertexId id) const {
    Simplex s = *this;
    s.erase(id);
    return s;
  }
  Simplex toggled(VertexId id) const {
    Simplex s = *this;
    s.words_[id >> 6] ^= std::uint64_t{1} << (id & 63);
    return s;
  }

  int size() const {
    return std::popcount(words_[0]) + std::popcount(words_[1]) + std::popcount(words_[2]) +
           std::popcount(words_[3]);
  }
  int dim() const { return size() - 1; }
  bool empty() const { return (words_[0] | words_[1] | words_[2] | words_[3]) == 0; }
  /// Smallest member; undefined on the empty set.
  VertexId front() const;

  bool subset_of(const Simplex& other) const {
    for (int i = 0; i < 4; ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  bool intersects(const Simplex& other) const {
    for (int i = 0; i < 4; ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (int w = 0; w < 4; ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<VertexId>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }
  std::vector<VertexId> members() const;

  const Words& words() const { return words_; }

  Simplex operator|(const Simplex& o) const;
  Simplex operator&(const Simplex& o) const;
  Simplex operator^(const Simplex& o) const;
  Simplex minus(const Simplex& o) const;

  friend bool operator==(const Simplex&, const Simplex&) = default;

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= h >> 31;
      h *= 0xbf58476d1ce4e5b9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

 private:
  Words words_{};
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const { return s.hash(); }
};

using SimplexSet = std::unordered_set<Simplex, SimplexHash>;
template <class V>
using SimplexMap = std::unordered_map<Simplex, V, SimplexHash>;

/// Canonical simplex order: by size, then lexicographically on the sorted
/// member list (vertex ids are already in lexicographic triple order).
bool canonical_less(const Simplex& a, const Simplex& b);
std::vector<Simplex> sorted(const SimplexSet& cells);

/// Union S_sigma of the member triples, and its complement C_sigma.
ElementMask support_mask(const Level& level, const Simplex& s);
ElementMask complement_mask(const Level& level, const Simplex& s);

bool has_unstable(const Level& level, const Simplex& s);
/// Lexicographically least unstable member; the simplex must have one.
VertexId least_unstable(const Level& level, const Simplex& s);

/// sigma (+) j at the given level.
Simplex rotate(const Level& level, const Simplex& s, int j);

/// Reinterprets the member triples of a simplex built at `from` as vertices
/// of `to`. Throws std::domain_error if a triple does not exist in `to`.
Simplex embed(const Simplex& s, const Level& from, const Level& to);

/// Members as vertex labels, space separated, in id order.
std::string to_string(const Level& level, const Simplex& s);
Simplex parse_simplex(const Level& level, const std::string& text);

}  // namespace nkg
