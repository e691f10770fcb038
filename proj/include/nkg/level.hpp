#pragma once

// Triple universe of the ground set [k+6]: vertex ids, stability flags,
// bitmasks and the cyclic rotation x -> x (+) j.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nkg {

using VertexId = std::uint16_t;

/// Largest family parameter supported by the 256-bit simplex encoding
/// (C(12,3) = 220 vertices).
inline constexpr int kMaxParameter = 6;

/// Subset of [k+6] encoded with bit e-1 for element e.
using ElementMask = std::uint32_t;

/// A 3-subset {s1 < s2 < s3} of [k+6].
struct Vertex {
  std::array<int, 3> elements{};
  int k = 0;

  int ground() const { return k + 6; }
  ElementMask mask() const;
  /// Concatenated digits when k+6 <= 9, comma separated otherwise.
  std::string to_string() const;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Sorts and validates three distinct elements of [k+6]; throws
/// std::domain_error otherwise.
Vertex make_vertex(int k, int a, int b, int c);

/// Parses "124" or "1,2,4".
Vertex parse_vertex(int k, const std::string& text);

bool is_stable(const Vertex& v);

/// Every coordinate shifted by j modulo k+6; negative j rotates backwards.
Vertex rotate(const Vertex& v, int j);

struct UnstableRep {
  int ell = 0;
  int shift = 0;
  friend bool operator==(const UnstableRep&, const UnstableRep&) = default;
};

/// (ell, j) with rotate(12ell, j) == v, smallest j first, then smallest ell.
/// Throws std::domain_error on a stable vertex.
UnstableRep unstable_rep(const Vertex& v);

int wrap(int element, int ground);
ElementMask rotate_mask(ElementMask m, int j, int ground);
ElementMask element_mask(std::initializer_list<int> elements);
std::vector<int> mask_elements(ElementMask m);
std::string mask_to_string(ElementMask m);

/// Immutable per-k tables. Obtain through Level::of(k); instances live for
/// the whole program and are safe to share between threads.
class Level {
 public:
  static const Level& of(int k);

  int k() const { return k_; }
  int ground() const { return ground_; }
  ElementMask full_mask() const { return (ElementMask{1} << ground_) - 1; }
  std::size_t size() const { return vertices_.size(); }

  const Vertex& vertex(VertexId id) const { return vertices_[id]; }
  ElementMask mask(VertexId id) const { return masks_[id]; }
  bool stable(VertexId id) const { return stable_[id] != 0; }
  VertexId id(const Vertex& v) const;
  std::optional<VertexId> id_of_mask(ElementMask m) const;
  VertexId id_of(int a, int b, int c) const;
  VertexId rotate(VertexId id, int j) const;

  /// Ids of triples contained in the element set m (all, or stable only),
  /// as a 256-bit membership word array.
  const std::array<std::uint64_t, 4>& triples_inside(ElementMask m) const {
    return inside_[m];
  }
  const std::array<std::uint64_t, 4>& stable_triples_inside(ElementMask m) const {
    return inside_stable_[m];
  }

 private:
  explicit Level(int k);

  int k_;
  int ground_;
  std::vector<Vertex> vertices_;
  std::vector<ElementMask> masks_;
  std::vector<std::uint8_t> stable_;
  std::vector<int> mask_to_id_;
  std::vector<VertexId> rotation_;  // id * ground + j
  std::vector<std::array<std::uint64_t, 4>> inside_;
  std::vector<std::array<std::uint64_t, 4>> inside_stable_;
};

}  // namespace nkg
