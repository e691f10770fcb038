#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nkg/level.hpp"
#include "nkg/simplex.hpp"

namespace nkg {

/// KG_{3,k}, S_{3,k} (edges with at least one stable endpoint) and the
/// stable Kneser graph SG_{3,k}.
enum class GraphKind { kKneser, kS, kStable };

std::string to_string(GraphKind kind);
/// Accepts "kg", "s", "sg" (case-insensitive).
GraphKind parse_graph_kind(const std::string& text);

/// Immutable graph on the triples of [k+6].
class KneserGraph {
 public:
  KneserGraph(GraphKind kind, int k);

  GraphKind kind() const { return kind_; }
  const Level& level() const { return *level_; }
  int k() const { return level_->k(); }

  /// Lexicographic; SG keeps only the stable triples.
  const std::vector<VertexId>& vertices() const { return vertices_; }
  bool contains(VertexId v) const;

  /// Throws std::domain_error when a vertex is outside the family.
  bool adjacent(VertexId u, VertexId v) const;

  /// Common neighbours of every member of `a` (N(v) for a single vertex).
  /// Members outside the family are a domain error.
  Simplex neighborhood(const Simplex& a) const;
  /// Same as neighborhood(a), without membership checks; callers guarantee
  /// `a` lies in the family.
  Simplex neighborhood_unchecked(const Simplex& a) const;

  std::size_t edge_count() const;

  /// One edge "u v" per line, u < v, in lexicographic order.
  void export_edges(std::ostream& out) const;

 private:
  GraphKind kind_;
  const Level* level_;
  std::vector<VertexId> vertices_;
};

std::vector<Vertex> vertices(GraphKind kind, int k);
bool adjacent(GraphKind kind, const Vertex& u, const Vertex& v);
std::vector<Vertex> neighborhood(GraphKind kind, std::span<const Vertex> a);

}  // namespace nkg
