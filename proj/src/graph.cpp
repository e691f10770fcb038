#include "nkg/graph.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace nkg {

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kKneser:
      return "KG";
    case GraphKind::kS:
      return "S";
    case GraphKind::kStable:
      return "SG";
  }
  return "?";
}

GraphKind parse_graph_kind(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "kg") return GraphKind::kKneser;
  if (t == "s") return GraphKind::kS;
  if (t == "sg") return GraphKind::kStable;
  throw std::invalid_argument("unknown graph kind '" + text + "' (expected kg, s or sg)");
}

KneserGraph::KneserGraph(GraphKind kind, int k) : kind_(kind), level_(&Level::of(k)) {
  for (std::size_t id = 0; id < level_->size(); ++id) {
    const auto v = static_cast<VertexId>(id);
    if (kind_ != GraphKind::kStable || level_->stable(v)) vertices_.push_back(v);
  }
}

bool KneserGraph::contains(VertexId v) const {
  return v < level_->size() && (kind_ != GraphKind::kStable || level_->stable(v));
}

bool KneserGraph::adjacent(VertexId u, VertexId v) const {
  if (!contains(u) || !contains(v)) {
    throw std::domain_error("vertex outside " + to_string(kind_) + "_{3," + std::to_string(k()) +
                            "}");
  }
  if ((level_->mask(u) & level_->mask(v)) != 0) return false;
  if (kind_ == GraphKind::kS) return level_->stable(u) || level_->stable(v);
  return true;
}

Simplex KneserGraph::neighborhood_unchecked(const Simplex& a) const {
  const ElementMask free = complement_mask(*level_, a);
  const bool need_stable =
      kind_ == GraphKind::kStable || (kind_ == GraphKind::kS && has_unstable(*level_, a));
  return Simplex(need_stable ? level_->stable_triples_inside(free) : level_->triples_inside(free));
}

Simplex KneserGraph::neighborhood(const Simplex& a) const {
  a.for_each([&](VertexId id) {
    if (!contains(id)) {
      throw std::domain_error("vertex " + level_->vertex(id).to_string() + " outside " +
                              to_string(kind_) + "_{3," + std::to_string(k()) + "}");
    }
  });
  return neighborhood_unchecked(a);
}

std::size_t KneserGraph::edge_count() const {
  std::size_t edges = 0;
  for (VertexId v : vertices_) edges += neighborhood_unchecked(Simplex{v}).size();
  return edges / 2;
}

void KneserGraph::export_edges(std::ostream& out) const {
  for (VertexId u : vertices_) {
    neighborhood_unchecked(Simplex{u}).for_each([&](VertexId v) {
      if (u < v) out << level_->vertex(u).to_string() << ' ' << level_->vertex(v).to_string() << '\n';
    });
  }
}

std::vector<Vertex> vertices(GraphKind kind, int k) {
  KneserGraph g(kind, k);
  std::vector<Vertex> out;
  for (VertexId id : g.vertices()) out.push_back(g.level().vertex(id));
  return out;
}

bool adjacent(GraphKind kind, const Vertex& u, const Vertex& v) {
  if (u.k != v.k) throw std::domain_error("vertices from different k");
  KneserGraph g(kind, u.k);
  return g.adjacent(g.level().id(u), g.level().id(v));
}

std::vector<Vertex> neighborhood(GraphKind kind, std::span<const Vertex> a) {
  if (a.empty()) throw std::domain_error("neighborhood of the empty set");
  KneserGraph g(kind, a.front().k);
  Simplex s;
  for (const Vertex& v : a) s.insert(g.level().id(v));
  std::vector<Vertex> out;
  g.neighborhood(s).for_each([&](VertexId id) { out.push_back(g.level().vertex(id)); });
  return out;
}

}  // namespace nkg
