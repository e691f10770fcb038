#include "nkg/complex.hpp"

#include <algorithm>
#include <ostream>

namespace nkg {

ComplementSet complement_set(const Level& level, const Simplex& sigma) {
  const ElementMask support = support_mask(level, sigma);
  return {level.full_mask() & ~support, support};
}

SimplicialComplex::SimplicialComplex(const Level& level, std::vector<Simplex> generators)
    : level_(&level) {
  std::erase_if(generators, [](const Simplex& s) { return s.empty(); });
  // Larger sets first, so a set is only compared against possible supersets.
  std::sort(generators.begin(), generators.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return canonical_less(a, b);
  });
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (const Simplex& g : generators) {
    bool dominated = false;
    for (const Simplex& m : maximal_) {
      if (g.subset_of(m)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal_.push_back(g);
  }
  std::sort(maximal_.begin(), maximal_.end(), canonical_less);
}

int SimplicialComplex::dimension() const {
  int d = -1;
  for (const Simplex& m : maximal_) d = std::max(d, m.dim());
  return d;
}

bool SimplicialComplex::is_face(const Simplex& sigma) const {
  if (sigma.empty()) return false;
  for (const Simplex& m : maximal_)
    if (sigma.subset_of(m)) return true;
  return false;
}

void for_each_subset_of_size(const Simplex& sigma, int size,
                             const std::function<void(const Simplex&)>& f) {
  const std::vector<VertexId> members = sigma.members();
  const int m = static_cast<int>(members.size());
  if (size < 0 || size > m) return;
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    Simplex s;
    for (int i : idx) s.insert(members[i]);
    f(s);
    int i = size - 1;
    while (i >= 0 && idx[i] == m - size + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

const std::vector<Simplex>& SimplicialComplex::faces(int d) const {
  std::lock_guard lock(mu_);
  auto it = bands_.find(d);
  if (it != bands_.end()) return *it->second;
  SimplexSet seen;
  if (d >= 0) {
    for (const Simplex& m : maximal_) {
      if (m.size() < d + 1) continue;
      for_each_subset_of_size(m, d + 1, [&](const Simplex& s) { seen.insert(s); });
    }
  }
  auto band = std::make_unique<std::vector<Simplex>>(sorted(seen));
  return *bands_.emplace(d, std::move(band)).first->second;
}

SimplexSet SimplicialComplex::face_set(int max_dim) const {
  SimplexSet out;
  for (int d = 0; d <= max_dim; ++d)
    for (const Simplex& s : faces(d)) out.insert(s);
  return out;
}

void SimplicialComplex::for_each_containment(
    int d, const std::function<void(const Simplex&, const Simplex&)>& f) const {
  if (d < 1) return;
  for (const Simplex& tau : faces(d)) tau.for_each([&](VertexId v) { f(tau.without(v), tau); });
}

std::vector<std::pair<Simplex, Simplex>> SimplicialComplex::containment_pairs(int d) const {
  std::vector<std::pair<Simplex, Simplex>> out;
  for_each_containment(d, [&](const Simplex& s, const Simplex& t) { out.emplace_back(s, t); });
  return out;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  return std::all_of(maximal_.begin(), maximal_.end(),
                     [&](const Simplex& m) { return other.is_face(m); });
}

void SimplicialComplex::export_maximal(std::ostream& out) const {
  for (const Simplex& m : maximal_) out << to_string(*level_, m) << '\n';
}

void SimplicialComplex::export_band(std::ostream& out, int d) const {
  for (const Simplex& s : faces(d)) out << to_string(*level_, s) << '\n';
}

SimplicialComplex neighborhood_complex(const KneserGraph& graph) {
  std::vector<Simplex> generators;
  for (VertexId v : graph.vertices()) {
    Simplex n = graph.neighborhood_unchecked(Simplex{v});
    if (!n.empty()) generators.push_back(n);
  }
  return SimplicialComplex(graph.level(), std::move(generators));
}

}  // namespace nkg
