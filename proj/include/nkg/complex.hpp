#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "nkg/graph.hpp"
#include "nkg/simplex.hpp"

namespace nkg {

/// C_sigma and S_sigma as element masks over [k+6].
struct ComplementSet {
  ElementMask complement = 0;
  ElementMask support = 0;
};

ComplementSet complement_set(const Level& level, const Simplex& sigma);

/// A simplicial complex given by its inclusion-maximal faces. Face lists
/// are materialised one dimension at a time, on demand, and cached.
/// Queries are safe from several threads.
class SimplicialComplex {
 public:
  /// Deduplicates `generators` and drops every set contained in another.
  SimplicialComplex(const Level& level, std::vector<Simplex> generators);

  const Level& level() const { return *level_; }
  const std::vector<Simplex>& maximal_faces() const { return maximal_; }
  /// -1 for the empty complex.
  int dimension() const;
  bool empty() const { return maximal_.empty(); }

  bool is_face(const Simplex& sigma) const;
  /// All distinct d-faces in canonical order; empty above the dimension.
  const std::vector<Simplex>& faces(int d) const;
  std::size_t face_count(int d) const { return faces(d).size(); }
  /// Every face of dimension <= max_dim.
  SimplexSet face_set(int max_dim) const;

  /// Calls f(sigma, tau) for each tau of dimension d and each facet sigma.
  void for_each_containment(int d,
                            const std::function<void(const Simplex&, const Simplex&)>& f) const;
  std::vector<std::pair<Simplex, Simplex>> containment_pairs(int d) const;

  bool is_subcomplex_of(const SimplicialComplex& other) const;

  /// One face per line, vertices space separated.
  void export_maximal(std::ostream& out) const;
  void export_band(std::ostream& out, int d) const;

 private:
  const Level* level_;
  std::vector<Simplex> maximal_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<std::vector<Simplex>>> bands_;
};

/// N(G): maximal faces are the inclusion-maximal neighbourhoods N(v) of the
/// non-isolated vertices.
SimplicialComplex neighborhood_complex(const KneserGraph& graph);

/// Calls f on every (size)-subset of the members of `sigma`.
void for_each_subset_of_size(const Simplex& sigma, int size,
                             const std::function<void(const Simplex&)>& f);

}  // namespace nkg
