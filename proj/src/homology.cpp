#include "nkg/homology.hpp"

#include <future>
#include <stdexcept>

namespace nkg {

IntegerMatrix boundary_matrix(const std::vector<Simplex>& lower, const std::vector<Simplex>& upper) {
  SimplexMap<std::size_t> row;
  row.reserve(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) row.emplace(lower[i], i);
  IntegerMatrix m(lower.size(), upper.size());
  for (std::size_t c = 0; c < upper.size(); ++c) {
    int i = 0;
    upper[c].for_each([&](VertexId v) {
      auto it = row.find(upper[c].without(v));
      if (it != row.end()) m.add(it->second, c, (i % 2 == 0) ? 1 : -1);
      ++i;
    });
  }
  return m;
}

IntegerMatrix boundary_matrix(const SimplicialComplex& complex, int d, bool augmented) {
  if (d < 0) throw std::invalid_argument("boundary_matrix: negative dimension");
  const auto& upper = complex.faces(d);
  if (d == 0) {
    IntegerMatrix m(augmented ? 1 : 0, upper.size());
    if (augmented)
      for (std::size_t c = 0; c < upper.size(); ++c) m.add(0, c, 1);
    return m;
  }
  return boundary_matrix(complex.faces(d - 1), upper);
}

bool BettiReport::torsion_free() const {
  for (const auto& t : torsion)
    if (!t.empty()) return false;
  return true;
}

namespace {

struct BandResult {
  SNFResult snf;
  bool mod_p_agrees = true;
};

BandResult analyse(const IntegerMatrix& m) {
  BandResult r;
  r.snf = smith_normal_form(m);
  for (std::uint32_t p : kCheckPrimes)
    if (rank_mod_p(m, p) != r.snf.rank()) r.mod_p_agrees = false;
  return r;
}

// Matrices for d = 0..max_dim+1 are built up front; the SNFs run concurrently.
BettiReport assemble(std::vector<IntegerMatrix> maps, std::vector<std::size_t> cells, int max_dim) {
  std::vector<std::future<BandResult>> jobs;
  for (const IntegerMatrix& m : maps)
    jobs.push_back(std::async(std::launch::async, [&m] { return analyse(m); }));
  std::vector<BandResult> bands;
  for (auto& j : jobs) bands.push_back(j.get());

  BettiReport rep;
  for (const BandResult& b : bands) {
    rep.boundary_rank.push_back(b.snf.rank());
    rep.mod_p_agrees = rep.mod_p_agrees && b.mod_p_agrees;
  }
  for (int d = 0; d <= max_dim; ++d) {
    rep.cells.push_back(cells[d]);
    rep.betti.push_back(static_cast<long long>(cells[d]) -
                        static_cast<long long>(rep.boundary_rank[d]) -
                        static_cast<long long>(rep.boundary_rank[d + 1]));
    rep.torsion.push_back(bands[d + 1].snf.torsion());
  }
  return rep;
}

}  // namespace

BettiReport betti(const SimplicialComplex& complex, int max_dim, bool reduced) {
  if (max_dim < 0) throw std::invalid_argument("betti: negative max_dim");
  std::vector<IntegerMatrix> maps;
  std::vector<std::size_t> cells;
  for (int d = 0; d <= max_dim + 1; ++d) {
    maps.push_back(boundary_matrix(complex, d, reduced));
    cells.push_back(complex.face_count(d));
  }
  return assemble(std::move(maps), std::move(cells), max_dim);
}

BettiReport relative_betti(const SimplicialComplex& x, const SimplicialComplex& a, int max_dim) {
  if (max_dim < 0) throw std::invalid_argument("relative_betti: negative max_dim");
  if (!a.is_subcomplex_of(x)) throw std::domain_error("relative_betti: A is not a subcomplex of X");
  std::vector<std::vector<Simplex>> bands;
  for (int d = 0; d <= max_dim + 1; ++d) {
    std::vector<Simplex> outside;
    for (const Simplex& s : x.faces(d))
      if (!a.is_face(s)) outside.push_back(s);
    bands.push_back(std::move(outside));
  }
  std::vector<IntegerMatrix> maps;
  std::vector<std::size_t> cells;
  for (int d = 0; d <= max_dim + 1; ++d) {
    maps.push_back(d == 0 ? IntegerMatrix(0, bands[0].size()) : boundary_matrix(bands[d - 1], bands[d]));
    cells.push_back(bands[d].size());
  }
  return assemble(std::move(maps), std::move(cells), max_dim);
}

}  // namespace nkg
