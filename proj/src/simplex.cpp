#include "nkg/simplex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nkg {

Simplex Simplex::from_ids(std::span<const VertexId> ids) {
  Simplex s;
  for (VertexId id : ids) s.insert(id);
  return s;
}

VertexId Simplex::front() const {
  for (int w = 0; w < 4; ++w)
    if (words_[w]) return static_cast<VertexId>(w * 64 + std::countr_zero(words_[w]));
  return 0;
}

std::vector<VertexId> Simplex::members() const {
  std::vector<VertexId> out;
  out.reserve(size());
  for_each([&](VertexId id) { out.push_back(id); });
  return out;
}

Simplex Simplex::operator|(const Simplex& o) const {
  Words w;
  for (int i = 0; i < 4; ++i) w[i] = words_[i] | o.words_[i];
  return Simplex(w);
}

Simplex Simplex::operator&(const Simplex& o) const {
  Words w;
  for (int i = 0; i < 4; ++i) w[i] = words_[i] & o.words_[i];
  return Simplex(w);
}

Simplex Simplex::operator^(const Simplex& o) const {
  Words w;
  for (int i = 0; i < 4; ++i) w[i] = words_[i] ^ o.words_[i];
  return Simplex(w);
}

Simplex Simplex::minus(const Simplex& o) const {
  Words w;
  for (int i = 0; i < 4; ++i) w[i] = words_[i] & ~o.words_[i];
  return Simplex(w);
}

bool canonical_less(const Simplex& a, const Simplex& b) {
  const int sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  // Equal sizes: the set owning the lowest differing id comes first.
  const Simplex diff = a ^ b;
  if (diff.empty()) return false;
  return a.contains(diff.front());
}

std::vector<Simplex> sorted(const SimplexSet& cells) {
  std::vector<Simplex> out(cells.begin(), cells.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

ElementMask support_mask(const Level& level, const Simplex& s) {
  ElementMask m = 0;
  s.for_each([&](VertexId id) { m |= level.mask(id); });
  return m;
}

ElementMask complement_mask(const Level& level, const Simplex& s) {
  return level.full_mask() & ~support_mask(level, s);
}

bool has_unstable(const Level& level, const Simplex& s) {
  bool found = false;
  s.for_each([&](VertexId id) { found = found || !level.stable(id); });
  return found;
}

VertexId least_unstable(const Level& level, const Simplex& s) {
  for (VertexId id : s.members())
    if (!level.stable(id)) return id;
  throw std::domain_error("simplex has no unstable member");
}

Simplex rotate(const Level& level, const Simplex& s, int j) {
  Simplex out;
  s.for_each([&](VertexId id) { out.insert(level.rotate(id, j)); });
  return out;
}

Simplex embed(const Simplex& s, const Level& from, const Level& to) {
  Simplex out;
  s.for_each([&](VertexId id) {
    auto target = to.id_of_mask(from.mask(id));
    if (!target) {
      throw std::domain_error("triple " + from.vertex(id).to_string() + " does not exist at k=" +
                              std::to_string(to.k()));
    }
    out.insert(*target);
  });
  return out;
}

std::string to_string(const Level& level, const Simplex& s) {
  std::string out;
  s.for_each([&](VertexId id) {
    if (!out.empty()) out += ' ';
    out += level.vertex(id).to_string();
  });
  return out;
}

Simplex parse_simplex(const Level& level, const std::string& text) {
  std::stringstream ss(text);
  std::string token;
  Simplex s;
  while (ss >> token) s.insert(level.id(parse_vertex(level.k(), token)));
  return s;
}

}  // namespace nkg
