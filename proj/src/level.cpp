#include "nkg/level.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace nkg {

int wrap(int element, int ground) {
  int r = (element - 1) % ground;
  if (r < 0) r += ground;
  return r + 1;
}

ElementMask element_mask(std::initializer_list<int> elements) {
  ElementMask m = 0;
  for (int e : elements) m |= ElementMask{1} << (e - 1);
  return m;
}

std::vector<int> mask_elements(ElementMask m) {
  std::vector<int> out;
  while (m) {
    int b = std::countr_zero(m);
    out.push_back(b + 1);
    m &= m - 1;
  }
  return out;
}

std::string mask_to_string(ElementMask m) {
  std::string s = "{";
  bool first = true;
  for (int e : mask_elements(m)) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

ElementMask rotate_mask(ElementMask m, int j, int ground) {
  ElementMask out = 0;
  for (int e : mask_elements(m)) out |= ElementMask{1} << (wrap(e + j, ground) - 1);
  return out;
}

ElementMask Vertex::mask() const {
  return element_mask({elements[0], elements[1], elements[2]});
}

std::string Vertex::to_string() const {
  std::string s;
  for (int i = 0; i < 3; ++i) {
    if (ground() > 9 && i > 0) s += ",";
    s += std::to_string(elements[i]);
  }
  return s;
}

Vertex make_vertex(int k, int a, int b, int c) {
  if (k < 0) throw std::domain_error("family parameter k must be nonnegative");
  std::array<int, 3> e{a, b, c};
  std::sort(e.begin(), e.end());
  if (e[0] < 1 || e[2] > k + 6 || e[0] == e[1] || e[1] == e[2]) {
    throw std::domain_error("not a 3-subset of [k+6]: " + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c));
  }
  return Vertex{e, k};
}

Vertex parse_vertex(int k, const std::string& text) {
  std::vector<int> parts;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(std::stoi(item));
  } else {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw std::domain_error("bad vertex literal: " + text);
      parts.push_back(ch - '0');
    }
  }
  if (parts.size() != 3) throw std::domain_error("bad vertex literal: " + text);
  return make_vertex(k, parts[0], parts[1], parts[2]);
}

bool is_stable(const Vertex& v) {
  const int n = v.ground();
  const ElementMask m = v.mask();
  for (int t = 1; t <= n; ++t) {
    ElementMask pair = element_mask({t, wrap(t + 1, n)});
    if ((m & pair) == pair) return false;
  }
  return true;
}

Vertex rotate(const Vertex& v, int j) {
  const int n = v.ground();
  return make_vertex(v.k, wrap(v.elements[0] + j, n), wrap(v.elements[1] + j, n),
                     wrap(v.elements[2] + j, n));
}

UnstableRep unstable_rep(const Vertex& v) {
  if (is_stable(v)) throw std::domain_error("unstable_rep on stable vertex " + v.to_string());
  const int n = v.ground();
  for (int j = 0; j <= n - 1; ++j) {
    for (int ell = 3; ell <= n - 1; ++ell) {
      if (rotate(make_vertex(v.k, 1, 2, ell), j) == v) return {ell, j};
    }
  }
  throw std::logic_error("no (ell, j) representation for " + v.to_string());
}

Level::Level(int k) : k_(k), ground_(k + 6) {
  if (k < 0 || k > kMaxParameter) {
    throw std::domain_error("k=" + std::to_string(k) + " outside supported range [0, " +
                            std::to_string(kMaxParameter) + "]");
  }
  const int n = ground_;
  mask_to_id_.assign(std::size_t{1} << n, -1);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) {
        Vertex v{{a, b, c}, k};
        mask_to_id_[v.mask()] = static_cast<int>(vertices_.size());
        vertices_.push_back(v);
        masks_.push_back(v.mask());
        stable_.push_back(is_stable(v) ? 1 : 0);
      }
  rotation_.resize(vertices_.size() * n);
  for (std::size_t id = 0; id < vertices_.size(); ++id)
    for (int j = 0; j < n; ++j)
      rotation_[id * n + j] =
          static_cast<VertexId>(mask_to_id_[rotate_mask(masks_[id], j, n)]);
  inside_.assign(std::size_t{1} << n, {});
  inside_stable_.assign(std::size_t{1} << n, {});
  for (std::size_t m = 0; m < inside_.size(); ++m) {
    for (std::size_t id = 0; id < vertices_.size(); ++id) {
      if ((masks_[id] & ~static_cast<ElementMask>(m)) != 0) continue;
      inside_[m][id >> 6] |= std::uint64_t{1} << (id & 63);
      if (stable_[id]) inside_stable_[m][id >> 6] |= std::uint64_t{1} << (id & 63);
    }
  }
}

const Level& Level::of(int k) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Level>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, std::unique_ptr<Level>(new Level(k))).first;
  return *it->second;
}

VertexId Level::id(const Vertex& v) const {
  if (v.k != k_) throw std::domain_error("vertex " + v.to_string() + " belongs to another k");
  return static_cast<VertexId>(mask_to_id_[v.mask()]);
}

std::optional<VertexId> Level::id_of_mask(ElementMask m) const {
  if (m >= mask_to_id_.size() || mask_to_id_[m] < 0) return std::nullopt;
  return static_cast<VertexId>(mask_to_id_[m]);
}

VertexId Level::id_of(int a, int b, int c) const { return id(make_vertex(k_, a, b, c)); }

VertexId Level::rotate(VertexId id, int j) const {
  return rotation_[static_cast<std::size_t>(id) * ground_ + (wrap(j + 1, ground_) - 1)];
}

}  // namespace nkg
