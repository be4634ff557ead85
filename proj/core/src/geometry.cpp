#include "wegnerlab/geometry.hpp"

#include <cmath>
#include <cstdlib>

#include "wegnerlab/errors.hpp"

namespace wegnerlab {

Box::Box(BoxSpec spec) : spec_(spec), size_(spec.volume()) {
  if (spec_.dim < 1) throw InvalidGeometry("Box: dimension must be positive");
  if (spec_.radius < 0) throw InvalidGeometry("Box: radius must be >= 0");
}

bool Box::contains(const LatticePoint& p) const {
  if (static_cast<int>(p.size()) != spec_.dim) return false;
  for (int c : p)
    if (c < -spec_.radius || c > spec_.radius) return false;
  return true;
}

LatticePoint Box::point_at(std::int64_t index) const {
  if (index < 0 || index >= size_)
    throw InvalidGeometry("Box::point_at: index out of range");
  LatticePoint p(spec_.dim);
  const int side = spec_.side();
  for (int i = spec_.dim - 1; i >= 0; --i) {
    p[i] = static_cast<int>(index % side) - spec_.radius;
    index /= side;
  }
  return p;
}

std::int64_t Box::index_of(const LatticePoint& p) const {
  if (!contains(p)) throw InvalidGeometry("Box::index_of: point outside box");
  const int side = spec_.side();
  std::int64_t index = 0;
  for (int i = 0; i < spec_.dim; ++i)
    index = index * side + (p[i] + spec_.radius);
  return index;
}

std::vector<LatticePoint> enumerate_box(const BoxSpec& spec) {
  Box box(spec);
  std::vector<LatticePoint> points;
  points.reserve(static_cast<std::size_t>(box.size()));
  for (std::int64_t i = 0; i < box.size(); ++i) points.push_back(box.point_at(i));
  return points;
}

int TorusProjection::project_coord(int x) const {
  const int p = period();
  int r = x % p;
  if (r < 0) r += p;
  if (r > radius) r -= p;
  return r;
}

LatticePoint TorusProjection::project(const LatticePoint& m) const {
  LatticePoint out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = project_coord(m[i]);
  return out;
}

std::vector<LatticePoint> offsets_in_sublattice(const TorusProjection& pi,
                                                const LatticePoint& m,
                                                int radius) {
  if (radius < 0) throw InvalidGeometry("offsets_in_sublattice: radius < 0");
  const int p = pi.period();
  // Per-coordinate ranges of t with |m_i + p t| <= radius.
  std::vector<std::vector<int>> coords(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const int lo = static_cast<int>(std::ceil((-radius - m[i]) / double(p)));
    const int hi = static_cast<int>(std::floor((radius - m[i]) / double(p)));
    for (int t = lo; t <= hi; ++t) coords[i].push_back(m[i] + p * t);
  }
  std::vector<LatticePoint> out;
  LatticePoint cur(m.size());
  // Cartesian product in lexicographic order.
  std::vector<std::size_t> idx(m.size(), 0);
  for (const auto& c : coords)
    if (c.empty()) return out;
  while (true) {
    for (std::size_t i = 0; i < m.size(); ++i) cur[i] = coords[i][idx[i]];
    out.push_back(cur);
    std::size_t i = m.size();
    while (i > 0) {
      --i;
      if (++idx[i] < coords[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

int max_norm(const LatticePoint& p) {
  int n = 0;
  for (int c : p) n = std::max(n, std::abs(c));
  return n;
}

}  // namespace wegnerlab
