#ifndef WEGNERLAB_GEOMETRY_HPP
#define WEGNERLAB_GEOMETRY_HPP

#include <cstdint>
#include <vector>

namespace wegnerlab {

/// A point of the integer lattice Z^d. Comparison is lexicographic, which is
/// also the fixed enumeration order used throughout the library.
using LatticePoint = std::vector<int>;

/// Centered cube Q_s = {-s, ..., s}^d.
struct BoxSpec {
  int dim = 1;
  int radius = 0;  // half-side s

  int side() const { return 2 * radius + 1; }
  std::int64_t volume() const {
    std::int64_t v = 1;
    for (int i = 0; i < dim; ++i) v *= side();
    return v;
  }
};

/// Enumerated cube with bijective point <-> ordinal maps.
///
/// Order is lexicographic over coordinates (first coordinate slowest), so
/// index 0 is (-s, ..., -s) and the last index is (s, ..., s).
class Box {
 public:
  explicit Box(BoxSpec spec);

  const BoxSpec& spec() const { return spec_; }
  std::int64_t size() const { return size_; }

  bool contains(const LatticePoint& p) const;
  LatticePoint point_at(std::int64_t index) const;
  std::int64_t index_of(const LatticePoint& p) const;

 private:
  BoxSpec spec_;
  std::int64_t size_;
};

/// All points of Q_s in lexicographic order.
std::vector<LatticePoint> enumerate_box(const BoxSpec& box);

/// The periodizing projection pi onto the centered cube Q_s: every lattice
/// point is mapped to its unique representative modulo the sub-lattice
/// Gamma = (2s+1) Z^d.
struct TorusProjection {
  int dim = 1;
  int radius = 0;

  int period() const { return 2 * radius + 1; }

  /// Coordinate-wise centered modular reduction; pi(m) - m lies in Gamma and
  /// pi is idempotent.
  LatticePoint project(const LatticePoint& m) const;

  /// Projection of a single coordinate.
  int project_coord(int x) const;
};

/// All points of m + (2s+1) Z^d with max-norm at most `radius`.
std::vector<LatticePoint> offsets_in_sublattice(const TorusProjection& pi,
                                                const LatticePoint& m,
                                                int radius);

/// Max-norm of a lattice point.
int max_norm(const LatticePoint& p);

}  // namespace wegnerlab

#endif  // WEGNERLAB_GEOMETRY_HPP
