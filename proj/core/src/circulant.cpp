#include "wegnerlab/circulant.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wegnerlab/errors.hpp"
#include "dft.hpp"

namespace wegnerlab {

namespace {

/// Reorders a vector indexed by the enumeration of Q_s into the row-major
/// [0, P)^d grid layout used by the DFT (frequency n and its centered
/// representative refer to the same coset).
std::vector<std::complex<double>> to_grid_order(
    const Box& box, const std::vector<std::complex<double>>& centered) {
  const int d = box.spec().dim;
  const int P = box.spec().side();
  const int s = box.spec().radius;
  std::vector<std::complex<double>> grid(centered.size());
  LatticePoint c(d);
  std::vector<int> g(d, 0);
  for (std::int64_t flat = 0; flat < box.size(); ++flat) {
    for (int i = 0; i < d; ++i) c[i] = g[i] > s ? g[i] - P : g[i];
    grid[flat] = centered[box.index_of(c)];
    for (int i = d - 1; i >= 0; --i) {
      if (++g[i] < P) break;
      g[i] = 0;
    }
  }
  return grid;
}

}  // namespace

CirculantOperator::CirculantOperator(int dim, int s,
                                     std::vector<double> generating)
    : box_(BoxSpec{dim, s}),
      projection_{dim, s},
      gen_(std::move(generating)) {
  if (static_cast<std::int64_t>(gen_.size()) != box_.size())
    throw InvalidGeometry("CirculantOperator: generating size mismatch");
  // lambda_n = sum_m gen_m exp(-2*pi*i <n,m> / P), evaluated with a root
  // table so the n=0 eigenvalue is an exact coefficient sum.
  const int P = period();
  std::vector<std::complex<double>> roots(P);
  for (int q = 0; q < P; ++q) {
    const double phase = -2.0 * std::numbers::pi * q / P;
    roots[q] = {std::cos(phase), std::sin(phase)};
  }
  eigenvalues_.assign(gen_.size(), 0.0);
  for (std::int64_t ni = 0; ni < box_.size(); ++ni) {
    const LatticePoint n = box_.point_at(ni);
    std::complex<double> acc = 0.0;
    for (std::int64_t mi = 0; mi < box_.size(); ++mi) {
      if (gen_[mi] == 0.0) continue;
      const LatticePoint m = box_.point_at(mi);
      std::int64_t dot = 0;
      for (int i = 0; i < dim; ++i) dot += std::int64_t(n[i]) * m[i];
      acc += gen_[mi] * roots[static_cast<int>(((dot % P) + P) % P)];
    }
    eigenvalues_[ni] = acc;
  }
}

CirculantOperator CirculantOperator::from_symbol(const CoefficientField& coeffs,
                                                 int s) {
  if (s < coeffs.support_radius())
    throw InvalidGeometry(
        "CirculantOperator::from_symbol: cube radius smaller than the "
        "coefficient support");
  Box box(BoxSpec{coeffs.dim(), s});
  std::vector<double> gen(box.size(), 0.0);
  for (const auto& [k, v] : coeffs.values()) gen[box.index_of(k)] = v;
  return CirculantOperator(coeffs.dim(), s, std::move(gen));
}

double CirculantOperator::generating_at(const LatticePoint& m) const {
  return gen_[box_.index_of(projection_.project(m))];
}

double CirculantOperator::entry(const LatticePoint& j,
                                const LatticePoint& k) const {
  LatticePoint diff(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) diff[i] = j[i] - k[i];
  return generating_at(diff);
}

std::vector<double> CirculantOperator::apply(const std::vector<double>& x) const {
  if (static_cast<std::int64_t>(x.size()) != box_.size())
    throw InvalidGeometry("CirculantOperator::apply: vector size mismatch");
  std::vector<double> y(x.size(), 0.0);
  LatticePoint sum(dim());
  for (std::int64_t mi = 0; mi < box_.size(); ++mi) {
    const double c = gen_[mi];
    if (c == 0.0) continue;
    const LatticePoint m = box_.point_at(mi);
    for (std::int64_t ki = 0; ki < box_.size(); ++ki) {
      const LatticePoint k = box_.point_at(ki);
      for (int i = 0; i < dim(); ++i)
        sum[i] = projection_.project_coord(k[i] + m[i]);
      y[box_.index_of(sum)] += c * x[ki];
    }
  }
  return y;
}

Eigen::MatrixXd CirculantOperator::to_dense() const {
  const auto n = box_.size();
  Eigen::MatrixXd M(n, n);
  for (std::int64_t ji = 0; ji < n; ++ji) {
    const LatticePoint j = box_.point_at(ji);
    for (std::int64_t ki = 0; ki < n; ++ki)
      M(ji, ki) = entry(j, box_.point_at(ki));
  }
  return M;
}

double CirculantOperator::column_sum_norm() const {
  double s = 0.0;
  for (double c : gen_) s += std::abs(c);
  return s;
}

double CirculantOperator::min_eigenvalue_modulus() const {
  double m = std::abs(eigenvalues_[0]);
  for (const auto& ev : eigenvalues_) m = std::min(m, std::abs(ev));
  return m;
}

std::string CirculantOperator::to_text() const {
  std::ostringstream out;
  out.precision(17);
  const auto n = box_.size();
  for (std::int64_t ji = 0; ji < n; ++ji) {
    const LatticePoint j = box_.point_at(ji);
    for (std::int64_t ki = 0; ki < n; ++ki) {
      if (ki) out << ' ';
      out << entry(j, box_.point_at(ki));
    }
    out << '\n';
  }
  return out.str();
}

CirculantOperator build_circulant(const CoefficientField& alpha, int l, int R) {
  if (l <= R)
    throw InvalidGeometry("build_circulant: requires l > R");
  if (R < alpha.support_radius())
    throw InvalidGeometry(
        "build_circulant: R must be at least the support radius of alpha");
  return CirculantOperator::from_symbol(alpha, l + R);
}

bool verify_rectangle_condition(const CirculantOperator& A,
                                const CoefficientField& alpha, int l, int r,
                                int R) {
  if (R != r + alpha.support_radius())
    throw InvalidGeometry("verify_rectangle_condition: requires R = r + D");
  if (A.radius() != l + R)
    throw InvalidGeometry(
        "verify_rectangle_condition: circulant is not indexed by Q_{l+R}");
  const Box rows(BoxSpec{alpha.dim(), l + r});
  const Box cols(BoxSpec{alpha.dim(), l + R});
  LatticePoint diff(alpha.dim());
  for (std::int64_t ji = 0; ji < rows.size(); ++ji) {
    const LatticePoint j = rows.point_at(ji);
    for (std::int64_t ki = 0; ki < cols.size(); ++ki) {
      const LatticePoint k = cols.point_at(ki);
      for (int i = 0; i < alpha.dim(); ++i) diff[i] = j[i] - k[i];
      if (A.entry(j, k) != alpha.at(diff)) return false;
    }
  }
  return true;
}

CirculantOperator invert_circulant(const CirculantOperator& A, double floor) {
  const auto& eigs = A.dft_eigenvalues();
  double max_mod = 0.0;
  for (const auto& ev : eigs) max_mod = std::max(max_mod, std::abs(ev));
  const double effective_floor = floor < 0.0 ? 1e-12 * max_mod : floor;
  for (const auto& ev : eigs)
    if (std::abs(ev) < effective_floor)
      throw SingularCirculant(
          "invert_circulant: eigenvalue modulus " +
          std::to_string(std::abs(ev)) + " below floor " +
          std::to_string(effective_floor));

  std::vector<std::complex<double>> recip(eigs.size());
  for (std::size_t i = 0; i < eigs.size(); ++i) recip[i] = 1.0 / eigs[i];

  const auto grid = to_grid_order(A.index_box(), recip);
  const std::vector<int> dims(A.dim(), A.period());
  const auto coeffs = internal::inverse_dft(grid, dims);

  // Back from grid layout to the centered enumeration of Q_s.
  const Box& box = A.index_box();
  const int P = A.period();
  const int s = A.radius();
  std::vector<double> gen(box.size(), 0.0);
  LatticePoint c(A.dim());
  std::vector<int> g(A.dim(), 0);
  for (std::int64_t flat = 0; flat < box.size(); ++flat) {
    for (int i = 0; i < A.dim(); ++i) c[i] = g[i] > s ? g[i] - P : g[i];
    gen[box.index_of(c)] = coeffs[flat].real();
    for (int i = A.dim() - 1; i >= 0; --i) {
      if (++g[i] < P) break;
      g[i] = 0;
    }
  }
  return CirculantOperator(A.dim(), s, std::move(gen));
}

CirculantOperator fold_laurent_inverse(const WienerInverse& wiener, int l,
                                       int R) {
  const int s = l + R;
  const Box box(BoxSpec{wiener.dim, s});
  const TorusProjection pi{wiener.dim, s};
  std::vector<double> gen(box.size(), 0.0);
  for (std::int64_t mi = 0; mi < box.size(); ++mi) {
    const LatticePoint m = box.point_at(mi);
    double sum = 0.0;
    for (const auto& p :
         offsets_in_sublattice(pi, m, wiener.truncation_radius))
      sum += wiener.at(p);
    gen[mi] = sum;
  }
  return CirculantOperator(wiener.dim, s, std::move(gen));
}

EtaVariables eta_from_omega(const CirculantOperator& A,
                            const std::vector<double>& omega) {
  return EtaVariables{A.apply(omega)};
}

double column_sum_norm(const CirculantOperator& M) {
  return M.column_sum_norm();
}

}  // namespace wegnerlab
