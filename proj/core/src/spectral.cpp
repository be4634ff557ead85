#include "wegnerlab/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "wegnerlab/errors.hpp"

namespace wegnerlab {

namespace {

constexpr double kPivotTolRel = 1e-10;

int count_dense(const Eigen::MatrixXd& shifted, double tie_tol) {
  // Fallback: eigenvalues of H - E*I, counting those <= 0. Computed
  // eigenvalues sitting within tie_tol of the shift count as <= E, which is
  // the numerically meaningful reading of the half-open convention.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      shifted, Eigen::EigenvaluesOnly);
  const auto& eigs = solver.eigenvalues();
  int count = 0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (eigs[i] <= tie_tol) ++count;
  return count;
}

}  // namespace

int count_below(const Eigen::MatrixXd& H, double E) {
  if (H.rows() != H.cols())
    throw InvalidGeometry("count_below: matrix must be square");
  const int n = static_cast<int>(H.rows());
  if (n == 0) return 0;

  Eigen::MatrixXd shifted = H;
  shifted.diagonal().array() -= E;

  const double scale = H.cwiseAbs().rowwise().sum().maxCoeff();
  const double pivot_tol = kPivotTolRel * std::max(scale, 1.0);

  Eigen::MatrixXd fac = shifted;  // dsytrf overwrites
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, fac.data(),
                                         n, ipiv.data());
  if (info < 0) throw Error("count_below: LAPACKE_dsytrf failed");
  if (info > 0) return count_dense(shifted, pivot_tol);  // singular D block

  int negatives = 0;
  int k = 0;
  while (k < n) {
    if (ipiv[static_cast<std::size_t>(k)] > 0) {
      const double d = fac(k, k);
      if (std::abs(d) < pivot_tol) return count_dense(shifted, pivot_tol);
      if (d < 0.0) ++negatives;
      k += 1;
    } else {
      // 2x2 block [a b; b c]; Bunch-Kaufman picks these indefinite, but the
      // eigenvalues are classified explicitly to be safe.
      const double a = fac(k, k);
      const double b = fac(k + 1, k);
      const double c = fac(k + 1, k + 1);
      const double mean = 0.5 * (a + c);
      const double radius = std::hypot(0.5 * (a - c), b);
      const double ev1 = mean - radius;
      const double ev2 = mean + radius;
      if (std::abs(ev1) < pivot_tol || std::abs(ev2) < pivot_tol)
        return count_dense(shifted, pivot_tol);
      if (ev1 < 0.0) ++negatives;
      if (ev2 < 0.0) ++negatives;
      k += 2;
    }
  }
  return negatives;
}

int count_below(const Hamiltonian& H, double E) {
  return count_below(H.dense(), E);
}

int count_in_interval(const Eigen::MatrixXd& H, double E1, double E2) {
  if (E1 > E2) throw InvalidInterval("count_in_interval: requires E1 <= E2");
  if (E1 == E2) return 0;
  return count_below(H, E2) - count_below(H, E1);
}

int count_in_interval(const Hamiltonian& H, double E1, double E2) {
  return count_in_interval(H.dense(), E1, E2);
}

CountingFunction::CountingFunction(const Eigen::MatrixXd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H,
                                                        Eigen::EigenvaluesOnly);
  eigenvalues_ = solver.eigenvalues();
  std::sort(eigenvalues_.begin(), eigenvalues_.end());
}

CountingFunction::CountingFunction(const Hamiltonian& H)
    : CountingFunction(H.dense()) {}

int CountingFunction::count_below(double E) const {
  return static_cast<int>(
      std::upper_bound(eigenvalues_.begin(), eigenvalues_.end(), E) -
      eigenvalues_.begin());
}

int CountingFunction::count_in(const Interval& I) const {
  if (I.lo > I.hi) throw InvalidInterval("count_in: requires lo <= hi");
  return count_below(I.hi) - count_below(I.lo);
}

double projector_element(const Eigen::MatrixXd& H, const Interval& I,
                         Eigen::Index j, const Eigen::VectorXd& phi) {
  if (I.lo > I.hi) throw InvalidInterval("projector_element: requires lo <= hi");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  const auto& eigs = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  // <phi, chi_j P chi_j phi> = phi_j^2 * P(j, j).
  double pjj = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (eigs[i] > I.lo && eigs[i] <= I.hi) pjj += vecs(j, i) * vecs(j, i);
  return phi[j] * phi[j] * pjj;
}

double projector_element(const Hamiltonian& H, const Interval& I,
                         const LatticePoint& j, const Eigen::VectorXd& phi) {
  return projector_element(H.dense(), I, H.sites.index_of(j), phi);
}

double projector_trace(const Eigen::MatrixXd& H, const Interval& I) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      H, Eigen::EigenvaluesOnly);
  const auto& eigs = solver.eigenvalues();
  double trace = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (eigs[i] > I.lo && eigs[i] <= I.hi) trace += 1.0;
  return trace;
}

namespace {

struct SimpsonState {
  const std::function<double(double)>* f;
  double tol;
  int max_depth;
  double error = 0.0;
  bool failed = false;
};

double adaptive_simpson(SimpsonState& st, double a, double fa, double m,
                        double fm, double b, double fb, double whole,
                        int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = (*st.f)(lm);
  const double frm = (*st.f)(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * st.tol || depth >= st.max_depth) {
    if (std::abs(delta) > 15.0 * st.tol) st.failed = true;
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  st.tol *= 0.5;
  const double l = adaptive_simpson(st, a, fa, lm, flm, m, fm, left, depth + 1);
  const double r = adaptive_simpson(st, m, fm, rm, frm, b, fb, right, depth + 1);
  st.tol *= 2.0;
  return l + r;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, int initial_panels, double tol,
                          double& error_out) {
  initial_panels = std::max(1, initial_panels);
  const double h = (b - a) / initial_panels;
  double total = 0.0;
  double error = 0.0;
  bool failed = false;
  for (int p = 0; p < initial_panels; ++p) {
    const double pa = a + p * h;
    const double pb = p + 1 == initial_panels ? b : pa + h;
    const double pm = 0.5 * (pa + pb);
    const double fa = f(pa);
    const double fm = f(pm);
    const double fb = f(pb);
    const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    SimpsonState st{&f, tol / initial_panels, 40};
    total += adaptive_simpson(st, pa, fa, pm, fm, pb, fb, whole, 0);
    error += st.error;
    failed = failed || st.failed;
  }
  if (failed)
    throw QuadratureFailure(
        "spectral_averaging_check: adaptive quadrature did not reach the "
        "requested tolerance");
  error_out = error;
  return total;
}

}  // namespace

AveragingResult spectral_averaging_check(const Hamiltonian& H0,
                                         const std::vector<double>& w,
                                         const DensityBV& g, const Interval& I,
                                         const LatticePoint& j,
                                         const Eigen::VectorXd& phi,
                                         int quadrature_points) {
  const Eigen::Index n = H0.dimension();
  if (static_cast<Eigen::Index>(w.size()) != n)
    throw InvalidGeometry("spectral_averaging_check: weight size mismatch");
  const Eigen::Index jdx = H0.sites.index_of(j);
  if (w[static_cast<std::size_t>(jdx)] < 1.0)
    throw InvalidGeometry("spectral_averaging_check: requires w(j) >= 1");
  for (double wi : w)
    if (wi < 0.0)
      throw InvalidGeometry("spectral_averaging_check: requires w >= 0");
  if (std::abs(phi.norm() - 1.0) > 1e-9)
    throw InvalidGeometry("spectral_averaging_check: phi must be a unit vector");

  const Eigen::MatrixXd base = H0.dense();
  Eigen::VectorXd weights(n);
  for (Eigen::Index i = 0; i < n; ++i)
    weights[i] = w[static_cast<std::size_t>(i)];

  const std::function<double(double)> element = [&](double t) {
    Eigen::MatrixXd Ht = base;
    Ht.diagonal() += t * weights;
    return projector_element(Ht, I, jdx, phi);
  };

  AveragingResult result;
  result.bound = I.length() * g.sup_value();
  double total_error = 0.0;
  // g is piecewise constant: integrate piece by piece against the constant
  // heights; kinks of the projector element are handled by the adaptive
  // refinement.
  for (std::size_t p = 0; p < g.piece_values().size(); ++p) {
    const double height = g.piece_values()[p];
    if (height == 0.0) continue;
    double err = 0.0;
    const double piece = integrate_adaptive(
        element, g.breakpoints()[p], g.breakpoints()[p + 1], quadrature_points,
        1e-8, err);
    result.lhs += height * piece;
    total_error += height * err;
  }
  result.quad_error = total_error;
  result.pass = result.lhs <= result.bound + std::max(total_error, 1e-12);
  return result;
}

}  // namespace wegnerlab
