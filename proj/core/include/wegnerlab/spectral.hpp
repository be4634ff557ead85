#ifndef WEGNERLAB_SPECTRAL_HPP
#define WEGNERLAB_SPECTRAL_HPP

#include <Eigen/Dense>
#include <vector>

#include "wegnerlab/geometry.hpp"
#include "wegnerlab/model.hpp"

namespace wegnerlab {

/// Half-open energy interval (lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
};

/// Number of eigenvalues <= E, computed from the inertia of H - E*I via a
/// symmetric indefinite (Bunch-Kaufman) factorization. When a pivot is
/// within 1e-10 * ||H||_inf of zero the routine falls back to a dense
/// eigendecomposition, so the returned integer is reliable at eigenvalue
/// ties.
int count_below(const Eigen::MatrixXd& H, double E);
int count_below(const Hamiltonian& H, double E);

/// Eigenvalues in (E1, E2], i.e. count_below(E2) - count_below(E1).
int count_in_interval(const Eigen::MatrixXd& H, double E1, double E2);
int count_in_interval(const Hamiltonian& H, double E1, double E2);

/// Sorted-spectrum view of one Hamiltonian; cheap repeated counting on
/// energy grids.
class CountingFunction {
 public:
  explicit CountingFunction(const Eigen::MatrixXd& H);
  explicit CountingFunction(const Hamiltonian& H);

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  int count_below(double E) const;
  int count_in(const Interval& I) const;

 private:
  Eigen::VectorXd eigenvalues_;  // ascending
};

/// <phi, chi_j P(I) chi_j phi> where chi_j is the coordinate projection onto
/// the site j of Q_l. Value lies in [0, 1].
double projector_element(const Hamiltonian& H, const Interval& I,
                         const LatticePoint& j, const Eigen::VectorXd& phi);
double projector_element(const Eigen::MatrixXd& H, const Interval& I,
                         Eigen::Index j, const Eigen::VectorXd& phi);

/// Sum of the diagonal of P(I); equals the eigenvalue count in I.
double projector_trace(const Eigen::MatrixXd& H, const Interval& I);

struct AveragingResult {
  double lhs = 0.0;         // integral of g(t) <phi, chi_j P_t(I) chi_j phi>
  double bound = 0.0;       // |I| * sup g
  double quad_error = 0.0;  // accumulated quadrature error estimate
  bool pass = false;        // lhs <= bound + quad_error
};

/// Numerical check of the spectral averaging estimate: integrates the
/// projector matrix element of H0 + t * diag(w) against the density g over
/// its support with adaptive Simpson quadrature (the integrand is continuous
/// and piecewise smooth, with kinks where eigenvalues cross the interval
/// endpoints). Requires w >= 0 with w(j) >= 1 and ||phi|| = 1.
///
/// `quadrature_points` sets the initial number of panels per density piece.
/// Throws QuadratureFailure if the error estimate cannot be brought below an
/// internal tolerance of 1e-8.
AveragingResult spectral_averaging_check(const Hamiltonian& H0,
                                         const std::vector<double>& w,
                                         const DensityBV& g, const Interval& I,
                                         const LatticePoint& j,
                                         const Eigen::VectorXd& phi,
                                         int quadrature_points);

}  // namespace wegnerlab

#endif  // WEGNERLAB_SPECTRAL_HPP
