#ifndef WEGNERLAB_MODEL_HPP
#define WEGNERLAB_MODEL_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wegnerlab/geometry.hpp"
#include "wegnerlab/symbol.hpp"

namespace wegnerlab {

/// Single site profile v with v(0) >= kappa > 0 and v >= 0 everywhere.
class SingleSiteProfile {
 public:
  SingleSiteProfile(int dim, std::map<LatticePoint, double> values,
                    double kappa);

  int dim() const { return dim_; }
  double kappa() const { return kappa_; }
  int support_radius() const { return support_radius_; }
  const std::map<LatticePoint, double>& values() const { return values_; }
  double at(const LatticePoint& x) const;

  /// The indicator of the origin (kappa = 1).
  static SingleSiteProfile delta(int dim);

 private:
  int dim_;
  std::map<LatticePoint, double> values_;
  int support_radius_;
  double kappa_;
};

/// u = sum_k alpha_k v(. - k): the (possibly sign-changing) single site
/// potential of generalised step function form. reach() = r + D bounds the
/// support radius.
class GeneralizedStepPotential {
 public:
  GeneralizedStepPotential(int dim, std::map<LatticePoint, double> values,
                           int reach);

  int dim() const { return dim_; }
  int reach() const { return reach_; }
  const std::map<LatticePoint, double>& values() const { return values_; }
  double at(const LatticePoint& x) const;
  double abs_sum() const;

 private:
  int dim_;
  std::map<LatticePoint, double> values_;
  int reach_;
};

/// Exact finite convolution of alpha with v.
GeneralizedStepPotential build_u(const CoefficientField& alpha,
                                 const SingleSiteProfile& v);

/// Piecewise-constant probability density on a compact interval. Breakpoints
/// are strictly increasing; piece i has constant value piece_values[i] on
/// [breakpoints[i], breakpoints[i+1]). The density must be nonnegative and
/// integrate to 1 (up to 1e-9 input slack).
class DensityBV {
 public:
  DensityBV(std::vector<double> breakpoints, std::vector<double> piece_values);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& piece_values() const { return piece_values_; }

  double support_lo() const { return breakpoints_.front(); }
  double support_hi() const { return breakpoints_.back(); }
  double sup_value() const;

  /// Total variation of the density as a function on the whole line,
  /// including the jumps onto and off the support.
  double bv_norm() const;

  double cdf(double x) const;
  /// Exact inverse-CDF transform of u in [0, 1).
  double inverse_cdf(double u) const;

  static DensityBV uniform(double lo, double hi);

 private:
  std::vector<double> breakpoints_;
  std::vector<double> piece_values_;
  std::vector<double> cumulative_;  // cumulative piece masses, size pieces+1
};

/// Free-function form of DensityBV::bv_norm.
double bv_norm(const DensityBV& f);

/// Reduction to kappa = 1: returns (v / kappa, h) with h(x) = f(x/kappa)/kappa.
/// The random potential generated by (kappa omega, u/kappa) is pointwise the
/// one generated by (omega, u), and bv_norm(h) = bv_norm(f)/kappa.
std::pair<SingleSiteProfile, DensityBV> rescale_kappa(
    const SingleSiteProfile& v, const DensityBV& f);

/// `count` i.i.d. samples from f via inverse CDF; deterministic given seed.
std::vector<double> sample_iid(const DensityBV& f, std::int64_t count,
                               std::uint64_t seed);

/// Coupling vector indexed by the enumeration of `box`.
std::vector<double> sample_omega(const DensityBV& f, const BoxSpec& box,
                                 std::uint64_t seed);

/// Background potential, translation invariant under period * Z^d. Values are
/// keyed by points of the fundamental cell [0, period)^d; missing keys are 0.
class PeriodicPotential {
 public:
  PeriodicPotential(int dim, int period,
                    std::map<LatticePoint, double> values);

  static PeriodicPotential zero(int dim);

  int dim() const { return dim_; }
  int period() const { return period_; }
  const std::map<LatticePoint, double>& values() const { return values_; }
  double at(const LatticePoint& x) const;
  double sup_abs() const;

 private:
  int dim_;
  int period_;
  std::map<LatticePoint, double> values_;
};

enum class Boundary { kTruncated, kPeriodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Full description of a finite-volume Anderson model: box, boundary
/// condition, periodic background, coefficients alpha, profile v, coupling
/// density f.
struct AndersonConfig {
  int dim;
  int l;
  Boundary boundary;
  PeriodicPotential v_per;
  CoefficientField alpha;
  SingleSiteProfile v;
  DensityBV f;
  std::uint64_t seed = 0;

  /// r + D: the support reach of u = alpha * v.
  int reach() const { return v.support_radius() + alpha.support_radius(); }
  BoxSpec site_box() const { return BoxSpec{dim, l}; }
  /// Q_{l+R}: the sites whose couplings influence the potential on Q_l.
  BoxSpec coupling_box() const { return BoxSpec{dim, l + reach()}; }

  /// Key-value text format; see the README for the schema.
  static AndersonConfig parse(std::istream& in);
  static AndersonConfig load(const std::string& path);

  /// Deterministic full dump used for hashing and reproducibility records.
  std::string canonical_string() const;
  /// FNV-1a 64-bit hex digest of canonical_string().
  std::string digest() const;
};

/// Finite-volume Hamiltonian H = -Laplacian + V_per + V_omega on Q_l. The
/// Laplacian follows the convention (Delta phi)(x) = sum_i phi(x+e_i) +
/// phi(x-e_i) (no diagonal term), so -Delta is pure hopping with value -1.
struct Hamiltonian {
  Box sites;
  Eigen::SparseMatrix<double> matrix;

  std::int64_t dimension() const { return sites.size(); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
  /// Operator infinity norm (max absolute row sum).
  double sup_norm() const;
};

/// Assembles H for the coupling vector omega indexed by Q_{l+R}.
Hamiltonian assemble_hamiltonian(const AndersonConfig& config,
                                 const std::vector<double>& omega);

/// The discrete Wegner constant (1/kappa) * ||f||_BV * ||B||_1; energy
/// independent.
double wegner_constant(const AndersonConfig& config,
                       const WienerInverse& wiener);

}  // namespace wegnerlab

#endif  // WEGNERLAB_MODEL_HPP
