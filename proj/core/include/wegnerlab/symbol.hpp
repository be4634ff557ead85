#ifndef WEGNERLAB_SYMBOL_HPP
#define WEGNERLAB_SYMBOL_HPP

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wegnerlab/geometry.hpp"

namespace wegnerlab {

/// Finitely supported real sequence alpha on Z^d together with its support
/// radius D (smallest cube radius containing all nonzero entries).
///
/// The symbol of the sequence is the trigonometric polynomial
///   symbol(theta) = sum_k alpha_k exp(-i k . theta).
class CoefficientField {
 public:
  /// Zero-valued entries are dropped; at least one entry must be nonzero.
  CoefficientField(int dim, std::map<LatticePoint, double> values);

  int dim() const { return dim_; }
  int support_radius() const { return support_radius_; }
  const std::map<LatticePoint, double>& values() const { return values_; }

  double at(const LatticePoint& k) const;
  double abs_sum() const;
  double max_abs() const;

  /// sum_k |k|_2 * |alpha_k|: a Lipschitz constant of the symbol on the torus.
  double lipschitz_bound() const;

  /// Plain text format: one "k_1 ... k_d value" line per entry, '#' comments.
  std::string serialize() const;
  static CoefficientField parse(int dim, std::istream& in);
  static CoefficientField load(int dim, const std::string& path);
  void save(const std::string& path) const;

 private:
  int dim_;
  std::map<LatticePoint, double> values_;
  int support_radius_;
};

/// Evaluation of the symbol at a point of the d-torus (coordinates in
/// [0, 2*pi)).
std::complex<double> evaluate_symbol(const CoefficientField& alpha,
                                     const std::vector<double>& theta);

/// True iff some coefficient strictly dominates the absolute sum of all
/// others. Dominance is a sufficient condition for the symbol to vanish
/// nowhere on the torus.
bool check_diagonal_dominance(const CoefficientField& alpha);

/// Rigorous lower bound on |symbol| over the whole torus, obtained from grid
/// samples and the Lipschitz constant.
struct SymbolCertificate {
  int grid_points_per_axis = 0;
  double min_modulus_on_grid = 0.0;
  double lipschitz_bound = 0.0;
  double certified_lower_bound = 0.0;
  bool nonvanishing = false;
  /// True when a grid sample is exactly zero, i.e. the symbol provably
  /// vanishes. nonvanishing == false without this flag is inconclusive.
  bool definitely_vanishing = false;
};

/// Samples |symbol| on a uniform grid with `grid_points_per_axis` points per
/// axis and combines the minimum with the Lipschitz bound:
///   certified_lower_bound = min_on_grid - L * (half grid spacing) * sqrt(d).
SymbolCertificate certify_nonvanishing(const CoefficientField& alpha,
                                       int grid_points_per_axis);

/// Truncated Fourier coefficients beta of 1/symbol, with a certified tail
/// bound. beta solves the deconvolution identity
///   sum_k alpha_k beta_{n-k} = delta_{n,0},
/// and column_sum_norm = sum |beta_n| approximates the column sum norm of the
/// inverse Laurent matrix B from below within the tail bound.
struct WienerInverse {
  int dim = 1;
  std::map<LatticePoint, double> beta;
  int truncation_radius = 0;
  double tail_bound = 0.0;
  double column_sum_norm = 0.0;

  double at(const LatticePoint& n) const;
};

/// Computes beta by sampling 1/symbol on a uniform N^d grid and applying an
/// inverse DFT; N is doubled until both the change in the column-sum-norm
/// estimate and the largest boundary-shell coefficient fall below
/// `tolerance`.
///
/// Throws SymbolVanishes if a grid sample is below the hard floor
/// (1e-12 relative to the largest sample), NoConvergence if the doubling cap
/// is reached first.
WienerInverse wiener_inverse(const CoefficientField& alpha, double tolerance);

}  // namespace wegnerlab

#endif  // WEGNERLAB_SYMBOL_HPP
