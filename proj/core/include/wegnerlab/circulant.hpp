#ifndef WEGNERLAB_CIRCULANT_HPP
#define WEGNERLAB_CIRCULANT_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "wegnerlab/geometry.hpp"
#include "wegnerlab/symbol.hpp"

namespace wegnerlab {

/// Multi-dimensional circulant matrix on the index cube Q_s, stored by its
/// generating coefficients: entry (j, k) = gen[project(j - k)], where the
/// projection periodizes with period 2s+1 per axis.
///
/// The matrix is diagonalized by the discrete Fourier transform; eigenvalue
/// n equals the generating sequence's symbol at theta = 2*pi*n/(2s+1).
class CirculantOperator {
 public:
  /// Circulant whose generating coefficients are the periodization of
  /// `coeffs` onto Q_s. Requires s >= support radius of `coeffs`, so the
  /// periodization is injective and gen equals the embedded sequence.
  static CirculantOperator from_symbol(const CoefficientField& coeffs, int s);

  /// Circulant from explicit generating coefficients in the enumeration
  /// order of Q_s; eigenvalues are computed by DFT.
  CirculantOperator(int dim, int s, std::vector<double> generating);

  int dim() const { return box_.spec().dim; }
  int radius() const { return box_.spec().radius; }
  int period() const { return 2 * radius() + 1; }
  const Box& index_box() const { return box_; }
  std::int64_t size() const { return box_.size(); }

  const std::vector<double>& generating_coefficients() const { return gen_; }
  const std::vector<std::complex<double>>& dft_eigenvalues() const {
    return eigenvalues_;
  }

  /// Generating coefficient at lattice offset m (projected into Q_s).
  double generating_at(const LatticePoint& m) const;

  /// Matrix entry (j, k) for j, k in Q_s.
  double entry(const LatticePoint& j, const LatticePoint& k) const;

  /// Matrix-vector product over Q_s (input/output in enumeration order).
  std::vector<double> apply(const std::vector<double>& x) const;

  /// Dense realization, rows/columns in enumeration order of Q_s.
  Eigen::MatrixXd to_dense() const;

  /// For a circulant the column sum norm is sum_m |gen[m]|, exactly.
  double column_sum_norm() const;

  /// Smallest eigenvalue modulus.
  double min_eigenvalue_modulus() const;

  /// Row-major dense text dump, one row per line.
  std::string to_text() const;

 private:
  Box box_;
  TorusProjection projection_;
  std::vector<double> gen_;
  std::vector<std::complex<double>> eigenvalues_;
};

/// The eta change of variables: eta = A_Lambda * omega over Q_{l+R}.
struct EtaVariables {
  std::vector<double> values;  // enumeration order of Q_{l+R}
};

/// The finite-volume circulant A_Lambda on Q_{l+R} with generating
/// coefficients the periodization of alpha. Requires l > R and
/// R >= support radius of alpha.
CirculantOperator build_circulant(const CoefficientField& alpha, int l, int R);

/// Brute-force scan of the rectangle condition: A(j,k) = alpha_{j-k} exactly
/// for every j in Q_{l+r} and k in Q_{l+R}. Requires R = r + D where D is
/// the support radius of alpha.
bool verify_rectangle_condition(const CirculantOperator& A,
                                const CoefficientField& alpha, int l, int r,
                                int R);

/// Inverse circulant via eigenvalue reciprocals. `floor` < 0 selects the
/// default singularity floor of 1e-12 * max |eigenvalue|. Throws
/// SingularCirculant when an eigenvalue modulus is below the floor.
CirculantOperator invert_circulant(const CirculantOperator& A,
                                   double floor = -1.0);

/// B_Lambda built by folding the Laurent inverse: each generating
/// coefficient is the sum of beta over one coset of the period sub-lattice.
/// Agrees with invert_circulant(build_circulant(...)) up to the tail bound.
CirculantOperator fold_laurent_inverse(const WienerInverse& wiener, int l,
                                       int R);

/// eta = A * omega (exact matrix-vector product).
EtaVariables eta_from_omega(const CirculantOperator& A,
                            const std::vector<double>& omega);

/// Column sum norm of a circulant (exact absolute sum of the generating
/// coefficients).
double column_sum_norm(const CirculantOperator& M);

}  // namespace wegnerlab

#endif  // WEGNERLAB_CIRCULANT_HPP
