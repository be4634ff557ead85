#include "wegnerlab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wegnerlab/errors.hpp"
#include "dft.hpp"

namespace wegnerlab {

namespace {

constexpr double kHardFloorRel = 1e-12;  // relative to max |symbol| on grid

}  // namespace

CoefficientField::CoefficientField(int dim,
                                   std::map<LatticePoint, double> values)
    : dim_(dim), support_radius_(0) {
  if (dim < 1) throw InvalidGeometry("CoefficientField: dimension must be >= 1");
  for (auto& [k, v] : values) {
    if (static_cast<int>(k.size()) != dim)
      throw InvalidGeometry("CoefficientField: key dimension mismatch");
    if (v != 0.0) {
      values_.emplace(k, v);
      support_radius_ = std::max(support_radius_, max_norm(k));
    }
  }
  if (values_.empty())
    throw InvalidGeometry("CoefficientField: all coefficients are zero");
}

double CoefficientField::at(const LatticePoint& k) const {
  auto it = values_.find(k);
  return it == values_.end() ? 0.0 : it->second;
}

double CoefficientField::abs_sum() const {
  double s = 0.0;
  for (const auto& [k, v] : values_) s += std::abs(v);
  return s;
}

double CoefficientField::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : values_) m = std::max(m, std::abs(v));
  return m;
}

double CoefficientField::lipschitz_bound() const {
  double s = 0.0;
  for (const auto& [k, v] : values_) {
    double norm2 = 0.0;
    for (int c : k) norm2 += double(c) * double(c);
    s += std::sqrt(norm2) * std::abs(v);
  }
  return s;
}

std::string CoefficientField::serialize() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [k, v] : values_) {
    for (int c : k) out << c << ' ';
    out << v << '\n';
  }
  return out.str();
}

CoefficientField CoefficientField::parse(int dim, std::istream& in) {
  std::map<LatticePoint, double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream tokens(line);
    LatticePoint k(dim);
    if (!(tokens >> k[0])) continue;  // blank line
    for (int i = 1; i < dim; ++i)
      if (!(tokens >> k[i]))
        throw ConfigError("coefficient line " + std::to_string(lineno) +
                          ": expected " + std::to_string(dim) + " indices");
    double v;
    if (!(tokens >> v))
      throw ConfigError("coefficient line " + std::to_string(lineno) +
                        ": missing value");
    values[k] = v;
  }
  return CoefficientField(dim, std::move(values));
}

CoefficientField CoefficientField::load(int dim, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coefficient file: " + path);
  return parse(dim, in);
}

void CoefficientField::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write coefficient file: " + path);
  out << serialize();
}

std::complex<double> evaluate_symbol(const CoefficientField& alpha,
                                     const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != alpha.dim())
    throw InvalidGeometry("evaluate_symbol: theta dimension mismatch");
  std::complex<double> sum = 0.0;
  for (const auto& [k, v] : alpha.values()) {
    double dot = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) dot += k[i] * theta[i];
    sum += v * std::complex<double>(std::cos(dot), -std::sin(dot));
  }
  return sum;
}

bool check_diagonal_dominance(const CoefficientField& alpha) {
  // max_j |a_j| > sum_{k != j} |a_k|  <=>  2 max |a| > sum |a|.
  return 2.0 * alpha.max_abs() > alpha.abs_sum();
}

namespace {

/// Samples the symbol on the uniform grid theta_n = 2*pi*n/N, n in [0,N)^d,
/// in row-major order (last axis fastest).
std::vector<std::complex<double>> sample_symbol_grid(
    const CoefficientField& alpha, int points_per_axis) {
  const int d = alpha.dim();
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= points_per_axis;
  std::vector<std::complex<double>> samples(total);
  const double step = 2.0 * std::numbers::pi / points_per_axis;
  std::vector<double> theta(d);
  std::vector<int> n(d, 0);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    for (int i = 0; i < d; ++i) theta[i] = step * n[i];
    samples[idx] = evaluate_symbol(alpha, theta);
    for (int i = d - 1; i >= 0; --i) {
      if (++n[i] < points_per_axis) break;
      n[i] = 0;
    }
  }
  return samples;
}

}  // namespace

SymbolCertificate certify_nonvanishing(const CoefficientField& alpha,
                                       int grid_points_per_axis) {
  if (grid_points_per_axis < 2)
    throw InvalidGeometry("certify_nonvanishing: need at least 2 grid points");
  SymbolCertificate cert;
  cert.grid_points_per_axis = grid_points_per_axis;
  const auto samples = sample_symbol_grid(alpha, grid_points_per_axis);
  double min_mod = std::abs(samples[0]);
  double max_mod = min_mod;
  for (const auto& s : samples) {
    min_mod = std::min(min_mod, std::abs(s));
    max_mod = std::max(max_mod, std::abs(s));
  }
  cert.min_modulus_on_grid = min_mod;
  cert.lipschitz_bound = alpha.lipschitz_bound();
  const double half_spacing = std::numbers::pi / grid_points_per_axis;
  cert.certified_lower_bound =
      min_mod - cert.lipschitz_bound * half_spacing * std::sqrt(alpha.dim());
  cert.nonvanishing = cert.certified_lower_bound > 0.0;
  cert.definitely_vanishing =
      min_mod == 0.0 || min_mod < kHardFloorRel * max_mod;
  return cert;
}

double WienerInverse::at(const LatticePoint& n) const {
  auto it = beta.find(n);
  return it == beta.end() ? 0.0 : it->second;
}

WienerInverse wiener_inverse(const CoefficientField& alpha, double tolerance) {
  if (tolerance <= 0.0)
    throw InvalidGeometry("wiener_inverse: tolerance must be positive");
  const int d = alpha.dim();
  // Total grid cap: keeps the densest pass around 4M points.
  const std::int64_t max_total = std::int64_t(1) << 22;

  int points = 16;
  double prev_norm = -1.0;
  bool have_prev = false;

  while (true) {
    std::int64_t total = 1;
    for (int i = 0; i < d; ++i) total *= points;
    if (total > max_total)
      throw NoConvergence(
          "wiener_inverse: tolerance " + std::to_string(tolerance) +
          " not reached before the grid cap");

    auto samples = sample_symbol_grid(alpha, points);
    double max_mod = 0.0;
    for (const auto& s : samples) max_mod = std::max(max_mod, std::abs(s));
    for (const auto& s : samples)
      if (std::abs(s) < kHardFloorRel * max_mod)
        throw SymbolVanishes(
            "wiener_inverse: symbol modulus below the numerical floor on a " +
            std::to_string(points) + "^" + std::to_string(d) + " grid");
    for (auto& s : samples) s = 1.0 / s;

    const std::vector<int> dims(d, points);
    auto coeffs = internal::inverse_dft(samples, dims);

    // Centered symmetric window covered by the grid (for even grids the
    // asymmetric -N/2 row is dropped). Scanned over the flat layout; the
    // beta map is materialized only once the estimates have settled.
    const int rho = (points % 2 == 0) ? points / 2 - 1 : (points - 1) / 2;
    double norm = 0.0;
    double shell_max = 0.0;
    std::vector<int> digits(d, 0);
    for (std::int64_t flat = 0; flat < total; ++flat) {
      bool inside = true;
      bool on_shell = false;
      for (int i = 0; i < d; ++i) {
        const int centered =
            digits[i] > points / 2 ? digits[i] - points : digits[i];
        const int mag = std::abs(centered);
        if (mag > rho) {
          inside = false;
          break;
        }
        on_shell = on_shell || mag == rho;
      }
      if (inside) {
        const double value = coeffs[flat].real();
        norm += std::abs(value);
        if (on_shell) shell_max = std::max(shell_max, std::abs(value));
      }
      for (int i = d - 1; i >= 0; --i) {
        if (++digits[i] < points) break;
        digits[i] = 0;
      }
    }

    const double diff = have_prev ? std::abs(norm - prev_norm) : -1.0;
    if (have_prev && diff < tolerance && shell_max < tolerance) {
      Box window(BoxSpec{d, rho});
      std::map<LatticePoint, double> beta;
      for (std::int64_t i = 0; i < window.size(); ++i) {
        LatticePoint m = window.point_at(i);
        std::int64_t flat = 0;
        for (int c : m) flat = flat * points + ((c % points + points) % points);
        beta.emplace(std::move(m), coeffs[flat].real());
      }
      WienerInverse out;
      out.dim = d;
      out.beta = std::move(beta);
      out.truncation_radius = rho;
      out.tail_bound = std::max(diff, shell_max);
      out.column_sum_norm = norm;
      return out;
    }
    prev_norm = norm;
    have_prev = true;
    points *= 2;
  }
}

}  // namespace wegnerlab
