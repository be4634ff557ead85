#include "wegnerlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wegnerlab/errors.hpp"
#include "wegnerlab/rng.hpp"

namespace wegnerlab {

SingleSiteProfile::SingleSiteProfile(int dim,
                                     std::map<LatticePoint, double> values,
                                     double kappa)
    : dim_(dim), support_radius_(0), kappa_(kappa) {
  if (dim < 1) throw InvalidGeometry("SingleSiteProfile: dimension must be >= 1");
  if (kappa <= 0.0)
    throw InvalidGeometry("SingleSiteProfile: kappa must be positive");
  for (auto& [k, val] : values) {
    if (static_cast<int>(k.size()) != dim)
      throw InvalidGeometry("SingleSiteProfile: key dimension mismatch");
    if (val < 0.0)
      throw InvalidGeometry("SingleSiteProfile: values must be nonnegative");
    if (val != 0.0) {
      values_.emplace(k, val);
      support_radius_ = std::max(support_radius_, max_norm(k));
    }
  }
  const LatticePoint origin(dim, 0);
  if (at(origin) < kappa)
    throw InvalidGeometry("SingleSiteProfile: requires v(0) >= kappa");
}

double SingleSiteProfile::at(const LatticePoint& x) const {
  auto it = values_.find(x);
  return it == values_.end() ? 0.0 : it->second;
}

SingleSiteProfile SingleSiteProfile::delta(int dim) {
  return SingleSiteProfile(dim, {{LatticePoint(dim, 0), 1.0}}, 1.0);
}

GeneralizedStepPotential::GeneralizedStepPotential(
    int dim, std::map<LatticePoint, double> values, int reach)
    : dim_(dim), values_(std::move(values)), reach_(reach) {
  for (const auto& [k, val] : values_)
    if (val != 0.0 && max_norm(k) > reach_)
      throw InvalidGeometry(
          "GeneralizedStepPotential: support exceeds the declared reach");
}

double GeneralizedStepPotential::at(const LatticePoint& x) const {
  auto it = values_.find(x);
  return it == values_.end() ? 0.0 : it->second;
}

double GeneralizedStepPotential::abs_sum() const {
  double s = 0.0;
  for (const auto& [k, val] : values_) s += std::abs(val);
  return s;
}

GeneralizedStepPotential build_u(const CoefficientField& alpha,
                                 const SingleSiteProfile& v) {
  if (alpha.dim() != v.dim())
    throw InvalidGeometry("build_u: dimension mismatch");
  std::map<LatticePoint, double> u;
  LatticePoint x(alpha.dim());
  for (const auto& [k, ak] : alpha.values()) {
    for (const auto& [y, vy] : v.values()) {
      for (int i = 0; i < alpha.dim(); ++i) x[i] = k[i] + y[i];
      u[x] += ak * vy;
    }
  }
  return GeneralizedStepPotential(
      alpha.dim(), std::move(u), v.support_radius() + alpha.support_radius());
}

DensityBV::DensityBV(std::vector<double> breakpoints,
                     std::vector<double> piece_values)
    : breakpoints_(std::move(breakpoints)),
      piece_values_(std::move(piece_values)) {
  if (breakpoints_.size() < 2 ||
      piece_values_.size() != breakpoints_.size() - 1)
    throw ConfigError("DensityBV: need n+1 breakpoints for n pieces");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw ConfigError("DensityBV: breakpoints must be strictly increasing");
  for (double v : piece_values_)
    if (v < 0.0) throw ConfigError("DensityBV: density must be nonnegative");
  cumulative_.assign(piece_values_.size() + 1, 0.0);
  for (std::size_t i = 0; i < piece_values_.size(); ++i)
    cumulative_[i + 1] = cumulative_[i] + (breakpoints_[i + 1] - breakpoints_[i]) *
                                              piece_values_[i];
  if (std::abs(cumulative_.back() - 1.0) > 1e-9)
    throw ConfigError("DensityBV: density must integrate to 1");
}

double DensityBV::sup_value() const {
  return *std::max_element(piece_values_.begin(), piece_values_.end());
}

double DensityBV::bv_norm() const {
  double total = piece_values_.front() + piece_values_.back();
  for (std::size_t i = 0; i + 1 < piece_values_.size(); ++i)
    total += std::abs(piece_values_[i + 1] - piece_values_[i]);
  return total;
}

double DensityBV::cdf(double x) const {
  if (x <= breakpoints_.front()) return 0.0;
  if (x >= breakpoints_.back()) return cumulative_.back();
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return cumulative_[i] + (x - breakpoints_[i]) * piece_values_[i];
}

double DensityBV::inverse_cdf(double u) const {
  const double target = u * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
  i = i == 0 ? 0 : i - 1;
  i = std::min(i, piece_values_.size() - 1);
  // Skip zero-mass pieces that upper_bound may land on at exact boundaries.
  while (i + 1 < piece_values_.size() && piece_values_[i] == 0.0) ++i;
  return breakpoints_[i] + (target - cumulative_[i]) / piece_values_[i];
}

DensityBV DensityBV::uniform(double lo, double hi) {
  return DensityBV({lo, hi}, {1.0 / (hi - lo)});
}

double bv_norm(const DensityBV& f) { return f.bv_norm(); }

std::pair<SingleSiteProfile, DensityBV> rescale_kappa(
    const SingleSiteProfile& v, const DensityBV& f) {
  const double kappa = v.kappa();
  std::map<LatticePoint, double> scaled;
  for (const auto& [k, val] : v.values()) scaled.emplace(k, val / kappa);
  std::vector<double> breakpoints = f.breakpoints();
  for (double& b : breakpoints) b *= kappa;
  std::vector<double> values = f.piece_values();
  for (double& p : values) p /= kappa;
  return {SingleSiteProfile(v.dim(), std::move(scaled), 1.0),
          DensityBV(std::move(breakpoints), std::move(values))};
}

std::vector<double> sample_iid(const DensityBV& f, std::int64_t count,
                               std::uint64_t seed) {
  Xoshiro256PlusPlus rng(seed);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& x : out) x = f.inverse_cdf(rng.uniform());
  return out;
}

std::vector<double> sample_omega(const DensityBV& f, const BoxSpec& box,
                                 std::uint64_t seed) {
  return sample_iid(f, box.volume(), seed);
}

PeriodicPotential::PeriodicPotential(int dim, int period,
                                     std::map<LatticePoint, double> values)
    : dim_(dim), period_(period), values_(std::move(values)) {
  if (dim < 1) throw InvalidGeometry("PeriodicPotential: dimension must be >= 1");
  if (period < 1)
    throw InvalidGeometry("PeriodicPotential: period must be >= 1");
  for (const auto& [k, val] : values_) {
    if (static_cast<int>(k.size()) != dim)
      throw InvalidGeometry("PeriodicPotential: key dimension mismatch");
    for (int c : k)
      if (c < 0 || c >= period)
        throw InvalidGeometry(
            "PeriodicPotential: keys must lie in the fundamental cell");
  }
}

PeriodicPotential PeriodicPotential::zero(int dim) {
  return PeriodicPotential(dim, 1, {});
}

double PeriodicPotential::at(const LatticePoint& x) const {
  LatticePoint cell(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    int r = x[i] % period_;
    if (r < 0) r += period_;
    cell[i] = r;
  }
  auto it = values_.find(cell);
  return it == values_.end() ? 0.0 : it->second;
}

double PeriodicPotential::sup_abs() const {
  double m = 0.0;
  for (const auto& [k, val] : values_) m = std::max(m, std::abs(val));
  return m;
}

std::string to_string(Boundary b) {
  return b == Boundary::kTruncated ? "truncated" : "periodic";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "truncated") return Boundary::kTruncated;
  if (s == "periodic") return Boundary::kPeriodic;
  throw ConfigError("unknown boundary condition: " + s);
}

namespace {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

AndersonConfig AndersonConfig::parse(std::istream& in) {
  int dim = 0;
  int l = -1;
  std::string boundary = "truncated";
  double kappa = 1.0;
  int vper_period = 1;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::vector<long long>, double>> alpha_raw, v_raw,
      vper_raw;
  std::vector<double> breakpoints, values;

  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError("config line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream tokens(line);
    std::string key;
    if (!(tokens >> key)) continue;
    auto read_entry = [&](std::vector<std::pair<std::vector<long long>, double>>&
                              dst) {
      if (dim == 0) fail("'" + key + "' must come after 'dimension'");
      std::vector<long long> k(dim);
      for (int i = 0; i < dim; ++i)
        if (!(tokens >> k[i])) fail("expected " + std::to_string(dim) +
                                    " indices after '" + key + "'");
      double val;
      if (!(tokens >> val)) fail("missing value after '" + key + "'");
      dst.emplace_back(std::move(k), val);
    };
    if (key == "dimension") {
      if (!(tokens >> dim) || dim < 1) fail("invalid dimension");
    } else if (key == "l") {
      if (!(tokens >> l) || l < 0) fail("invalid l");
    } else if (key == "boundary") {
      if (!(tokens >> boundary)) fail("missing boundary value");
    } else if (key == "kappa") {
      if (!(tokens >> kappa)) fail("invalid kappa");
    } else if (key == "seed") {
      if (!(tokens >> seed)) fail("invalid seed");
    } else if (key == "vper_period") {
      if (!(tokens >> vper_period) || vper_period < 1) fail("invalid vper_period");
    } else if (key == "alpha") {
      read_entry(alpha_raw);
    } else if (key == "v") {
      read_entry(v_raw);
    } else if (key == "vper") {
      read_entry(vper_raw);
    } else if (key == "density_breakpoints") {
      double x;
      while (tokens >> x) breakpoints.push_back(x);
    } else if (key == "density_values") {
      double x;
      while (tokens >> x) values.push_back(x);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  lineno = 0;  // errors below are file-level
  if (dim == 0) throw ConfigError("config: missing 'dimension'");
  if (l < 0) throw ConfigError("config: missing 'l'");
  if (alpha_raw.empty()) throw ConfigError("config: missing 'alpha' entries");
  if (v_raw.empty()) throw ConfigError("config: missing 'v' entries");
  if (breakpoints.empty() || values.empty())
    throw ConfigError("config: missing density specification");

  auto to_map = [&](const std::vector<std::pair<std::vector<long long>, double>>&
                        raw) {
    std::map<LatticePoint, double> m;
    for (const auto& [k, val] : raw) {
      LatticePoint p(k.begin(), k.end());
      m[p] = val;
    }
    return m;
  };

  return AndersonConfig{
      dim,
      l,
      boundary_from_string(boundary),
      PeriodicPotential(dim, vper_period, to_map(vper_raw)),
      CoefficientField(dim, to_map(alpha_raw)),
      SingleSiteProfile(dim, to_map(v_raw), kappa),
      DensityBV(std::move(breakpoints), std::move(values)),
      seed};
}

AndersonConfig AndersonConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse(in);
}

std::string AndersonConfig::canonical_string() const {
  std::ostringstream out;
  out.precision(17);
  out << "dimension " << dim << "\nl " << l << "\nboundary "
      << to_string(boundary) << "\nkappa " << v.kappa() << "\nseed " << seed
      << "\nvper_period " << v_per.period() << "\n";
  auto dump = [&](const char* key, const std::map<LatticePoint, double>& m) {
    for (const auto& [k, val] : m) {
      out << key;
      for (int c : k) out << ' ' << c;
      out << ' ' << val << '\n';
    }
  };
  dump("alpha", alpha.values());
  dump("v", v.values());
  dump("vper", v_per.values());
  out << "density_breakpoints";
  for (double b : f.breakpoints()) out << ' ' << b;
  out << "\ndensity_values";
  for (double p : f.piece_values()) out << ' ' << p;
  out << '\n';
  return out.str();
}

std::string AndersonConfig::digest() const {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << fnv1a64(canonical_string());
  return out.str();
}

double Hamiltonian::sup_norm() const {
  const Eigen::MatrixXd M = dense();
  return M.cwiseAbs().rowwise().sum().maxCoeff();
}

Hamiltonian assemble_hamiltonian(const AndersonConfig& config,
                                 const std::vector<double>& omega) {
  const Box sites(config.site_box());
  const Box couplings(config.coupling_box());
  if (static_cast<std::int64_t>(omega.size()) != couplings.size())
    throw InvalidGeometry(
        "assemble_hamiltonian: omega must be indexed by Q_{l+R}");

  const GeneralizedStepPotential u = build_u(config.alpha, config.v);

  // Random potential on Q_l, scattered coupling by coupling in enumeration
  // order (fixed summation order keeps runs bit-reproducible).
  std::vector<double> potential(static_cast<std::size_t>(sites.size()), 0.0);
  LatticePoint x(config.dim);
  for (std::int64_t ki = 0; ki < couplings.size(); ++ki) {
    const LatticePoint k = couplings.point_at(ki);
    for (const auto& [a, ua] : u.values()) {
      for (int i = 0; i < config.dim; ++i) x[i] = k[i] + a[i];
      if (sites.contains(x))
        potential[static_cast<std::size_t>(sites.index_of(x))] +=
            omega[static_cast<std::size_t>(ki)] * ua;
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  const TorusProjection wrap{config.dim, config.l};
  for (std::int64_t xi = 0; xi < sites.size(); ++xi) {
    const LatticePoint p = sites.point_at(xi);
    // -Delta: hopping value -1 to each lattice neighbor present under the
    // boundary condition.
    for (int i = 0; i < config.dim; ++i) {
      for (int step : {-1, +1}) {
        LatticePoint q = p;
        q[i] += step;
        if (config.boundary == Boundary::kTruncated) {
          if (q[i] < -config.l || q[i] > config.l) continue;
        } else {
          q[i] = wrap.project_coord(q[i]);
        }
        triplets.emplace_back(static_cast<int>(xi),
                              static_cast<int>(sites.index_of(q)), -1.0);
      }
    }
    triplets.emplace_back(
        static_cast<int>(xi), static_cast<int>(xi),
        config.v_per.at(p) + potential[static_cast<std::size_t>(xi)]);
  }
  Eigen::SparseMatrix<double> H(static_cast<int>(sites.size()),
                                static_cast<int>(sites.size()));
  H.setFromTriplets(triplets.begin(), triplets.end());
  return Hamiltonian{sites, std::move(H)};
}

double wegner_constant(const AndersonConfig& config,
                       const WienerInverse& wiener) {
  if (wiener.dim != config.dim)
    throw InvalidGeometry("wegner_constant: dimension mismatch");
  return (1.0 / config.v.kappa()) * config.f.bv_norm() * wiener.column_sum_norm;
}

}  // namespace wegnerlab
