// wegnerlab command line interface.
//
// Subcommands: symbol-check, circulant, wegner, ids, avg-check, averaging.
// Each run writes a JSON report and (where meaningful) a CSV data file.
// Exit codes: 0 pass, 1 usage/config error, 2 bound violation,
// 3 hypothesis violation (vanishing symbol).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "wegnerlab/circulant.hpp"
#include "wegnerlab/errors.hpp"
#include "wegnerlab/experiments.hpp"
#include "wegnerlab/model.hpp"
#include "wegnerlab/rng.hpp"
#include "wegnerlab/spectral.hpp"
#include "wegnerlab/symbol.hpp"

namespace {

using nlohmann::json;
using namespace wegnerlab;

constexpr const char* kToolName = "wegnerlab";
constexpr const char* kToolVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBoundViolation = 2;
constexpr int kExitHypothesisViolation = 3;

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json report_envelope(const std::string& command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["generated_at"] = timestamp_utc();
  return j;
}

void write_report(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write report file: " + path);
  out << j.dump(2) << '\n';
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << text;
}

struct CommonOutputs {
  std::string report_path = "report.json";
  std::string csv_path = "data.csv";
};

void add_output_flags(CLI::App* cmd, CommonOutputs& out) {
  cmd->add_option("--report", out.report_path, "JSON report path")
      ->capture_default_str();
  cmd->add_option("--csv", out.csv_path, "CSV data path")
      ->capture_default_str();
}

json wegner_report_json(const WegnerReport& r) {
  json j;
  j["config_digest"] = r.config_digest;
  j["e1"] = r.e1;
  j["e2"] = r.e2;
  j["realizations"] = r.realizations;
  j["seed"] = r.seed;
  j["mean_count"] = r.mean_count;
  j["std_error"] = r.std_error;
  j["volume"] = r.volume;
  j["ratio"] = r.ratio;
  j["c_w"] = r.c_w;
  j["slack_sigmas"] = r.slack_sigmas;
  j["pass"] = r.pass;
  return j;
}

int run_symbol_check(const std::string& config_path, int grid, double tol,
                     const CommonOutputs& out) {
  const AndersonConfig config = AndersonConfig::load(config_path);
  json j = report_envelope("symbol-check");
  j["config_digest"] = config.digest();
  j["seed"] = config.seed;

  SymbolCertificate cert = certify_nonvanishing(config.alpha, grid);
  // Inconclusive certificates get a few refinement rounds before giving up.
  while (!cert.nonvanishing && !cert.definitely_vanishing &&
         cert.grid_points_per_axis < 8192)
    cert = certify_nonvanishing(config.alpha, 2 * cert.grid_points_per_axis);

  json jc;
  jc["grid_points_per_axis"] = cert.grid_points_per_axis;
  jc["min_modulus_on_grid"] = cert.min_modulus_on_grid;
  jc["lipschitz_bound"] = cert.lipschitz_bound;
  jc["certified_lower_bound"] = cert.certified_lower_bound;
  jc["nonvanishing"] = cert.nonvanishing;
  jc["definitely_vanishing"] = cert.definitely_vanishing;
  j["certificate"] = jc;

  if (!cert.nonvanishing) {
    j["pass"] = false;
    write_report(j, out.report_path);
    std::cerr << (cert.definitely_vanishing
                      ? "symbol-check: the symbol of alpha vanishes on the "
                        "torus; the Wegner bound hypothesis fails\n"
                      : "symbol-check: could not certify a nonvanishing "
                        "symbol (inconclusive up to 8192 grid points)\n");
    return kExitHypothesisViolation;
  }

  const WienerInverse wiener = wiener_inverse(config.alpha, tol);
  j["column_sum_norm"] = wiener.column_sum_norm;
  j["truncation_radius"] = wiener.truncation_radius;
  j["tail_bound"] = wiener.tail_bound;
  j["wegner_constant"] = wegner_constant(config, wiener);
  j["pass"] = true;
  write_report(j, out.report_path);

  std::string csv = "k,beta\n";
  for (const auto& [k, v] : wiener.beta) {
    std::string key;
    for (std::size_t i = 0; i < k.size(); ++i)
      key += (i ? " " : "") + std::to_string(k[i]);
    char line[64];
    std::snprintf(line, sizeof(line), ",%.17g\n", v);
    csv += key + line;
  }
  write_text(csv, out.csv_path);

  std::printf("symbol-check: ||B||_1 = %.12g (tail %.3g), C_W = %.12g\n",
              wiener.column_sum_norm, wiener.tail_bound,
              wegner_constant(config, wiener));
  return kExitPass;
}

int run_circulant(const std::string& config_path, int l, double tol,
                  const std::string& export_a, const std::string& export_b,
                  const CommonOutputs& out) {
  const AndersonConfig config = AndersonConfig::load(config_path);
  const int r = config.v.support_radius();
  const int R = config.reach();

  const CirculantOperator A = build_circulant(config.alpha, l, R);
  const CirculantOperator B = invert_circulant(A);
  const WienerInverse wiener = wiener_inverse(config.alpha, tol);
  const CirculantOperator folded = fold_laurent_inverse(wiener, l, R);

  const bool rectangle_ok =
      verify_rectangle_condition(A, config.alpha, l, r, R);
  const Eigen::MatrixXd dense_a = A.to_dense();
  const Eigen::MatrixXd dense_b = B.to_dense();
  const double residual =
      (dense_a * dense_b -
       Eigen::MatrixXd::Identity(dense_a.rows(), dense_a.cols()))
          .cwiseAbs()
          .maxCoeff();
  const double fold_diff =
      (folded.to_dense() - dense_b).cwiseAbs().maxCoeff();
  const bool norm_ok =
      B.column_sum_norm() <= wiener.column_sum_norm + wiener.tail_bound + 1e-8;
  const bool inverse_ok = residual <= 1e-10;
  const bool fold_ok = fold_diff <= wiener.tail_bound + 1e-10;
  const bool pass = rectangle_ok && inverse_ok && fold_ok && norm_ok;

  json j = report_envelope("circulant");
  j["config_digest"] = config.digest();
  j["seed"] = config.seed;
  j["l"] = l;
  j["r"] = r;
  j["R"] = R;
  j["cube_radius"] = A.radius();
  j["matrix_dim"] = A.size();
  j["min_eigenvalue_modulus"] = A.min_eigenvalue_modulus();
  j["column_sum_norm_a"] = A.column_sum_norm();
  j["column_sum_norm_b"] = B.column_sum_norm();
  j["laurent_column_sum_norm"] = wiener.column_sum_norm;
  j["tail_bound"] = wiener.tail_bound;
  j["rectangle_condition"] = rectangle_ok;
  j["inverse_residual"] = residual;
  j["fold_max_difference"] = fold_diff;
  j["pass"] = pass;
  write_report(j, out.report_path);

  if (!export_a.empty()) write_text(A.to_text(), export_a);
  if (!export_b.empty()) write_text(B.to_text(), export_b);

  std::printf(
      "circulant: dim %lld, rectangle %s, |AB - I| = %.3g, fold diff = %.3g, "
      "||B_L||_1 = %.12g <= ||B||_1 = %.12g\n",
      static_cast<long long>(A.size()), rectangle_ok ? "ok" : "FAILED",
      residual, fold_diff, B.column_sum_norm(), wiener.column_sum_norm);
  return pass ? kExitPass : kExitBoundViolation;
}

int run_wegner(const std::string& config_path, double e1, double e2, int M,
               std::uint64_t seed, bool seed_given, const CommonOutputs& out) {
  const AndersonConfig config = AndersonConfig::load(config_path);
  const std::uint64_t used_seed = seed_given ? seed : config.seed;
  const WegnerReport report = estimate_wegner(config, e1, e2, M, used_seed);

  json j = report_envelope("wegner");
  j.update(wegner_report_json(report));
  write_report(j, out.report_path);

  std::string csv = "realization,stream_seed,count\n";
  for (std::size_t i = 0; i < report.counts.size(); ++i) {
    char line[96];
    std::snprintf(line, sizeof(line), "%zu,%llu,%d\n", i,
                  static_cast<unsigned long long>(
                      derive_stream_seed(used_seed, i)),
                  report.counts[i]);
    csv += line;
  }
  write_text(csv, out.csv_path);

  std::printf(
      "wegner: mean count %.6g +- %.3g on (%g, %g], ratio %.6g vs C_W %.6g "
      "(slack %.2f sigma): %s\n",
      report.mean_count, report.std_error, e1, e2, report.ratio, report.c_w,
      report.slack_sigmas, report.pass ? "pass" : "BOUND VIOLATION");
  return report.pass ? kExitPass : kExitBoundViolation;
}

int run_ids(const std::string& config_path, double emin, double emax,
            int points, int M, std::uint64_t seed, bool seed_given,
            const CommonOutputs& out) {
  if (points < 2) throw ConfigError("ids: need at least 2 grid points");
  if (!(emin < emax)) throw ConfigError("ids: requires emin < emax");
  const AndersonConfig config = AndersonConfig::load(config_path);
  const std::uint64_t used_seed = seed_given ? seed : config.seed;

  std::vector<double> energies(points);
  for (int i = 0; i < points; ++i)
    energies[i] = emin + (emax - emin) * i / (points - 1);

  const IdsCurve curve = estimate_ids(config, energies, M, used_seed);
  const WienerInverse wiener = wiener_inverse(config.alpha, 1e-10);
  const double c_w = wegner_constant(config, wiener);
  const auto verdicts = lipschitz_check(curve, c_w);

  bool monotone_ok = true;
  for (std::size_t i = 0; i + 1 < curve.means.size(); ++i) {
    const double sigma =
        std::hypot(curve.std_errors[i], curve.std_errors[i + 1]);
    if (curve.means[i + 1] < curve.means[i] - 3.0 * sigma) monotone_ok = false;
  }
  bool lipschitz_ok = true;
  for (const auto& v : verdicts) lipschitz_ok = lipschitz_ok && v.pass;
  const bool pass = monotone_ok && lipschitz_ok;

  json j = report_envelope("ids");
  j["config_digest"] = curve.config_digest;
  j["seed"] = curve.seed;
  j["realizations"] = curve.realizations;
  j["box_l"] = curve.box_l;
  j["volume"] = curve.volume;
  j["c_w"] = c_w;
  j["energies"] = curve.energies;
  j["means"] = curve.means;
  j["std_errors"] = curve.std_errors;
  json jl = json::array();
  for (const auto& v : verdicts)
    jl.push_back({{"e1", v.e1},
                  {"e2", v.e2},
                  {"slope", v.slope},
                  {"limit", v.limit},
                  {"pass", v.pass}});
  j["lipschitz"] = jl;
  j["monotone_within_3_sigma"] = monotone_ok;
  j["pass"] = pass;
  write_report(j, out.report_path);

  std::string csv = "energy,mean,std_error\n";
  for (std::size_t i = 0; i < curve.energies.size(); ++i) {
    char line[96];
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n",
                  curve.energies[i], curve.means[i], curve.std_errors[i]);
    csv += line;
  }
  write_text(csv, out.csv_path);

  std::printf("ids: %d energies on [%g, %g], monotone %s, Lipschitz %s\n",
              points, emin, emax, monotone_ok ? "ok" : "FAILED",
              lipschitz_ok ? "ok" : "FAILED");
  return pass ? kExitPass : kExitBoundViolation;
}

int run_avg_check(const std::string& config_path,
                  const std::vector<int>& sizes, double energy, int M,
                  std::uint64_t seed, bool seed_given,
                  const CommonOutputs& out) {
  if (sizes.empty()) throw ConfigError("avg-check: need at least one size");
  const AndersonConfig config = AndersonConfig::load(config_path);
  const std::uint64_t used_seed = seed_given ? seed : config.seed;
  const SelfAveragingTable table =
      self_averaging_check(config, sizes, energy, M, used_seed);

  json j = report_envelope("avg-check");
  j["config_digest"] = table.config_digest;
  j["seed"] = table.seed;
  j["energy"] = table.energy;
  j["realizations"] = table.realizations;
  json rows = json::array();
  for (const auto& row : table.rows)
    rows.push_back({{"l", row.l},
                    {"volume", row.volume},
                    {"mean", row.mean},
                    {"variance", row.variance}});
  j["rows"] = rows;
  j["pair_pass"] = table.pair_pass;
  j["pass"] = table.pass;
  write_report(j, out.report_path);

  std::string csv = "box_l,volume,mean,variance\n";
  for (const auto& row : table.rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "%d,%lld,%.17g,%.17g\n", row.l,
                  static_cast<long long>(row.volume), row.mean, row.variance);
    csv += line;
  }
  write_text(csv, out.csv_path);

  std::printf("avg-check: variance trend at E = %g over %zu sizes: %s\n",
              energy, sizes.size(), table.pass ? "pass" : "FAILED");
  return table.pass ? kExitPass : kExitBoundViolation;
}

int run_averaging(int sites, int draws, std::uint64_t seed, double g_lo,
                  double g_hi, const CommonOutputs& out) {
  if (sites < 3 || sites % 2 == 0)
    throw ConfigError("averaging: sites must be odd and >= 3");
  const int l = (sites - 1) / 2;

  // Fixture: H0 = -Laplacian (truncated) on Q_l in d=1, weights chi_j.
  const AndersonConfig fixture{1,
                               l,
                               Boundary::kTruncated,
                               PeriodicPotential::zero(1),
                               CoefficientField(1, {{{0}, 1.0}}),
                               SingleSiteProfile::delta(1),
                               DensityBV::uniform(0.0, 1.0),
                               seed};
  const Hamiltonian H0 = assemble_hamiltonian(
      fixture, std::vector<double>(static_cast<std::size_t>(sites), 0.0));
  const DensityBV g = DensityBV::uniform(g_lo, g_hi);

  Xoshiro256PlusPlus rng(derive_stream_seed(seed, 0));
  json jd = json::array();
  std::string csv = "draw,j,interval_lo,interval_hi,lhs,bound,quad_error,pass\n";
  bool all_pass = true;
  for (int d = 0; d < draws; ++d) {
    const int j = static_cast<int>(rng.uniform() * sites) - l;
    Eigen::VectorXd phi(sites);
    for (int i = 0; i < sites; ++i) phi[i] = gaussian(rng);
    phi.normalize();
    const double lo = -2.5 + 9.0 * rng.uniform();
    const double width = 0.05 + 0.45 * rng.uniform();
    const Interval I{lo, lo + width};
    std::vector<double> w(static_cast<std::size_t>(sites), 0.0);
    w[static_cast<std::size_t>(j + l)] = 1.0;

    const AveragingResult res =
        spectral_averaging_check(H0, w, g, I, LatticePoint{j}, phi, 8);
    all_pass = all_pass && res.pass;
    jd.push_back({{"j", j},
                  {"interval", {I.lo, I.hi}},
                  {"lhs", res.lhs},
                  {"bound", res.bound},
                  {"quad_error", res.quad_error},
                  {"pass", res.pass}});
    char line[160];
    std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.3g,%d\n",
                  d, j, I.lo, I.hi, res.lhs, res.bound, res.quad_error,
                  res.pass ? 1 : 0);
    csv += line;
  }

  json j = report_envelope("averaging");
  j["seed"] = seed;
  j["sites"] = sites;
  j["draws"] = draws;
  j["density_support"] = {g_lo, g_hi};
  j["results"] = jd;
  j["pass"] = all_pass;
  write_report(j, out.report_path);
  write_text(csv, out.csv_path);

  std::printf("averaging: %d draws on the %d-site chain: %s\n", draws, sites,
              all_pass ? "pass" : "BOUND VIOLATION");
  return all_pass ? kExitPass : kExitBoundViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Wegner estimates of discrete "
               "Anderson models with sign-changing single site potentials"};
  app.require_subcommand(1);

  std::string config_path;
  CommonOutputs out;

  // symbol-check
  auto* sym = app.add_subcommand(
      "symbol-check", "Certify the nonvanishing symbol and compute ||B||_1");
  int sym_grid = 256;
  double sym_tol = 1e-10;
  sym->add_option("--config", config_path, "model config file")->required();
  sym->add_option("--grid", sym_grid, "certificate grid points per axis")
      ->capture_default_str();
  sym->add_option("--tol", sym_tol, "Wiener inversion tolerance")
      ->capture_default_str();
  add_output_flags(sym, out);

  // circulant
  auto* circ = app.add_subcommand(
      "circulant", "Build, invert and verify the finite-volume circulant");
  int circ_l = 4;
  double circ_tol = 1e-10;
  std::string export_a, export_b;
  circ->add_option("--config", config_path, "model config file")->required();
  circ->add_option("--l", circ_l, "box half-side l (requires l > R)")
      ->capture_default_str();
  circ->add_option("--tol", circ_tol, "Wiener inversion tolerance")
      ->capture_default_str();
  circ->add_option("--export-a", export_a, "write A as dense text");
  circ->add_option("--export-b", export_b, "write B as dense text");
  add_output_flags(circ, out);

  // wegner
  auto* weg = app.add_subcommand(
      "wegner", "Monte Carlo verification of the Wegner bound");
  double e1 = 0.0, e2 = 0.1;
  int weg_m = 1000;
  std::uint64_t seed = 0;
  weg->add_option("--config", config_path, "model config file")->required();
  weg->add_option("--e1", e1, "interval left endpoint")->required();
  weg->add_option("--e2", e2, "interval right endpoint")->required();
  weg->add_option("-M,--realizations", weg_m, "Monte Carlo realizations")
      ->capture_default_str();
  auto* weg_seed = weg->add_option("--seed", seed, "master seed");
  add_output_flags(weg, out);

  // ids
  auto* ids = app.add_subcommand(
      "ids", "Integrated density of states curve with Lipschitz check");
  double emin = -3.0, emax = 3.0;
  int ids_points = 20, ids_m = 200;
  ids->add_option("--config", config_path, "model config file")->required();
  ids->add_option("--emin", emin, "grid start")->capture_default_str();
  ids->add_option("--emax", emax, "grid end")->capture_default_str();
  ids->add_option("--points", ids_points, "grid points")->capture_default_str();
  ids->add_option("-M,--realizations", ids_m, "Monte Carlo realizations")
      ->capture_default_str();
  auto* ids_seed = ids->add_option("--seed", seed, "master seed");
  add_output_flags(ids, out);

  // avg-check
  auto* avg = app.add_subcommand(
      "avg-check", "Self-averaging variance table over box sizes");
  std::vector<int> sizes{4, 8, 16};
  double avg_energy = 0.0;
  int avg_m = 200;
  avg->add_option("--config", config_path, "model config file")->required();
  avg->add_option("--sizes", sizes, "box half-sides, increasing")
      ->delimiter(',')
      ->capture_default_str();
  avg->add_option("--energy", avg_energy, "probe energy")->capture_default_str();
  avg->add_option("-M,--realizations", avg_m, "realizations per size")
      ->capture_default_str();
  auto* avg_seed = avg->add_option("--seed", seed, "master seed");
  add_output_flags(avg, out);

  // averaging
  auto* spa = app.add_subcommand(
      "averaging", "Spectral averaging fixture on the d=1 chain");
  int spa_sites = 11, spa_draws = 50;
  double g_lo = 0.0, g_hi = 4.0;
  spa->add_option("--sites", spa_sites, "chain length (odd)")
      ->capture_default_str();
  spa->add_option("--draws", spa_draws, "random (phi, j, I) draws")
      ->capture_default_str();
  spa->add_option("--g-lo", g_lo, "density support start")
      ->capture_default_str();
  spa->add_option("--g-hi", g_hi, "density support end")->capture_default_str();
  spa->add_option("--seed", seed, "master seed")->capture_default_str();
  add_output_flags(spa, out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sym->parsed())
      return run_symbol_check(config_path, sym_grid, sym_tol, out);
    if (circ->parsed())
      return run_circulant(config_path, circ_l, circ_tol, export_a, export_b,
                           out);
    if (weg->parsed())
      return run_wegner(config_path, e1, e2, weg_m, seed,
                        weg_seed->count() > 0, out);
    if (ids->parsed())
      return run_ids(config_path, emin, emax, ids_points, ids_m, seed,
                     ids_seed->count() > 0, out);
    if (avg->parsed())
      return run_avg_check(config_path, sizes, avg_energy, avg_m, seed,
                           avg_seed->count() > 0, out);
    if (spa->parsed())
      return run_averaging(spa_sites, spa_draws, seed, g_lo, g_hi, out);
  } catch (const SymbolVanishes& e) {
    std::cerr << "hypothesis violation: " << e.what() << '\n';
    return kExitHypothesisViolation;
  } catch (const SingularCirculant& e) {
    std::cerr << "hypothesis violation: " << e.what() << '\n';
    return kExitHypothesisViolation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
