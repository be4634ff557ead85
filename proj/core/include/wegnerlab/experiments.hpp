#ifndef WEGNERLAB_EXPERIMENTS_HPP
#define WEGNERLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wegnerlab/model.hpp"
#include "wegnerlab/spectral.hpp"

namespace wegnerlab {

/// Monte Carlo estimate of the averaged eigenvalue count in (e1, e2] against
/// the theoretical Wegner bound. pass means
///   ratio <= c_w + 3 * (std_error / (volume * |I|)).
struct WegnerReport {
  std::string config_digest;
  double e1 = 0.0;
  double e2 = 0.0;
  int realizations = 0;
  std::uint64_t seed = 0;
  double mean_count = 0.0;
  double std_error = 0.0;
  std::int64_t volume = 0;
  double ratio = 0.0;
  double c_w = 0.0;
  double slack_sigmas = 0.0;  // (c_w - ratio) / sigma_ratio
  bool pass = false;
  std::vector<int> counts;  // per-realization counts, for CSV export
};

/// Monte Carlo mean of the normalized counting function over an energy grid.
struct IdsCurve {
  std::string config_digest;
  int dim = 1;
  int box_l = 0;
  std::int64_t volume = 0;
  int realizations = 0;
  std::uint64_t seed = 0;
  std::vector<double> energies;
  std::vector<double> means;       // E { N(E) } / volume
  std::vector<double> std_errors;  // per energy
};

struct LipschitzVerdict {
  double e1 = 0.0;
  double e2 = 0.0;
  double slope = 0.0;
  double limit = 0.0;  // c_w + 3 * combined sigma of the slope
  bool pass = false;
};

struct SelfAveragingRow {
  int l = 0;
  std::int64_t volume = 0;
  double mean = 0.0;
  double variance = 0.0;
};

/// Per-size sample variances of the normalized count at a fixed energy;
/// pass requires each variance to be at most twice its predecessor.
struct SelfAveragingTable {
  std::string config_digest;
  double energy = 0.0;
  int realizations = 0;
  std::uint64_t seed = 0;
  std::vector<SelfAveragingRow> rows;
  std::vector<bool> pair_pass;
  bool pass = true;
};

/// Runs M independent realizations (parallel over a splittable seeded RNG;
/// the reduction order is fixed, so results are identical for any thread
/// count) and compares the measured ratio with the Wegner constant.
/// Propagates SymbolVanishes when alpha violates the nonvanishing hypothesis.
WegnerReport estimate_wegner(const AndersonConfig& config, double E1,
                             double E2, int M, std::uint64_t seed);

/// Per-energy Monte Carlo means of N(E)/volume with standard errors. The
/// grid must be sorted.
IdsCurve estimate_ids(const AndersonConfig& config,
                      const std::vector<double>& energies, int M,
                      std::uint64_t seed);

/// Slope check of adjacent grid pairs of an IDS curve against c_w.
std::vector<LipschitzVerdict> lipschitz_check(const IdsCurve& curve,
                                              double c_w);

/// Variance-vs-box-size table at energy E for the given increasing sizes.
SelfAveragingTable self_averaging_check(const AndersonConfig& base,
                                        const std::vector<int>& sizes,
                                        double E, int M, std::uint64_t seed);

/// Deterministic pairwise summation (fixed reduction order).
double pairwise_sum(const std::vector<double>& values);

}  // namespace wegnerlab

#endif  // WEGNERLAB_EXPERIMENTS_HPP
