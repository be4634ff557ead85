#include "wegnerlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "wegnerlab/errors.hpp"
#include "wegnerlab/rng.hpp"

namespace wegnerlab {

namespace {

double pairwise_sum_range(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_range(data, half) + pairwise_sum_range(data + half, n - half);
}

/// Runs fn(i) for i in [0, count) across a small thread pool; each index is
/// independent, so any schedule produces the same stored results.
template <typename Fn>
void parallel_for_index(int count, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      std::min<unsigned>(hw, static_cast<unsigned>(std::max(1, count)));
  if (workers <= 1 || count < 4) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<int> next{0};
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

struct MeanStats {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanStats mean_and_error(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  MeanStats stats;
  stats.mean = pairwise_sum(values) / n;
  if (n < 2) return stats;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - stats.mean;
    sq[i] = d * d;
  }
  const double variance = pairwise_sum(sq) / (n - 1);
  stats.std_error = std::sqrt(variance / n);
  return stats;
}

}  // namespace

double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum_range(values.data(), values.size());
}

WegnerReport estimate_wegner(const AndersonConfig& config, double E1,
                             double E2, int M, std::uint64_t seed) {
  if (!(E1 < E2)) throw InvalidInterval("estimate_wegner: requires E1 < E2");
  if (M < 2) throw InvalidGeometry("estimate_wegner: requires M >= 2");

  const WienerInverse wiener = wiener_inverse(config.alpha, 1e-10);

  WegnerReport report;
  report.config_digest = config.digest();
  report.e1 = E1;
  report.e2 = E2;
  report.realizations = M;
  report.seed = seed;
  report.volume = config.site_box().volume();
  report.c_w = wegner_constant(config, wiener);
  report.counts.assign(static_cast<std::size_t>(M), 0);

  const BoxSpec coupling_box = config.coupling_box();
  parallel_for_index(M, [&](int i) {
    const auto omega = sample_omega(
        config.f, coupling_box,
        derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
    const Hamiltonian H = assemble_hamiltonian(config, omega);
    report.counts[static_cast<std::size_t>(i)] = count_in_interval(H, E1, E2);
  });

  std::vector<double> counts(report.counts.begin(), report.counts.end());
  const MeanStats stats = mean_and_error(counts);
  report.mean_count = stats.mean;
  report.std_error = stats.std_error;

  const double denom = static_cast<double>(report.volume) * (E2 - E1);
  report.ratio = report.mean_count / denom;
  const double sigma_ratio = report.std_error / denom;
  if (sigma_ratio > 0.0) {
    report.slack_sigmas = (report.c_w - report.ratio) / sigma_ratio;
  } else {
    report.slack_sigmas = report.ratio <= report.c_w
                              ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
  }
  report.pass = report.ratio <= report.c_w + 3.0 * sigma_ratio;
  return report;
}

IdsCurve estimate_ids(const AndersonConfig& config,
                      const std::vector<double>& energies, int M,
                      std::uint64_t seed) {
  if (M < 2) throw InvalidGeometry("estimate_ids: requires M >= 2");
  if (!std::is_sorted(energies.begin(), energies.end()))
    throw InvalidInterval("estimate_ids: energy grid must be sorted");

  IdsCurve curve;
  curve.config_digest = config.digest();
  curve.dim = config.dim;
  curve.box_l = config.l;
  curve.volume = config.site_box().volume();
  curve.realizations = M;
  curve.seed = seed;
  curve.energies = energies;

  const BoxSpec coupling_box = config.coupling_box();
  // normalized[e] collects the M values of N(E_e)/volume.
  std::vector<std::vector<double>> normalized(
      energies.size(), std::vector<double>(static_cast<std::size_t>(M), 0.0));
  parallel_for_index(M, [&](int i) {
    const auto omega = sample_omega(
        config.f, coupling_box,
        derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
    const CountingFunction counting(assemble_hamiltonian(config, omega));
    for (std::size_t e = 0; e < energies.size(); ++e)
      normalized[e][static_cast<std::size_t>(i)] =
          static_cast<double>(counting.count_below(energies[e])) /
          static_cast<double>(curve.volume);
  });

  curve.means.resize(energies.size());
  curve.std_errors.resize(energies.size());
  for (std::size_t e = 0; e < energies.size(); ++e) {
    const MeanStats stats = mean_and_error(normalized[e]);
    curve.means[e] = stats.mean;
    curve.std_errors[e] = stats.std_error;
  }
  return curve;
}

std::vector<LipschitzVerdict> lipschitz_check(const IdsCurve& curve,
                                              double c_w) {
  std::vector<LipschitzVerdict> verdicts;
  for (std::size_t i = 0; i + 1 < curve.energies.size(); ++i) {
    LipschitzVerdict v;
    v.e1 = curve.energies[i];
    v.e2 = curve.energies[i + 1];
    const double de = v.e2 - v.e1;
    v.slope = (curve.means[i + 1] - curve.means[i]) / de;
    const double sigma_slope =
        std::hypot(curve.std_errors[i], curve.std_errors[i + 1]) / de;
    v.limit = c_w + 3.0 * sigma_slope;
    v.pass = v.slope <= v.limit;
    verdicts.push_back(v);
  }
  return verdicts;
}

SelfAveragingTable self_averaging_check(const AndersonConfig& base,
                                        const std::vector<int>& sizes,
                                        double E, int M, std::uint64_t seed) {
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw InvalidGeometry("self_averaging_check: sizes must be increasing");
  if (M < 2) throw InvalidGeometry("self_averaging_check: requires M >= 2");

  SelfAveragingTable table;
  table.config_digest = base.digest();
  table.energy = E;
  table.realizations = M;
  table.seed = seed;

  for (std::size_t si = 0; si < sizes.size(); ++si) {
    AndersonConfig config = base;
    config.l = sizes[si];
    const BoxSpec coupling_box = config.coupling_box();
    const std::int64_t volume = config.site_box().volume();

    std::vector<double> normalized(static_cast<std::size_t>(M), 0.0);
    parallel_for_index(M, [&](int i) {
      // Streams are salted by the size index so boxes are independent.
      const auto omega = sample_omega(
          config.f, coupling_box,
          derive_stream_seed(seed + 0x1000003 * (si + 1),
                             static_cast<std::uint64_t>(i)));
      const Hamiltonian H = assemble_hamiltonian(config, omega);
      normalized[static_cast<std::size_t>(i)] =
          static_cast<double>(count_below(H, E)) / static_cast<double>(volume);
    });

    const MeanStats stats = mean_and_error(normalized);
    const double variance =
        stats.std_error * stats.std_error * static_cast<double>(M);
    table.rows.push_back(
        SelfAveragingRow{sizes[si], volume, stats.mean, variance});
  }
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const bool ok =
        table.rows[i + 1].variance <= 2.0 * table.rows[i].variance + 1e-15;
    table.pair_pass.push_back(ok);
    table.pass = table.pass && ok;
  }
  return table;
}

}  // namespace wegnerlab
