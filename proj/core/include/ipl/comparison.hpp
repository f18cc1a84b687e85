#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ipl/homogeneous_sim.hpp"

namespace ipl {

/// Sweep of finite exponents against the hard-sphere baseline over matched seeds.
struct ComparisonOptions {
  /// Shared run settings; its exponent is ignored. Seeds are base.seed + k.
  SimulationConfig base;
  std::vector<double> s_list;
  int n_seeds = 16;
  int bootstrap_samples = 1000;
  std::uint64_t bootstrap_seed = 20240611;
  int histogram_bins = 64;
  double histogram_v_cap = 6.0;
  /// Snapshot instants for the radial histograms, as fractions of t_end.
  std::vector<double> snapshot_fractions = {0.25, 0.5, 1.0};
  /// Advance all exponents of one seed together with common random numbers
  /// (run_coupled); otherwise each (s, seed) is an independent run_simulation.
  bool common_random_numbers = true;
  /// Worker threads; 0 means default_thread_count().
  int threads = 0;

  void validate() const;
};

struct ExponentComparison {
  InteractionParams params = InteractionParams::hard_sphere();
  /// sup_t |<M4^s>(t) - <M4^inf>(t)| of the seed-averaged trajectories.
  double sup_m4_diff = 0.0;
  double sup_m4_sigma = 0.0;  // bootstrap standard deviation
  double sup_m4_ci_low = 0.0;  // 2.5% bootstrap quantile
  double sup_m4_ci_high = 0.0;  // 97.5% bootstrap quantile
  /// max over snapshots of the L1 distance between seed-averaged radial histograms.
  double histogram_l1 = 0.0;
  double histogram_sigma = 0.0;
  /// max over seeds and times of M6(t) / M6(0).
  double max_m6_growth = 0.0;
  double neglected_momentum_transfer = 0.0;
  std::vector<double> mean_m4;  // seed-averaged M4 trajectory
};

/// Paired bootstrap test of D(s_i) > D(s_{i+1}) for consecutive exponents (ascending s).
struct PairVerdict {
  double s_lower;
  double s_upper;
  double difference;  // D(s_lower) - D(s_upper)
  double sigma;       // bootstrap standard deviation of the difference
  bool separated;     // difference > 3 sigma
  double histogram_difference;
  double histogram_sigma;
  bool histogram_ordered;  // histogram_difference > 0
};

struct ComparisonResult {
  std::vector<double> times;
  std::vector<double> baseline_mean_m4;
  double baseline_max_m6_growth = 0.0;
  std::vector<ExponentComparison> rows;  // ascending s
  std::vector<PairVerdict> pairs;
  /// Present when at least two exponents were compared.
  std::optional<bool> monotone_decreasing;
  std::optional<bool> histogram_monotone;
};

ComparisonResult compare_exponents(const ComparisonOptions& options);

/// Thread count from IPL_THREADS, clamped to [1, hardware concurrency]; 1 when unset.
int default_thread_count();

}  // namespace ipl
