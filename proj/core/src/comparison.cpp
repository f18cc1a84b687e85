#include "ipl/comparison.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "ipl/errors.hpp"

namespace ipl {
namespace {

struct RunOutput {
  std::vector<double> times;
  std::vector<double> m4;
  std::vector<std::vector<double>> histograms;  // one per snapshot
  double m6_growth = 0.0;
};

RunOutput run_one(const SimulationConfig& config, const AngleSampler& sampler,
                  const std::vector<long>& snapshot_steps, int bins, double v_cap) {
  RunOutput out;
  out.histograms.resize(snapshot_steps.size());
  const auto hook = [&](long step, const ParticleEnsemble& ens) {
    for (std::size_t k = 0; k < snapshot_steps.size(); ++k) {
      if (snapshot_steps[k] == step) out.histograms[k] = radial_histogram(ens, bins, v_cap);
    }
  };
  const MomentRecord record = run_simulation(config, sampler, hook);
  out.times = record.times;
  out.m4 = record.M4;
  for (const double m6 : record.M6) out.m6_growth = std::max(out.m6_growth, m6 / record.M6.front());
  return out;
}

std::vector<RunOutput> run_coupled_group(const SimulationConfig& config,
                                         const std::vector<const AngleSampler*>& samplers,
                                         const std::vector<long>& snapshot_steps, int bins,
                                         double v_cap) {
  std::vector<RunOutput> out(samplers.size());
  for (RunOutput& o : out) o.histograms.resize(snapshot_steps.size());
  const auto hook = [&](long step, const CoupledEnsembles& group) {
    for (std::size_t k = 0; k < snapshot_steps.size(); ++k) {
      if (snapshot_steps[k] != step) continue;
      for (std::size_t m = 0; m < samplers.size(); ++m) {
        out[m].histograms[k] = radial_histogram(group.members[m], bins, v_cap);
      }
    }
  };
  const std::vector<MomentRecord> records = run_coupled(config, samplers, hook);
  for (std::size_t m = 0; m < samplers.size(); ++m) {
    out[m].times = records[m].times;
    out[m].m4 = records[m].M4;
    for (const double m6 : records[m].M6) {
      out[m].m6_growth = std::max(out[m].m6_growth, m6 / records[m].M6.front());
    }
  }
  return out;
}

// Statistics of one exponent against the baseline for a multiset of seed indices.
struct Statistic {
  double sup_m4;
  double hist_l1;
};

Statistic statistic(const std::vector<RunOutput>& runs, const std::vector<RunOutput>& baseline,
                    const std::vector<std::size_t>& picks) {
  const std::size_t nt = baseline.front().m4.size();
  Statistic st{0.0, 0.0};
  const double w = 1.0 / static_cast<double>(picks.size());
  for (std::size_t t = 0; t < nt; ++t) {
    double diff = 0.0;
    for (const std::size_t k : picks) diff += runs[k].m4[t] - baseline[k].m4[t];
    st.sup_m4 = std::max(st.sup_m4, std::abs(diff * w));
  }
  const std::size_t nsnap = baseline.front().histograms.size();
  const std::size_t nbins = baseline.front().histograms.front().size();
  for (std::size_t snap = 0; snap < nsnap; ++snap) {
    double l1 = 0.0;
    for (std::size_t b = 0; b < nbins; ++b) {
      double diff = 0.0;
      for (const std::size_t k : picks) diff += runs[k].histograms[snap][b] - baseline[k].histograms[snap][b];
      l1 += std::abs(diff * w);
    }
    st.hist_l1 = std::max(st.hist_l1, l1);
  }
  return st;
}

double std_dev(const std::vector<double>& xs) {
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (const double x : xs) var += (x - mean) * (x - mean);
  return std::sqrt(var / static_cast<double>(xs.size() - 1));
}

double quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

}  // namespace

void ComparisonOptions::validate() const {
  base.validate();
  if (n_seeds < 8) throw DomainError("comparison needs at least 8 seeds");
  if (bootstrap_samples < 10) throw DomainError("bootstrap_samples must be at least 10");
  if (histogram_bins < 1 || !(histogram_v_cap > 0.0)) throw DomainError("invalid histogram settings");
  if (s_list.empty()) throw DomainError("s_list must not be empty");
  for (const double s : s_list) {
    const InteractionParams p = InteractionParams::power_law(s);
    if (!(p.exponent() > 5.0)) throw InvalidExponent("comparison requires finite exponents s > 5");
  }
  for (const double f : snapshot_fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw DomainError("snapshot fractions must lie in (0, 1]");
  }
  if (base.step_count() < 1) throw DomainError("comparison needs t_end >= dt");
}

int default_thread_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("IPL_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long requested = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || requested < 1) return 1;
  return static_cast<int>(std::min<long>(requested, hw));
}

ComparisonResult compare_exponents(const ComparisonOptions& options) {
  options.validate();
  std::vector<double> s_sorted = options.s_list;
  std::sort(s_sorted.begin(), s_sorted.end());
  s_sorted.erase(std::unique(s_sorted.begin(), s_sorted.end()), s_sorted.end());

  std::vector<AngleSampler> samplers;
  samplers.push_back(AngleSampler::build(InteractionParams::hard_sphere(), 0.0));
  for (const double s : s_sorted) {
    samplers.push_back(AngleSampler::build(InteractionParams::power_law(s), options.base.theta_min));
  }

  const long steps = options.base.step_count();
  std::vector<long> snapshot_steps;
  for (const double f : options.snapshot_fractions) {
    snapshot_steps.push_back(std::clamp(std::lround(f * static_cast<double>(steps)), 1L, steps));
  }

  const auto n_seeds = static_cast<std::size_t>(options.n_seeds);
  std::vector<std::vector<RunOutput>> runs(samplers.size(), std::vector<RunOutput>(n_seeds));
  std::vector<const AngleSampler*> sampler_ptrs;
  for (const AngleSampler& s : samplers) sampler_ptrs.push_back(&s);
  const std::size_t n_tasks = options.common_random_numbers ? n_seeds : samplers.size() * n_seeds;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t task = next++; task < n_tasks; task = next++) {
      try {
        SimulationConfig config = options.base;
        if (options.common_random_numbers) {
          config.seed = options.base.seed + task;
          auto outputs = run_coupled_group(config, sampler_ptrs, snapshot_steps,
                                           options.histogram_bins, options.histogram_v_cap);
          for (std::size_t k = 0; k < samplers.size(); ++k) runs[k][task] = std::move(outputs[k]);
        } else {
          const std::size_t which = task / n_seeds;
          const std::size_t seed_index = task % n_seeds;
          config.params = samplers[which].params();
          config.seed = options.base.seed + seed_index;
          runs[which][seed_index] = run_one(config, samplers[which], snapshot_steps,
                                            options.histogram_bins, options.histogram_v_cap);
        }
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = options.threads > 0 ? options.threads : default_thread_count();
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const std::vector<RunOutput>& baseline = runs.front();
  ComparisonResult result;
  result.times = baseline.front().times;
  result.baseline_mean_m4.assign(result.times.size(), 0.0);
  for (const RunOutput& r : baseline) {
    for (std::size_t t = 0; t < r.m4.size(); ++t) result.baseline_mean_m4[t] += r.m4[t] / static_cast<double>(n_seeds);
    result.baseline_max_m6_growth = std::max(result.baseline_max_m6_growth, r.m6_growth);
  }

  std::vector<std::size_t> identity(n_seeds);
  for (std::size_t k = 0; k < n_seeds; ++k) identity[k] = k;

  // Paired bootstrap: the same resampled seed indices for every exponent.
  const auto n_boot = static_cast<std::size_t>(options.bootstrap_samples);
  std::vector<std::vector<Statistic>> boot(s_sorted.size(), std::vector<Statistic>(n_boot));
  std::mt19937_64 rng(options.bootstrap_seed);
  std::uniform_int_distribution<std::size_t> pick(0, n_seeds - 1);
  std::vector<std::size_t> picks(n_seeds);
  for (std::size_t b = 0; b < n_boot; ++b) {
    for (std::size_t& p : picks) p = pick(rng);
    for (std::size_t i = 0; i < s_sorted.size(); ++i) boot[i][b] = statistic(runs[i + 1], baseline, picks);
  }

  for (std::size_t i = 0; i < s_sorted.size(); ++i) {
    ExponentComparison row;
    row.params = samplers[i + 1].params();
    const Statistic point = statistic(runs[i + 1], baseline, identity);
    row.sup_m4_diff = point.sup_m4;
    row.histogram_l1 = point.hist_l1;
    std::vector<double> sups;
    std::vector<double> hists;
    for (const Statistic& st : boot[i]) {
      sups.push_back(st.sup_m4);
      hists.push_back(st.hist_l1);
    }
    row.sup_m4_sigma = std_dev(sups);
    row.sup_m4_ci_low = quantile(sups, 0.025);
    row.sup_m4_ci_high = quantile(sups, 0.975);
    row.histogram_sigma = std_dev(hists);
    row.neglected_momentum_transfer = samplers[i + 1].neglected_momentum_transfer();
    row.mean_m4.assign(result.times.size(), 0.0);
    for (const RunOutput& r : runs[i + 1]) {
      for (std::size_t t = 0; t < r.m4.size(); ++t) row.mean_m4[t] += r.m4[t] / static_cast<double>(n_seeds);
      row.max_m6_growth = std::max(row.max_m6_growth, r.m6_growth);
    }
    result.rows.push_back(std::move(row));
  }

  for (std::size_t i = 0; i + 1 < s_sorted.size(); ++i) {
    PairVerdict v{};
    v.s_lower = s_sorted[i];
    v.s_upper = s_sorted[i + 1];
    v.difference = result.rows[i].sup_m4_diff - result.rows[i + 1].sup_m4_diff;
    v.histogram_difference = result.rows[i].histogram_l1 - result.rows[i + 1].histogram_l1;
    std::vector<double> diffs;
    std::vector<double> hist_diffs;
    for (std::size_t b = 0; b < n_boot; ++b) {
      diffs.push_back(boot[i][b].sup_m4 - boot[i + 1][b].sup_m4);
      hist_diffs.push_back(boot[i][b].hist_l1 - boot[i + 1][b].hist_l1);
    }
    v.sigma = std_dev(diffs);
    v.histogram_sigma = std_dev(hist_diffs);
    v.separated = v.difference > 3.0 * v.sigma;
    v.histogram_ordered = v.histogram_difference > 0.0;
    result.pairs.push_back(v);
  }
  if (!result.pairs.empty()) {
    result.monotone_decreasing = std::all_of(result.pairs.begin(), result.pairs.end(),
                                             [](const PairVerdict& v) { return v.separated; });
    result.histogram_monotone = std::all_of(result.pairs.begin(), result.pairs.end(),
                                            [](const PairVerdict& v) { return v.histogram_ordered; });
  }
  return result;
}

}  // namespace ipl
