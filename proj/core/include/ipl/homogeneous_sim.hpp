#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ipl/angle_sampler.hpp"
#include "ipl/interaction.hpp"

namespace ipl {

using Vec3 = std::array<double, 3>;

/// Empirical measure f(t, .) = (1/N) sum delta_{v_i}. Each ensemble owns its RNG stream.
struct ParticleEnsemble {
  std::vector<Vec3> velocities;
  std::uint64_t rng_seed = 0;
  double time = 0.0;
  std::mt19937_64 rng;
  /// Fractional collision candidates carried over to the next step.
  double candidate_carry = 0.0;
  long collisions = 0;

  ParticleEnsemble() = default;
  ParticleEnsemble(std::vector<Vec3> v, std::uint64_t seed);

  std::size_t size() const noexcept { return velocities.size(); }
};

/// v' = (v + v*)/2 + |v - v*| sigma / 2,  v'* = (v + v*)/2 - |v - v*| sigma / 2.
std::pair<Vec3, Vec3> collide(const Vec3& v, const Vec3& v_star, const Vec3& sigma);

/// Unit vector at angle theta from the unit vector k, azimuth phi around it.
Vec3 rotate_from_axis(const Vec3& k, double theta, double phi);

/// Per-particle hard-sphere collision rate at unit temperature; the time unit
/// of every run is the inverse of this rate.
double hard_sphere_reference_rate();

/// Expected number of collision candidates in time dt for majorant speed v_max.
double expected_candidates(const ParticleEnsemble& ensemble, const AngleSampler& sampler, double dt,
                           double v_max);

/// Advances the ensemble by dt with no-time-counter acceptance/rejection at
/// rate |v - v*|^gamma times the sampler mass. Requires v_max_hint >= max speed.
/// Throws RateOverflow when a pair speed exceeds 2 v_max_hint (the ensemble is
/// then partially updated) and InvalidExponent for gamma < 0.
void dsmc_step(ParticleEnsemble& ensemble, const AngleSampler& sampler, double dt,
               double v_max_hint);

double max_speed(const ParticleEnsemble& ensemble);

/// Plain moment <|v|^p>, p in {0, 2, 4, 6}.
double moments(const ParticleEnsemble& ensemble, int p);

/// Weighted moment <(1 + |v|^2)^{p/2}>, p in {0, 2, 4, 6}.
double weighted_moment(const ParticleEnsemble& ensemble, int p);

Vec3 mean_velocity(const ParticleEnsemble& ensemble);

/// Histogram plug-in estimate of int f ln f on the box [min - d, max + d]^3.
double entropy_estimate(const ParticleEnsemble& ensemble, int bins_per_axis);

/// Normalized histogram of |v| on [0, v_cap) with the overflow folded into the last bin.
std::vector<double> radial_histogram(const ParticleEnsemble& ensemble, int bins, double v_cap);

/// T_x / ((T_y + T_z) / 2).
double temperature_anisotropy(const ParticleEnsemble& ensemble);

enum class InitialCondition { bimodal, anisotropic, maxwellian };

InitialCondition parse_initial_condition(const std::string& text);
std::string to_string(InitialCondition init);

/// Draws N velocities, then removes the mean and rescales to <|v|^2> = 3.
///   bimodal:     80% at temperature 0.25, 20% at 4 (a hot minority)
///   anisotropic: temperatures (1.8, 0.6, 0.6)
///   maxwellian:  unit temperature
ParticleEnsemble initial_ensemble(InitialCondition init, int n_particles, std::uint64_t seed);

struct SimulationConfig {
  int n_particles = 10000;
  InteractionParams params = InteractionParams::hard_sphere();
  double theta_min = 1e-2;
  double dt = 0.05;
  double t_end = 3.0;
  InitialCondition init = InitialCondition::bimodal;
  std::uint64_t seed = 1;
  int record_every = 10;

  /// Throws DomainError for invalid combinations.
  void validate() const;
  long step_count() const;
};

struct MomentRecord {
  std::vector<double> times;
  std::vector<double> M0;
  std::vector<double> M2;
  std::vector<double> M4;
  std::vector<double> M6;
  std::vector<Vec3> momentum;
  std::vector<double> entropy_est;

  std::size_t size() const noexcept { return times.size(); }
  void append(const ParticleEnsemble& ensemble);
};

inline constexpr int kRecordEntropyBins = 16;

/// Called after every step with the step index (1-based) and the ensemble.
using StepHook = std::function<void(long step, const ParticleEnsemble&)>;

MomentRecord run_simulation(const SimulationConfig& config);

/// Same as run_simulation with a caller-provided sampler (shared between runs)
/// and an optional per-step hook.
MomentRecord run_simulation(const SimulationConfig& config, const AngleSampler& sampler,
                            const StepHook& hook = {});

/// Ensembles for several kernels advanced with common random numbers: every
/// member sees the same candidate pairs, acceptance variates, impact parameters
/// and azimuths. Each member on its own follows the collision law of its kernel;
/// the coupling only correlates the members, which sharpens comparisons between them.
struct CoupledEnsembles {
  std::vector<ParticleEnsemble> members;
  std::mt19937_64 rng;
  double candidate_carry = 0.0;
};

/// `count` identical members drawn as by initial_ensemble; the shared stream
/// continues the one used for the initial draw.
CoupledEnsembles coupled_initial_ensembles(InitialCondition init, int n_particles,
                                           std::uint64_t seed, std::size_t count);

/// One step for all members (samplers[k] drives members[k]). Candidates come
/// from the common majorant max_k c_k (2 v_max)^{gamma_k} over the disc of the
/// largest beta_max, with c_k = impact_scale. Throws RateOverflow when a pair
/// speed in any member exceeds 2 v_max_hint (members are then partially updated).
void coupled_dsmc_step(CoupledEnsembles& group, std::span<const AngleSampler* const> samplers,
                       double dt, double v_max_hint);

using CoupledHook = std::function<void(long step, const CoupledEnsembles&)>;

/// Runs base (its exponent and theta_min are ignored) for every sampler in
/// lockstep; returns one record per sampler.
std::vector<MomentRecord> run_coupled(const SimulationConfig& base,
                                      std::span<const AngleSampler* const> samplers,
                                      const CoupledHook& hook = {});

}  // namespace ipl
