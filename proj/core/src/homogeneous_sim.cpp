#include "ipl/homogeneous_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "ipl/errors.hpp"

namespace ipl {
namespace {

double norm2(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double int_power(double r2, int p) {
  switch (p) {
    case 0: return 1.0;
    case 2: return r2;
    case 4: return r2 * r2;
    case 6: return r2 * r2 * r2;
    default: throw DomainError("moment order must be one of 0, 2, 4, 6");
  }
}

}  // namespace

ParticleEnsemble::ParticleEnsemble(std::vector<Vec3> v, std::uint64_t seed)
    : velocities(std::move(v)), rng_seed(seed), rng(seed) {}

std::pair<Vec3, Vec3> collide(const Vec3& v, const Vec3& v_star, const Vec3& sigma) {
  Vec3 rel;
  Vec3 mid;
  for (int a = 0; a < 3; ++a) {
    rel[a] = v[a] - v_star[a];
    mid[a] = 0.5 * (v[a] + v_star[a]);
  }
  const double half_g = 0.5 * std::sqrt(norm2(rel));
  Vec3 out;
  Vec3 out_star;
  for (int a = 0; a < 3; ++a) {
    out[a] = mid[a] + half_g * sigma[a];
    out_star[a] = mid[a] - half_g * sigma[a];
  }
  return {out, out_star};
}

Vec3 rotate_from_axis(const Vec3& k, double theta, double phi) {
  // The azimuth is measured from k x z, switching to k x x only near the poles, so
  // that nearby axes (as in coupled ensembles) get nearby frames almost everywhere.
  const Vec3 helper = std::abs(k[2]) < 0.99 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  Vec3 e1 = cross(k, helper);
  const double n1 = std::sqrt(norm2(e1));
  for (double& c : e1) c /= n1;
  const Vec3 e2 = cross(k, e1);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  Vec3 out;
  for (int a = 0; a < 3; ++a) out[a] = ct * k[a] + st * (cp * e1[a] + sp * e2[a]);
  return out;
}

double hard_sphere_reference_rate() { return 4.0 / std::numbers::inv_sqrtpi; }

double expected_candidates(const ParticleEnsemble& ensemble, const AngleSampler& sampler, double dt,
                           double v_max) {
  const double gamma = sampler.params().gamma();
  return 0.5 * static_cast<double>(ensemble.size()) * 2.0 * std::numbers::pi *
         sampler.total_mass() * std::pow(2.0 * v_max, gamma) * dt / hard_sphere_reference_rate();
}

void dsmc_step(ParticleEnsemble& ensemble, const AngleSampler& sampler, double dt,
               double v_max_hint) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("dt must be non-negative");
  const double gamma = sampler.params().gamma();
  if (gamma < 0.0) throw InvalidExponent("collision stepping requires gamma >= 0 (s >= 5)");
  if (dt == 0.0) return;
  const std::size_t n = ensemble.size();
  if (n < 2 || n % 2 != 0) throw DomainError("ensemble size must be even and at least 2");
  if (!(v_max_hint > 0.0)) throw DomainError("v_max_hint must be positive");

  const double candidates = expected_candidates(ensemble, sampler, dt, v_max_hint) + ensemble.candidate_carry;
  const double whole = std::floor(candidates);
  ensemble.candidate_carry = candidates - whole;
  const auto count = static_cast<long>(whole);

  auto& rng = ensemble.rng;
  auto& vel = ensemble.velocities;
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::uniform_int_distribution<std::size_t> second(0, n - 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double g_max = 2.0 * v_max_hint;

  for (long c = 0; c < count; ++c) {
    const std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    Vec3 rel;
    for (int a = 0; a < 3; ++a) rel[a] = vel[i][a] - vel[j][a];
    const double g = std::sqrt(norm2(rel));
    if (g > g_max) throw RateOverflow("relative speed exceeds the collision-rate majorant");
    const double u = unit(rng);
    if (gamma > 0.0 && u >= std::pow(g / g_max, gamma)) continue;
    if (g == 0.0) continue;
    const double theta = sampler.sample_theta(rng);
    const double azimuth = 2.0 * std::numbers::pi * unit(rng);
    for (double& r : rel) r /= g;
    const auto [vi, vj] = collide(vel[i], vel[j], rotate_from_axis(rel, theta, azimuth));
    vel[i] = vi;
    vel[j] = vj;
    ++ensemble.collisions;
  }
  ensemble.time += dt;
}

double max_speed(const ParticleEnsemble& ensemble) {
  double m = 0.0;
  for (const Vec3& v : ensemble.velocities) m = std::max(m, norm2(v));
  return std::sqrt(m);
}

double moments(const ParticleEnsemble& ensemble, int p) {
  if (ensemble.velocities.empty()) throw DomainError("empty ensemble");
  double sum = 0.0;
  for (const Vec3& v : ensemble.velocities) sum += int_power(norm2(v), p);
  return sum / static_cast<double>(ensemble.size());
}

double weighted_moment(const ParticleEnsemble& ensemble, int p) {
  if (ensemble.velocities.empty()) throw DomainError("empty ensemble");
  double sum = 0.0;
  for (const Vec3& v : ensemble.velocities) sum += int_power(1.0 + norm2(v), p);
  return sum / static_cast<double>(ensemble.size());
}

Vec3 mean_velocity(const ParticleEnsemble& ensemble) {
  Vec3 m{0.0, 0.0, 0.0};
  for (const Vec3& v : ensemble.velocities) {
    for (int a = 0; a < 3; ++a) m[a] += v[a];
  }
  for (double& c : m) c /= static_cast<double>(ensemble.size());
  return m;
}

double entropy_estimate(const ParticleEnsemble& ensemble, int bins_per_axis) {
  if (bins_per_axis < 8) throw DomainError("entropy estimate needs at least 8 bins per axis");
  if (ensemble.velocities.empty()) throw DomainError("empty ensemble");
  Vec3 lo;
  Vec3 width;
  for (int a = 0; a < 3; ++a) {
    double mn = ensemble.velocities.front()[a];
    double mx = mn;
    for (const Vec3& v : ensemble.velocities) {
      mn = std::min(mn, v[a]);
      mx = std::max(mx, v[a]);
    }
    const double pad = 1e-6 * std::max(mx - mn, 1e-12);
    lo[a] = mn - pad;
    width[a] = (mx - mn + 2.0 * pad) / bins_per_axis;
  }
  const auto b = static_cast<std::uint64_t>(bins_per_axis);
  std::unordered_map<std::uint64_t, long> counts;
  counts.reserve(ensemble.size());
  for (const Vec3& v : ensemble.velocities) {
    std::uint64_t key = 0;
    for (int a = 0; a < 3; ++a) {
      auto idx = static_cast<std::uint64_t>((v[a] - lo[a]) / width[a]);
      key = key * b + std::min(idx, b - 1);
    }
    ++counts[key];
  }
  const double n = static_cast<double>(ensemble.size());
  const double cell = width[0] * width[1] * width[2];
  // Sum in key order so the result does not depend on hash-table iteration order.
  std::vector<std::pair<std::uint64_t, long>> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  double h = 0.0;
  for (const auto& [key, c] : sorted) {
    const double p = static_cast<double>(c) / n;
    h += p * std::log(p / cell);
  }
  return h;
}

std::vector<double> radial_histogram(const ParticleEnsemble& ensemble, int bins, double v_cap) {
  if (bins < 1 || !(v_cap > 0.0)) throw DomainError("histogram needs bins >= 1 and v_cap > 0");
  std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
  const double scale = bins / v_cap;
  for (const Vec3& v : ensemble.velocities) {
    const auto idx = static_cast<std::size_t>(std::sqrt(norm2(v)) * scale);
    hist[std::min(idx, hist.size() - 1)] += 1.0;
  }
  for (double& h : hist) h /= static_cast<double>(ensemble.size());
  return hist;
}

double temperature_anisotropy(const ParticleEnsemble& ensemble) {
  const Vec3 m = mean_velocity(ensemble);
  Vec3 t{0.0, 0.0, 0.0};
  for (const Vec3& v : ensemble.velocities) {
    for (int a = 0; a < 3; ++a) t[a] += (v[a] - m[a]) * (v[a] - m[a]);
  }
  return 2.0 * t[0] / (t[1] + t[2]);
}

InitialCondition parse_initial_condition(const std::string& text) {
  if (text == "bimodal") return InitialCondition::bimodal;
  if (text == "anisotropic") return InitialCondition::anisotropic;
  if (text == "maxwellian") return InitialCondition::maxwellian;
  throw DomainError("unknown initial condition '" + text + "'");
}

std::string to_string(InitialCondition init) {
  switch (init) {
    case InitialCondition::bimodal: return "bimodal";
    case InitialCondition::anisotropic: return "anisotropic";
    case InitialCondition::maxwellian: return "maxwellian";
  }
  return "unknown";
}

ParticleEnsemble initial_ensemble(InitialCondition init, int n_particles, std::uint64_t seed) {
  if (n_particles < 2 || n_particles % 2 != 0) {
    throw DomainError("n_particles must be even and at least 2");
  }
  ParticleEnsemble ens({}, seed);
  const auto n = static_cast<std::size_t>(n_particles);
  ens.velocities.resize(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t n_cold = n * 4 / 5;
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 sd{1.0, 1.0, 1.0};
    if (init == InitialCondition::bimodal) {
      const double t = i < n_cold ? 0.25 : 4.0;
      sd = {std::sqrt(t), std::sqrt(t), std::sqrt(t)};
    } else if (init == InitialCondition::anisotropic) {
      sd = {std::sqrt(1.8), std::sqrt(0.6), std::sqrt(0.6)};
    }
    for (int a = 0; a < 3; ++a) ens.velocities[i][a] = sd[a] * normal(ens.rng);
  }
  const Vec3 m = mean_velocity(ens);
  for (Vec3& v : ens.velocities) {
    for (int a = 0; a < 3; ++a) v[a] -= m[a];
  }
  const double scale = std::sqrt(3.0 / moments(ens, 2));
  for (Vec3& v : ens.velocities) {
    for (double& c : v) c *= scale;
  }
  return ens;
}

void SimulationConfig::validate() const {
  if (n_particles < 2 || n_particles % 2 != 0) {
    throw DomainError("n_particles must be even and at least 2");
  }
  if (!params.is_hard_sphere()) {
    if (!(params.exponent() > 5.0)) {
      throw InvalidExponent("simulation requires s > 5 or hard_sphere");
    }
    if (!(theta_min > 0.0)) throw DomainError("grazing cutoff required for finite s");
    if (!(theta_min <= std::numbers::pi / 4.0)) throw DomainError("theta_min must not exceed pi/4");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be non-negative");
  if (record_every < 1) throw DomainError("record_every must be at least 1");
}

long SimulationConfig::step_count() const {
  return static_cast<long>(std::ceil(t_end / dt - 1e-9));
}

void MomentRecord::append(const ParticleEnsemble& ensemble) {
  times.push_back(ensemble.time);
  M0.push_back(moments(ensemble, 0));
  M2.push_back(moments(ensemble, 2));
  M4.push_back(moments(ensemble, 4));
  M6.push_back(moments(ensemble, 6));
  momentum.push_back(mean_velocity(ensemble));
  entropy_est.push_back(entropy_estimate(ensemble, kRecordEntropyBins));
}

MomentRecord run_simulation(const SimulationConfig& config) {
  config.validate();
  const AngleSampler sampler = AngleSampler::build(config.params, config.theta_min);
  return run_simulation(config, sampler);
}

MomentRecord run_simulation(const SimulationConfig& config, const AngleSampler& sampler,
                            const StepHook& hook) {
  config.validate();
  if (!(sampler.params() == config.params)) throw DomainError("sampler built for another exponent");
  ParticleEnsemble ens = initial_ensemble(config.init, config.n_particles, config.seed);
  MomentRecord record;
  record.append(ens);
  const long steps = config.step_count();
  for (long step = 1; step <= steps; ++step) {
    double v_max = 1.1 * max_speed(ens);
    for (;;) {
      ParticleEnsemble trial = ens;
      try {
        dsmc_step(trial, sampler, config.dt, v_max);
      } catch (const RateOverflow&) {
        v_max *= std::numbers::sqrt2;
        continue;
      }
      ens = std::move(trial);
      break;
    }
    ens.time = static_cast<double>(step) * config.dt;
    if (hook) hook(step, ens);
    if (step % config.record_every == 0 || step == steps) record.append(ens);
  }
  return record;
}

CoupledEnsembles coupled_initial_ensembles(InitialCondition init, int n_particles,
                                           std::uint64_t seed, std::size_t count) {
  if (count == 0) throw DomainError("coupled run needs at least one member");
  ParticleEnsemble first = initial_ensemble(init, n_particles, seed);
  CoupledEnsembles group;
  group.rng = first.rng;
  group.members.assign(count, first);
  return group;
}

void coupled_dsmc_step(CoupledEnsembles& group, std::span<const AngleSampler* const> samplers,
                       double dt, double v_max_hint) {
  if (samplers.size() != group.members.size()) throw DomainError("one sampler per member required");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("dt must be non-negative");
  for (const AngleSampler* s : samplers) {
    if (s->params().gamma() < 0.0) throw InvalidExponent("collision stepping requires gamma >= 0 (s >= 5)");
  }
  if (dt == 0.0) return;
  const std::size_t n = group.members.front().size();
  for (const ParticleEnsemble& m : group.members) {
    if (m.size() != n) throw DomainError("coupled members must have equal size");
  }
  if (n < 2 || n % 2 != 0) throw DomainError("ensemble size must be even and at least 2");
  if (!(v_max_hint > 0.0)) throw DomainError("v_max_hint must be positive");

  const double g_max = 2.0 * v_max_hint;
  double majorant = 0.0;
  double radius = 0.0;
  for (const AngleSampler* s : samplers) {
    majorant = std::max(majorant, s->impact_scale() * std::pow(g_max, s->params().gamma()));
    radius = std::max(radius, s->beta_max());
  }
  const double candidates = 0.5 * static_cast<double>(n) * std::numbers::pi * majorant * radius *
                                radius * dt / hard_sphere_reference_rate() +
                            group.candidate_carry;
  const double whole = std::floor(candidates);
  group.candidate_carry = candidates - whole;
  const auto count = static_cast<long>(whole);

  auto& rng = group.rng;
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::uniform_int_distribution<std::size_t> second(0, n - 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long c = 0; c < count; ++c) {
    const std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    const double u_accept = unit(rng) * majorant;
    const double beta = radius * std::sqrt(unit(rng));
    const double azimuth = 2.0 * std::numbers::pi * unit(rng);
    for (std::size_t k = 0; k < samplers.size(); ++k) {
      auto& vel = group.members[k].velocities;
      Vec3 rel;
      for (int a = 0; a < 3; ++a) rel[a] = vel[i][a] - vel[j][a];
      const double g = std::sqrt(norm2(rel));
      if (g > g_max) throw RateOverflow("relative speed exceeds the collision-rate majorant");
      const AngleSampler& sampler = *samplers[k];
      if (beta > sampler.beta_max() || g == 0.0) continue;
      if (u_accept >= sampler.impact_scale() * std::pow(g, sampler.params().gamma())) continue;
      for (double& r : rel) r /= g;
      const double theta = sampler.theta_from_beta(beta);
      const auto [vi, vj] = collide(vel[i], vel[j], rotate_from_axis(rel, theta, azimuth));
      vel[i] = vi;
      vel[j] = vj;
      ++group.members[k].collisions;
    }
  }
  for (ParticleEnsemble& m : group.members) m.time += dt;
}

std::vector<MomentRecord> run_coupled(const SimulationConfig& base,
                                      std::span<const AngleSampler* const> samplers,
                                      const CoupledHook& hook) {
  base.validate();
  CoupledEnsembles group =
      coupled_initial_ensembles(base.init, base.n_particles, base.seed, samplers.size());
  std::vector<MomentRecord> records(samplers.size());
  for (std::size_t k = 0; k < samplers.size(); ++k) records[k].append(group.members[k]);
  const long steps = base.step_count();
  for (long step = 1; step <= steps; ++step) {
    double v_max = 0.0;
    for (const ParticleEnsemble& m : group.members) v_max = std::max(v_max, max_speed(m));
    v_max *= 1.1;
    for (;;) {
      CoupledEnsembles trial = group;
      try {
        coupled_dsmc_step(trial, samplers, base.dt, v_max);
      } catch (const RateOverflow&) {
        v_max *= std::numbers::sqrt2;
        continue;
      }
      group = std::move(trial);
      break;
    }
    for (ParticleEnsemble& m : group.members) m.time = static_cast<double>(step) * base.dt;
    if (hook) hook(step, group);
    if (step % base.record_every == 0 || step == steps) {
      for (std::size_t k = 0; k < samplers.size(); ++k) records[k].append(group.members[k]);
    }
  }
  return records;
}

}  // namespace ipl
