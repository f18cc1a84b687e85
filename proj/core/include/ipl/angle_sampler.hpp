#pragma once

#include <random>
#include <vector>

#include "ipl/interaction.hpp"
#include "ipl/numerics.hpp"

namespace ipl {

/// Deviation-angle sampler for the density b_s(cos theta) sin theta on [theta_min, pi].
///
/// The mass of [theta, pi] equals 2^{4/(s-1)} beta(theta)^2 / 2, so beta^2 is
/// uniform under the target law. The table stores theta on a grid uniform in
/// beta and sampling interpolates it linearly. Hard spheres use the unit disc,
/// theta = pi - 2 asin(beta), which makes sigma uniform on the sphere.
class AngleSampler {
 public:
  static constexpr int kDefaultTableSize = 1024;

  /// theta_min in (0, pi/4] for finite s; ignored for hard spheres.
  static AngleSampler build(const InteractionParams& params, double theta_min,
                            int table_size = kDefaultTableSize, const QuadratureSpec& spec = {});

  const InteractionParams& params() const noexcept { return params_; }
  bool uniform_sigma() const noexcept { return params_.is_hard_sphere(); }
  double theta_min() const noexcept { return theta_min_; }

  /// int_{theta_min}^pi b sin theta d theta (1/2 for hard spheres).
  double total_mass() const noexcept { return total_mass_; }

  /// int_0^{theta_min} theta b sin theta d theta, the momentum-transfer mass
  /// dropped by the cutoff (0 for hard spheres).
  double neglected_momentum_transfer() const noexcept { return neglected_; }

  /// Largest sampled impact parameter (1 for hard spheres).
  double beta_max() const noexcept { return beta_max_; }

  /// 2^{4/(s-1)} (1 for hard spheres); total_mass = impact_scale beta_max^2 / 2.
  double impact_scale() const noexcept { return impact_scale_; }

  /// theta values at beta_k = beta_max k / (n - 1); decreasing from pi to theta_min.
  const std::vector<double>& theta_table() const noexcept { return theta_table_; }

  /// Fraction of the sampled mass on [theta_min, theta], evaluated from the
  /// scattering relation (not the table).
  double cdf(double theta) const;

  /// Deviation angle for a rescaled impact parameter in [0, beta_max].
  double theta_from_beta(double beta) const noexcept;

  /// Quantile function: cdf(theta_from_uniform(u)) = u for u in [0, 1).
  double theta_from_uniform(double u) const noexcept;

  double sample_theta(std::mt19937_64& rng) const;

 private:
  AngleSampler(InteractionParams params) : params_(std::move(params)) {}

  InteractionParams params_;
  double theta_min_ = 0.0;
  double total_mass_ = 0.5;
  double neglected_ = 0.0;
  double beta_max_ = 1.0;
  double impact_scale_ = 1.0;
  std::vector<double> theta_table_;
  QuadratureSpec spec_;
};

}  // namespace ipl
