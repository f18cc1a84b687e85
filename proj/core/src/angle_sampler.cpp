#include "ipl/angle_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ipl/errors.hpp"
#include "ipl/kernel.hpp"
#include "ipl/scattering.hpp"

namespace ipl {

AngleSampler AngleSampler::build(const InteractionParams& params, double theta_min, int table_size,
                                 const QuadratureSpec& spec) {
  AngleSampler sampler(params);
  sampler.spec_ = spec;
  if (params.is_hard_sphere()) return sampler;

  if (!(theta_min > 0.0) || !(theta_min <= std::numbers::pi / 4.0)) {
    throw DomainError("grazing cutoff theta_min must lie in (0, pi/4]");
  }
  if (table_size < 2) throw DomainError("table_size must be at least 2");

  const double s = params.exponent();
  const double gap = gap_of_complement(params, 0.5 * theta_min, spec);
  sampler.theta_min_ = theta_min;
  sampler.beta_max_ = beta_of_gap(params, gap).beta;
  sampler.impact_scale_ = std::exp2(4.0 / (s - 1.0));
  sampler.total_mass_ = sampler.impact_scale_ * 0.5 * sampler.beta_max_ * sampler.beta_max_;
  sampler.neglected_ = momentum_transfer_below(params, theta_min, spec);

  auto& table = sampler.theta_table_;
  table.resize(static_cast<std::size_t>(table_size));
  table.front() = std::numbers::pi;
  table.back() = theta_min;
  for (int k = 1; k + 1 < table_size; ++k) {
    const double beta = sampler.beta_max_ * k / (table_size - 1);
    table[static_cast<std::size_t>(k)] = theta_of_beta(params, beta, spec);
  }
  for (std::size_t k = 1; k < table.size(); ++k) {
    if (!(table[k] < table[k - 1])) throw Error("angle table is not strictly decreasing");
  }
  return sampler;
}

double AngleSampler::cdf(double theta) const {
  if (uniform_sigma()) {
    if (theta <= 0.0) return 0.0;
    if (theta >= std::numbers::pi) return 1.0;
    return 0.5 * (1.0 - std::cos(theta));
  }
  if (theta <= theta_min_) return 0.0;
  if (theta >= std::numbers::pi) return 1.0;
  double beta;
  if (theta < std::numbers::pi / 2.0) {
    beta = beta_of_gap(params_, gap_of_complement(params_, 0.5 * theta, spec_)).beta;
  } else {
    beta = beta_of_x(params_, x_of_phi(params_, 0.5 * (std::numbers::pi - theta), spec_)).beta;
  }
  const double r = beta / beta_max_;
  return 1.0 - r * r;
}

double AngleSampler::theta_from_beta(double beta) const noexcept {
  if (uniform_sigma()) return std::numbers::pi - 2.0 * std::asin(std::min(beta, 1.0));
  const double pos = std::min(beta / beta_max_, 1.0) * static_cast<double>(theta_table_.size() - 1);
  const auto k = std::min(static_cast<std::size_t>(pos), theta_table_.size() - 2);
  const double w = pos - static_cast<double>(k);
  return theta_table_[k] + w * (theta_table_[k + 1] - theta_table_[k]);
}

double AngleSampler::theta_from_uniform(double u) const noexcept {
  if (uniform_sigma()) return std::acos(std::clamp(1.0 - 2.0 * u, -1.0, 1.0));
  return theta_from_beta(beta_max_ * std::sqrt(1.0 - u));
}

double AngleSampler::sample_theta(std::mt19937_64& rng) const {
  return theta_from_uniform(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
}

}  // namespace ipl
