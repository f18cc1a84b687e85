#include "ipl/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ipl/errors.hpp"
#include "ipl/scattering.hpp"

namespace ipl {
namespace {

constexpr double kPi = std::numbers::pi;

void check_angle(double theta) {
  if (!(theta > 0.0) || !(theta <= kPi)) {
    throw DomainError("deviation angle must lie in (0, pi]");
  }
}

double sin_of(double theta) { return theta <= 0.5 * kPi ? std::sin(theta) : std::sin(kPi - theta); }

// b = (1/2) 2^{4/(s-1)} beta beta' x'(phi) / sin(theta), with x' = 1 / phi'(x).
double assemble(double s, const BetaDerivative& bd, double dphi, double theta) {
  return 0.5 * std::exp2(4.0 / (s - 1.0)) * bd.beta * bd.dbeta_dx / (dphi * sin_of(theta));
}

// Head-on limit theta = pi: x -> 0 and b -> 2^{4/(s-1)} / (4 phi'(0)^2).
double head_on_limit(const InteractionParams& params, const QuadratureSpec& spec) {
  const double d0 = dphi_dx(params, 0.0, spec);
  return std::exp2(4.0 / (params.exponent() - 1.0)) / (4.0 * d0 * d0);
}

}  // namespace

double angular_kernel_b_regular(const InteractionParams& params, double theta,
                                const QuadratureSpec& spec) {
  if (params.is_hard_sphere()) return 0.25;
  check_angle(theta);
  if (theta == kPi) return head_on_limit(params, spec);
  const double s = params.exponent();
  const double x = x_of_phi(params, 0.5 * (kPi - theta), spec);
  return assemble(s, beta_of_x(params, x), dphi_dx(params, x, spec), theta);
}

double angular_kernel_b_grazing(const InteractionParams& params, double theta,
                                const QuadratureSpec& spec) {
  if (params.is_hard_sphere()) return 0.25;
  check_angle(theta);
  if (theta == kPi) return head_on_limit(params, spec);
  const double s = params.exponent();
  const double gap = gap_of_complement(params, 0.5 * theta, spec);
  return assemble(s, beta_of_gap(params, gap), dphi_dx_at_gap(params, gap, spec), theta);
}

double angular_kernel_b(const InteractionParams& params, double theta, const QuadratureSpec& spec) {
  check_angle(theta);
  if (theta < kGrazingSwitchAngle) return angular_kernel_b_grazing(params, theta, spec);
  return angular_kernel_b_regular(params, theta, spec);
}

double full_kernel_B(const InteractionParams& params, double relative_speed, double theta,
                     const QuadratureSpec& spec) {
  if (!(relative_speed >= 0.0) || !std::isfinite(relative_speed)) {
    throw DomainError("relative speed must be finite and non-negative");
  }
  const double gamma = params.gamma();
  if (relative_speed == 0.0 && gamma < 0.0) {
    throw DomainError("kernel is singular at zero relative speed for s < 5");
  }
  const double speed_part = gamma == 0.0 ? 1.0 : std::pow(relative_speed, gamma);
  return speed_part * angular_kernel_b(params, theta, spec);
}

double wallis_integral(double n, const QuadratureSpec& spec) {
  if (!(n >= 0.0)) throw DomainError("Wallis integral needs n >= 0");
  // sin^n t = cos^n(pi/2 - t); the peak sits at the left end of [0, pi/2].
  const ScalarFn integrand = [n](double tau) { return std::exp(n * std::log(std::cos(tau))); };
  const std::array<double, 2> limits = {0.0, 0.5 * kPi};
  return integrate_adaptive(integrand, limits, spec).value;
}

double singular_constant_Cs(double s) {
  if (!std::isfinite(s) || !(s > 2.0)) throw DomainError("exponent must exceed 2");
  const double ratio =
      std::exp(0.5 * std::log(kPi) + std::lgamma(0.5 * s) - std::lgamma(0.5 * (s - 1.0)));
  const double wallis_ratio = (s - 1.0) * wallis_integral(s - 1.0);
  if (std::abs(wallis_ratio - ratio) > 1e-8 * ratio) {
    throw Error("Gamma and Wallis forms of phi_s'(1) disagree for s = " + std::to_string(s));
  }
  return std::exp2(4.0 / (s - 1.0)) / (s - 1.0) * std::pow(ratio, 2.0 / (s - 1.0));
}

double weighted_kernel(const InteractionParams& params, double theta, const QuadratureSpec& spec) {
  check_angle(theta);
  const double b = angular_kernel_b(params, theta, spec);
  return std::pow(theta, params.singular_exponent()) * b * sin_of(theta);
}

double singular_sup_norm(const InteractionParams& params, std::span<const double> theta_grid,
                         const QuadratureSpec& spec) {
  if (!params.is_hard_sphere() && params.exponent() < 3.0) {
    throw DomainError("uniform bound is only asserted for s >= 3");
  }
  if (theta_grid.empty()) throw DomainError("empty angle grid");
  double sup = 0.0;
  for (const double theta : theta_grid) {
    sup = std::max(sup, weighted_kernel(params, theta, spec));
  }
  return sup;
}

namespace {

// int over x in [1 - gap_max, 1] of theta(x) 2^{4/(s-1)} beta beta' dx, which equals the
// momentum-transfer integral over theta in (0, theta(1 - gap_max)). The leading
// K gap^{-2/(s-1)} behaviour is integrated analytically.
double momentum_transfer_gap_range(const InteractionParams& params, double gap_max,
                                   const QuadratureSpec& spec) {
  const double s = params.exponent();
  const double p = 2.0 / (s - 1.0);
  const double prefactor = std::exp2(4.0 / (s - 1.0));
  const double k = std::exp2((s + 1.0) / (s - 1.0)) * dphi_dx_at_one(params) / (s - 1.0);
  const GapFn remainder = [&](double, double gap) {
    const BetaDerivative bd = beta_of_gap(params, gap);
    const double theta = 2.0 * phi_complement(params, gap, spec);
    return theta * prefactor * bd.beta * bd.dbeta_dx - k * std::pow(gap, -p);
  };
  const double lo = 1.0 - gap_max;
  const double smooth = integrate_endpoint_singular_gap(remainder, lo, 1.0, spec).value;
  return smooth + k * std::pow(gap_max, 1.0 - p) / (1.0 - p);
}

}  // namespace

double momentum_transfer_integral(const InteractionParams& params, const QuadratureSpec& spec) {
  if (params.is_hard_sphere()) return 0.25 * kPi;
  if (!(params.exponent() > 3.0)) {
    throw DomainError("momentum-transfer integral diverges for s <= 3");
  }
  return momentum_transfer_gap_range(params, 1.0, spec);
}

double momentum_transfer_below(const InteractionParams& params, double theta_cut,
                               const QuadratureSpec& spec) {
  check_angle(theta_cut);
  if (params.is_hard_sphere()) {
    return 0.25 * (std::sin(theta_cut) - theta_cut * std::cos(theta_cut));
  }
  if (!(params.exponent() > 3.0)) return std::numeric_limits<double>::infinity();
  if (theta_cut == kPi) return momentum_transfer_integral(params, spec);
  const double gap = gap_of_complement(params, 0.5 * theta_cut, spec);
  return momentum_transfer_gap_range(params, gap, spec);
}

AngularKernelEval evaluate_angular_kernel(const InteractionParams& params,
                                          std::span<const double> theta_grid,
                                          const QuadratureSpec& spec) {
  AngularKernelEval eval{params, {theta_grid.begin(), theta_grid.end()}, {}, params.singular_exponent(),
                         params.is_hard_sphere() ? 0.0 : singular_constant_Cs(params.exponent())};
  eval.b_values.reserve(theta_grid.size());
  for (const double theta : theta_grid) {
    if (!params.is_hard_sphere() && theta == 0.0) {
      throw DomainError("angle grid must exclude theta = 0 for finite s");
    }
    eval.b_values.push_back(angular_kernel_b(params, theta, spec));
  }
  return eval;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1 || !(lo <= hi)) throw DomainError("linear grid needs count >= 1 and lo <= hi");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  }
  if (count > 1) grid.back() = hi;
  return grid;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0.0) || !(lo <= hi)) {
    throw DomainError("log grid needs count >= 1 and 0 < lo <= hi");
  }
  std::vector<double> grid(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) {
    grid[i] = count == 1 ? lo : std::exp(a + (b - a) * i / (count - 1));
  }
  grid.front() = lo;
  if (count > 1) grid.back() = hi;
  return grid;
}

}  // namespace ipl
