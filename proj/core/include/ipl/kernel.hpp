#pragma once

#include <span>
#include <vector>

#include "ipl/interaction.hpp"
#include "ipl/numerics.hpp"

namespace ipl {

// Boltzmann collision kernel B_s(|v - v*|, cos theta) = |v - v*|^gamma b_s(cos theta)
// for the inverse power law, and its hard-sphere limit b = 1/4.

/// Below this deviation angle the kernel is evaluated through the gap
/// representation (1 - x powers factored out) instead of phi_of_x.
inline constexpr double kGrazingSwitchAngle = 1e-2;

/// Angular part b_s(cos theta), theta in (0, pi]. Hard spheres give 1/4.
double angular_kernel_b(const InteractionParams& params, double theta,
                        const QuadratureSpec& spec = {});

/// The two evaluation routes behind angular_kernel_b, exposed so that their
/// agreement in the overlap window can be checked.
double angular_kernel_b_regular(const InteractionParams& params, double theta,
                                const QuadratureSpec& spec = {});
double angular_kernel_b_grazing(const InteractionParams& params, double theta,
                                const QuadratureSpec& spec = {});

/// g^gamma b_s(cos theta); hard spheres give g / 4.
double full_kernel_B(const InteractionParams& params, double relative_speed, double theta,
                     const QuadratureSpec& spec = {});

/// Grazing constant C_s = 2^{4/(s-1)}/(s-1) (sqrt(pi) Gamma(s/2)/Gamma((s-1)/2))^{2/(s-1)}.
/// Cross-checked against the Wallis integral W_{s-1}; throws Error on mismatch.
double singular_constant_Cs(double s);

/// W_n = int_0^{pi/2} sin^n t dt by quadrature.
double wallis_integral(double n, const QuadratureSpec& spec = {});

/// theta^{1 + 2/(s-1)} b_s(cos theta) sin theta (theta sin theta / 4 for hard spheres).
double weighted_kernel(const InteractionParams& params, double theta,
                       const QuadratureSpec& spec = {});

/// Maximum of weighted_kernel over the grid. Requires s >= 3.
double singular_sup_norm(const InteractionParams& params, std::span<const double> theta_grid,
                         const QuadratureSpec& spec = {});

/// int_0^pi theta b_s(cos theta) sin theta d theta. Finite only for s > 3;
/// pi/4 for hard spheres.
double momentum_transfer_integral(const InteractionParams& params, const QuadratureSpec& spec = {});

/// int_0^{theta_cut} theta b_s(cos theta) sin theta d theta (grazing part cut off by a sampler).
/// Returns +inf for s <= 3.
double momentum_transfer_below(const InteractionParams& params, double theta_cut,
                               const QuadratureSpec& spec = {});

/// Sampled angular kernel together with its grazing metadata.
struct AngularKernelEval {
  InteractionParams params;
  std::vector<double> theta_grid;
  std::vector<double> b_values;
  double singular_exponent;
  double C_s;
};

AngularKernelEval evaluate_angular_kernel(const InteractionParams& params,
                                          std::span<const double> theta_grid,
                                          const QuadratureSpec& spec = {});

std::vector<double> linear_grid(double lo, double hi, int count);
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace ipl
