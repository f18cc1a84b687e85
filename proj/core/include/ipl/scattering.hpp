#pragma once

#include <span>
#include <vector>

#include "ipl/interaction.hpp"
#include "ipl/numerics.hpp"

namespace ipl {

// Classical two-body scattering for U(r) = r^{1-s}.
//
// Variables: the rescaled impact parameter beta, the turning-point ratio
// x = rho / r_min in [0, 1), the apse angle phi in [0, pi/2) and the
// deviation angle theta = pi - 2 phi. All maps are strictly monotone:
// beta up => x up => phi up => theta down.
//
// Near grazing (x -> 1) the natural unknown is gap = 1 - x. The *_gap
// functions below work in that variable and never form 1 - x or
// pi/2 - phi by subtraction.

/// Largest x accepted by phi_of_x; closer to 1 use phi_complement.
inline constexpr double kMaxRegularX = 1.0 - 1e-12;

struct BetaDerivative {
  double beta;
  double dbeta_dx;
};

/// phi_s(x) = x * int_0^1 dz / sqrt(1 - z^{s-1} - x^2 (z^2 - z^{s-1})).
double phi_of_x(const InteractionParams& params, double x, const QuadratureSpec& spec = {});

/// phi_s'(x) = int_0^1 (1 - z^{s-1}) / (1 - z^{s-1} - x^2 (z^2 - z^{s-1}))^{3/2} dz, x in [0, 1].
double dphi_dx(const InteractionParams& params, double x, const QuadratureSpec& spec = {});

/// Closed form phi_s'(1) = sqrt(pi) Gamma(s/2) / Gamma((s-1)/2).
double dphi_dx_at_one(const InteractionParams& params);

/// Inverse of phi_of_x on [0, kMaxRegularX].
double x_of_phi(const InteractionParams& params, double phi, const QuadratureSpec& spec = {});

/// beta_s(x) = x (1 - x^2)^{-1/(s-1)} and its derivative.
BetaDerivative beta_of_x(const InteractionParams& params, double x);

/// Positive root x in [0, 1) of 1 - x^2 - (x / beta)^{s-1} = 0.
double x_of_beta(const InteractionParams& params, double beta);

/// Deviation angle theta(beta) = pi - 2 phi_s(x_s(beta)).
double theta_of_beta(const InteractionParams& params, double beta, const QuadratureSpec& spec = {});

/// Residual 1 - x^2 - (x / beta)^{s-1} of the turning-point equation.
double root_residual(const InteractionParams& params, double beta, double x);

/// pi/2 - phi_s(1 - gap), evaluated as
/// (1 - x^2) int_0^1 (1 - z^{s-1}) / (sqrt(1-z^2) sqrt(g) (sqrt(g) + x sqrt(1-z^2))) dz.
double phi_complement(const InteractionParams& params, double gap, const QuadratureSpec& spec = {});

/// phi_s'(1 - gap) with 1 - x^2 formed as gap (2 - gap).
double dphi_dx_at_gap(const InteractionParams& params, double gap, const QuadratureSpec& spec = {});

/// beta_s and beta_s' at x = 1 - gap, with (1 - x^2) powers formed from the gap.
BetaDerivative beta_of_gap(const InteractionParams& params, double gap);

/// gap = 1 - x_s(beta), accurate for large beta.
double gap_of_beta(const InteractionParams& params, double beta);

/// Inverse of phi_complement: the gap whose apse-angle deficit is chi.
double gap_of_complement(const InteractionParams& params, double chi, const QuadratureSpec& spec = {});

struct ScatteringNode {
  double beta;
  double x;
  double phi;
  double theta;
  double residual;
};

/// Tabulated beta <-> x <-> phi <-> theta relation for one exponent.
class ScatteringCurve {
 public:
  /// Nodes at the requested impact parameters (non-decreasing, >= 0).
  static ScatteringCurve from_betas(const InteractionParams& params, std::span<const double> betas,
                                    const QuadratureSpec& spec = {});

  /// `linear_nodes` nodes uniform in x on [0, 0.9], then `log_nodes` nodes
  /// logarithmic in 1 - x from 0.1 down to `min_gap`.
  static ScatteringCurve tabulate(const InteractionParams& params, int linear_nodes, int log_nodes,
                                  double min_gap = 1e-8, const QuadratureSpec& spec = {});

  const InteractionParams& params() const noexcept { return params_; }
  const std::vector<ScatteringNode>& nodes() const noexcept { return nodes_; }

 private:
  ScatteringCurve(InteractionParams params, std::vector<ScatteringNode> nodes);
  InteractionParams params_;
  std::vector<ScatteringNode> nodes_;
};

}  // namespace ipl
