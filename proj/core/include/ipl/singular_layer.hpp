#pragma once

#include <span>
#include <vector>

#include "ipl/numerics.hpp"

namespace ipl {

// Large-s limit of the grazing layer: b_s(cos(psi / sqrt(s))) -> Phi(psi).
//
//   h(zeta, xi)  = 2 zeta + xi (1 - e^{-zeta})
//   J(xi)        = int_0^inf (1 - e^{-zeta}) / (sqrt(2 zeta) sqrt(h) (sqrt(2 zeta) + sqrt(h))) dzeta
//   psi_inf(xi)  = 2 xi J(xi)
//   psi_inf'(xi) = int_0^inf (1 - e^{-zeta}) / h^{3/2} dzeta
//   xi_inf       = psi_inf^{-1}
//   Phi(psi)     = xi_inf'/(xi_inf psi) + xi_inf'/(2 psi)
//                = 1/psi^2 + 1/(sqrt(pi) psi) + Phi0(psi)

double h_fn(double zeta, double xi);

double layer_J(double xi, const QuadratureSpec& spec = {});

/// dJ/dxi by differentiating under the integral sign.
double layer_J_prime(double xi, const QuadratureSpec& spec = {});

double psi_inf(double xi, const QuadratureSpec& spec = {});
double psi_inf_prime(double xi, const QuadratureSpec& spec = {});

struct XiInverse {
  double xi;
  double xi_prime;  // 1 / psi_inf'(xi)
};

XiInverse xi_inf(double psi, const QuadratureSpec& spec = {});

/// Phi(psi), psi > 0.
double phi_layer(double psi, const QuadratureSpec& spec = {});

/// Phi0(psi) = Phi(psi) - 1/psi^2 - 1/(sqrt(pi) psi), continuous on [0, inf).
/// Evaluated from J and J' at xi_inf(psi) in a form without the 1/psi^2
/// cancellation; the value at 0 is a Richardson extrapolation from psi = 1e-3, 2e-3.
double phi_layer_regular(double psi, const QuadratureSpec& spec = {});

/// f(psi) = 2 xi_inf'(psi) J(xi_inf(psi)).
double layer_f(double psi, const QuadratureSpec& spec = {});

/// Values of the layer functions at psi = 0, each computed from its integral.
struct LayerConstants {
  double psi_prime_inf_0;  // psi_inf'(0)
  double xi_prime_0;       // xi_inf'(0) = 1 / psi_inf'(0)
  double f0;               // 2 xi_inf'(0) J(0)
  double fprime0;          // -J'(0) / (2 J(0)^2)
  double expansion_coefficient;  // fprime0 + xi_prime_0 / 2
  double phi0_at_zero;           // Phi0(0)
};

LayerConstants layer_constants(const QuadratureSpec& spec = {});

/// Sampled layer functions on a psi grid.
struct LayerProfile {
  std::vector<double> psi_grid;
  std::vector<double> Phi_values;
  std::vector<double> Phi0_values;
  std::vector<double> xi_grid;
  std::vector<double> xi_prime;
};

LayerProfile tabulate_layer(std::span<const double> psi_grid, const QuadratureSpec& spec = {});

}  // namespace ipl
