#include "ipl/singular_layer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ipl/errors.hpp"

namespace ipl {
namespace {

constexpr double kRichardsonStep = 1e-3;

void check_non_negative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be finite and non-negative");
  }
}

// Phi0 from J and J' at xi: with psi = 2 xi J and psi' = 2 (J + xi J'),
// Phi0 = [J - 2 J' - (4/sqrt(pi)) J (J + xi J')] / (8 J^2 (J + xi J') xi).
double phi0_from_xi(double xi, const QuadratureSpec& spec) {
  const double j = layer_J(xi, spec);
  const double jp = layer_J_prime(xi, spec);
  const double d = j + xi * jp;
  const double numerator = j - 2.0 * jp - 4.0 * std::numbers::inv_sqrtpi * j * d;
  return numerator / (8.0 * j * j * d * xi);
}

}  // namespace

double h_fn(double zeta, double xi) {
  check_non_negative(zeta, "zeta");
  check_non_negative(xi, "xi");
  return 2.0 * zeta - xi * std::expm1(-zeta);
}

double layer_J(double xi, const QuadratureSpec& spec) {
  check_non_negative(xi, "xi");
  const ScalarFn integrand = [xi](double zeta) {
    const double e = -std::expm1(-zeta);
    const double a = std::sqrt(2.0 * zeta);
    const double sh = std::sqrt(2.0 * zeta + xi * e);
    return e / (a * sh * (a + sh));
  };
  return integrate_semi_infinite(integrand, spec).value;
}

double layer_J_prime(double xi, const QuadratureSpec& spec) {
  check_non_negative(xi, "xi");
  const ScalarFn integrand = [xi](double zeta) {
    const double e = -std::expm1(-zeta);
    const double a = std::sqrt(2.0 * zeta);
    const double h = 2.0 * zeta + xi * e;
    const double sh = std::sqrt(h);
    const double denom = a * sh + h;
    return -e * e / a * (0.5 * a / sh + 1.0) / (denom * denom);
  };
  return integrate_semi_infinite(integrand, spec).value;
}

double psi_inf(double xi, const QuadratureSpec& spec) {
  check_non_negative(xi, "xi");
  if (xi == 0.0) return 0.0;
  return 2.0 * xi * layer_J(xi, spec);
}

double psi_inf_prime(double xi, const QuadratureSpec& spec) {
  check_non_negative(xi, "xi");
  const ScalarFn integrand = [xi](double zeta) {
    const double e = -std::expm1(-zeta);
    const double h = 2.0 * zeta + xi * e;
    return e / (h * std::sqrt(h));
  };
  return integrate_semi_infinite(integrand, spec).value;
}

XiInverse xi_inf(double psi, const QuadratureSpec& spec) {
  check_non_negative(psi, "psi");
  if (psi == 0.0) return {0.0, 1.0 / psi_inf_prime(0.0, spec)};
  const ScalarFn map = [&spec](double xi) { return psi_inf(xi, spec); };
  // psi_inf grows like sqrt(pi/2) xi near 0 and 2 sqrt(xi) at infinity.
  double hi = std::max(1.0, 0.5 * psi * psi);
  while (map(hi) < psi) hi *= 4.0;
  const double xi = invert_monotone(map, psi, 0.0, hi, spec);
  return {xi, 1.0 / psi_inf_prime(xi, spec)};
}

double phi_layer(double psi, const QuadratureSpec& spec) {
  if (!(psi > 0.0) || !std::isfinite(psi)) {
    throw DomainError("Phi is defined for psi > 0; use phi_layer_regular at 0");
  }
  const XiInverse inv = xi_inf(psi, spec);
  return inv.xi_prime / (inv.xi * psi) + inv.xi_prime / (2.0 * psi);
}

double phi_layer_regular(double psi, const QuadratureSpec& spec) {
  check_non_negative(psi, "psi");
  if (psi == 0.0) {
    const double h = kRichardsonStep;
    const double at_h = phi_layer_regular(h, spec);
    const double at_2h = phi_layer_regular(2.0 * h, spec);
    const double limit = 2.0 * at_h - at_2h;
    if (!std::isfinite(limit)) {
      throw NonConvergence("Richardson extrapolation of Phi0 at 0 failed", limit, std::abs(at_h - at_2h));
    }
    return limit;
  }
  return phi0_from_xi(xi_inf(psi, spec).xi, spec);
}

double layer_f(double psi, const QuadratureSpec& spec) {
  check_non_negative(psi, "psi");
  const double xi = psi == 0.0 ? 0.0 : xi_inf(psi, spec).xi;
  const double j = layer_J(xi, spec);
  return j / (j + xi * layer_J_prime(xi, spec));
}

LayerConstants layer_constants(const QuadratureSpec& spec) {
  LayerConstants c{};
  const double j0 = layer_J(0.0, spec);
  const double jp0 = layer_J_prime(0.0, spec);
  c.psi_prime_inf_0 = psi_inf_prime(0.0, spec);
  c.xi_prime_0 = 1.0 / c.psi_prime_inf_0;
  c.f0 = 2.0 * c.xi_prime_0 * j0;
  c.fprime0 = -jp0 / (2.0 * j0 * j0);
  c.expansion_coefficient = c.fprime0 + 0.5 * c.xi_prime_0;
  c.phi0_at_zero = phi_layer_regular(0.0, spec);
  return c;
}

LayerProfile tabulate_layer(std::span<const double> psi_grid, const QuadratureSpec& spec) {
  LayerProfile profile;
  for (const double psi : psi_grid) {
    if (!(psi > 0.0)) throw DomainError("layer grid must be strictly positive");
    const XiInverse inv = xi_inf(psi, spec);
    profile.psi_grid.push_back(psi);
    profile.Phi_values.push_back(inv.xi_prime / (inv.xi * psi) + inv.xi_prime / (2.0 * psi));
    profile.Phi0_values.push_back(phi0_from_xi(inv.xi, spec));
    profile.xi_grid.push_back(inv.xi);
    profile.xi_prime.push_back(inv.xi_prime);
  }
  return profile;
}

}  // namespace ipl
