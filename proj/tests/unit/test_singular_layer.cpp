#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "ipl/errors.hpp"
#include "ipl/kernel.hpp"
#include "ipl/singular_layer.hpp"

using namespace ipl;
using std::numbers::pi;

namespace {
const double kRootHalfPi = std::sqrt(pi / 2);
const double kInvSqrtPi = 1 / std::sqrt(pi);
}  // namespace

TEST_CASE("h function") {
  CHECK(h_fn(0.0, 3.0) == 0.0);
  CHECK(h_fn(1.0, 0.0) == 2.0);
  CHECK(h_fn(1.0, 2.0) == doctest::Approx(2 + 2 * (1 - std::exp(-1.0))).epsilon(1e-15));
  CHECK(h_fn(1.0, 2.0) == doctest::Approx(3.2642).epsilon(1e-4));
  CHECK_THROWS_AS(h_fn(-1.0, 0.0), DomainError);
}

TEST_CASE("psi_inf and its derivative") {
  CHECK(psi_inf(0.0) == 0.0);
  CHECK(psi_inf_prime(0.0) == doctest::Approx(kRootHalfPi).epsilon(1e-10));
  CHECK(2 * layer_J(0.0) == doctest::Approx(kRootHalfPi).epsilon(1e-10));
  CHECK(std::abs(psi_inf(1e4) / 200 - 1) < 0.02);
  CHECK(std::abs(psi_inf_prime(1e4) / 0.01 - 1) < 0.02);
  const double fd = (psi_inf(1.001) - psi_inf(0.999)) / 0.002;
  CHECK(fd == doctest::Approx(psi_inf_prime(1.0)).epsilon(1e-5));
}

TEST_CASE("J' by differentiation under the integral") {
  // J'(0) = -sqrt(pi) (sqrt 2 - 1) / (4 sqrt 2), from expanding the integrand to first order in xi.
  CHECK(layer_J_prime(0.0) == doctest::Approx(-std::sqrt(pi) * (std::sqrt(2.0) - 1) / (4 * std::sqrt(2.0))).epsilon(1e-9));
  for (double xi : {0.01, 0.5, 3.0, 40.0}) {
    const double h = 1e-4 * std::max(1.0, xi);
    const double fd = (layer_J(xi + h) - layer_J(xi - h)) / (2 * h);
    CHECK(layer_J_prime(xi) == doctest::Approx(fd).epsilon(1e-6));
    // psi' = 2 (J + xi J')
    CHECK(psi_inf_prime(xi) == doctest::Approx(2 * (layer_J(xi) + xi * layer_J_prime(xi))).epsilon(1e-9));
  }
}

TEST_CASE("xi_inf inverts psi_inf") {
  CHECK(xi_inf(0.0).xi == 0.0);
  CHECK(xi_inf(0.0).xi_prime == doctest::Approx(std::sqrt(2 / pi)).epsilon(1e-10));
  CHECK(std::abs(xi_inf(200.0).xi / 1e4 - 1) < 0.04);
  for (double psi : {0.1, 1.0, 10.0, 100.0}) {
    const XiInverse inv = xi_inf(psi);
    CHECK(psi_inf(inv.xi) == doctest::Approx(psi).epsilon(1e-8));
    CHECK(inv.xi_prime == doctest::Approx(1 / psi_inf_prime(inv.xi)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(xi_inf(-1.0), DomainError);
}

TEST_CASE("layer function limits") {
  CHECK(std::abs(phi_layer(100.0) / 0.25 - 1) < 0.02);
  const double phi0_0 = phi_layer_regular(0.0);
  const double psi = 1e-2;
  CHECK(std::abs(phi_layer(psi) - (1 / (psi * psi) + kInvSqrtPi / psi)) <= std::abs(phi0_0) + 0.1);
  CHECK_THROWS_AS(phi_layer(0.0), DomainError);
  CHECK_THROWS_AS(phi_layer_regular(-1.0), DomainError);
}

TEST_CASE("regular part") {
  // Definition rearranged: Phi0(1) = Phi(1) - 1 - 1/sqrt(pi).
  CHECK(phi_layer_regular(1.0) == doctest::Approx(phi_layer(1.0) - 1 - kInvSqrtPi).epsilon(1e-8));
  for (double psi : {0.3, 2.0, 7.0}) {
    CHECK(phi_layer_regular(psi) ==
          doctest::Approx(phi_layer(psi) - 1 / (psi * psi) - kInvSqrtPi / psi).epsilon(1e-7));
  }
  CHECK(std::abs(phi_layer_regular(1e-2) - phi_layer_regular(1e-3)) < 1e-2);
  // Richardson value at 0 against a finer extrapolation.
  const double finer = 2 * phi_layer_regular(5e-4) - phi_layer_regular(1e-3);
  CHECK(phi_layer_regular(0.0) == doctest::Approx(finer).epsilon(1e-5));
}

TEST_CASE("expansion constants") {
  const LayerConstants c = layer_constants();
  CHECK(c.psi_prime_inf_0 == doctest::Approx(kRootHalfPi).epsilon(1e-8));
  CHECK(c.xi_prime_0 == doctest::Approx(std::sqrt(2 / pi)).epsilon(1e-8));
  CHECK(std::abs(c.f0 - 1) < 1e-5);
  CHECK(std::abs(c.fprime0 - (std::sqrt(2.0) - 1) / std::sqrt(2 * pi)) < 1e-5);
  CHECK(std::abs(c.expansion_coefficient - kInvSqrtPi) < 1e-5);
  // f' at 0 by a one-sided difference of f.
  const double h = 1e-4;
  CHECK((layer_f(h) - layer_f(0.0)) / h == doctest::Approx(c.fprime0).epsilon(1e-3));
  CHECK(layer_f(0.0) == 1.0);
}

TEST_CASE("tail laws") {
  CHECK(std::sqrt(1e4) * psi_inf_prime(1e4) >= 0.98);
  CHECK(std::sqrt(1e4) * psi_inf_prime(1e4) <= 1.02);
  CHECK(std::sqrt(1e4) * layer_J(1e4) >= 0.98);
  CHECK(std::sqrt(1e4) * layer_J(1e4) <= 1.02);
}

TEST_CASE("monotone and positive on samples") {
  double previous = 0.0;
  for (double xi = 0.01; xi < 1e3; xi *= 1.7) {
    CHECK(psi_inf_prime(xi) > 0.0);
    const double v = psi_inf(xi);
    CHECK(v > previous);
    previous = v;
  }
  const std::vector<double> grid = log_grid(1e-3, 1e2, 30);
  const LayerProfile profile = tabulate_layer(grid);
  REQUIRE(profile.Phi_values.size() == grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(profile.Phi_values[k] > 0.0);
    CHECK(profile.Phi0_values[k] == doctest::Approx(phi_layer_regular(grid[k])).epsilon(1e-9));
    if (k > 0) CHECK(profile.xi_grid[k] > profile.xi_grid[k - 1]);
  }
  const std::vector<double> bad{0.0, 1.0};
  CHECK_THROWS_AS(tabulate_layer(bad), DomainError);
}

TEST_CASE("layer matching with the finite-s kernel") {
  double previous = std::numeric_limits<double>::infinity();
  for (double s : {1e2, 1e3, 1e4}) {
    const InteractionParams p = InteractionParams::power_law(s);
    double worst = 0.0;
    for (double psi : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      worst = std::max(worst, std::abs(angular_kernel_b(p, psi / std::sqrt(s)) - phi_layer(psi)) / phi_layer(psi));
    }
    CHECK(worst < previous);
    previous = worst;
  }
  CHECK(previous < 0.02);
  const InteractionParams p = InteractionParams::power_law(1e4);
  CHECK(angular_kernel_b(p, 1e-2) == doctest::Approx(phi_layer(1.0)).epsilon(0.02));
}

TEST_CASE("1/psi^2 singularity is consistent with s C_s -> 1") {
  // b_s ~ C_s theta^{-2-2/(s-1)} and theta = psi / sqrt(s) give s C_s / psi^2 at leading order.
  const double s = 1e4;
  const double psi = 0.05;
  const double from_kernel = s * singular_constant_Cs(s) * std::pow(psi / std::sqrt(s), -2.0 / (s - 1)) / (psi * psi);
  CHECK(phi_layer(psi) * psi * psi == doctest::Approx(from_kernel * psi * psi).epsilon(0.05));
}
