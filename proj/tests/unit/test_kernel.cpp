#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "ipl/errors.hpp"
#include "ipl/kernel.hpp"
#include "ipl/numerics.hpp"

using namespace ipl;
using std::numbers::pi;

namespace {

// s = 3 closed form of the kernel: x = 1 - theta/pi, b = 4x / (pi (1 - x^2)^2 sin theta).
double b3(double theta) {
  const double x = 1 - theta / pi;
  return 4 * x / (pi * (1 - x * x) * (1 - x * x) * std::sin(theta));
}

// Grazing constant from std::tgamma, independent of the library's lgamma/Wallis route.
double cs_oracle(double s) {
  const double d = std::sqrt(pi) * std::tgamma(s / 2) / std::tgamma((s - 1) / 2);
  return std::exp2(4 / (s - 1)) / (s - 1) * std::pow(d, 2 / (s - 1));
}

const InteractionParams kS3 = InteractionParams::power_law(3.0);

}  // namespace

TEST_CASE("angular kernel oracles") {
  CHECK(angular_kernel_b(kS3, pi / 2) == doctest::Approx(32 / (9 * pi)).epsilon(1e-10));
  CHECK(32 / (9 * pi) == doctest::Approx(1.13177).epsilon(1e-5));
  CHECK(std::abs(angular_kernel_b(InteractionParams::power_law(100.0), pi / 2) - 0.25) < 0.02);
  for (double th : {0.1, 1.0, pi}) CHECK(angular_kernel_b(InteractionParams::hard_sphere(), th) == 0.25);
  CHECK_THROWS_AS(angular_kernel_b(kS3, 0.0), DomainError);
  CHECK_THROWS_AS(angular_kernel_b(kS3, 4.0), DomainError);
}

TEST_CASE("s = 3 kernel matches the closed form on 50 points") {
  for (int i = 1; i <= 50; ++i) {
    const double th = pi * i / 50.0 - 1e-9 * (i == 50);
    CHECK(angular_kernel_b(kS3, th) == doctest::Approx(b3(th)).epsilon(1e-6));
  }
  // At theta = pi the limit 2^{4/(s-1)} / (4 phi'(0)^2) = 4 / pi^2.
  CHECK(angular_kernel_b(kS3, pi) == doctest::Approx(4 / (pi * pi)).epsilon(1e-10));
}

TEST_CASE("regular and grazing branches agree in the overlap window") {
  for (double s : {3.0, 5.0, 7.0, 40.0, 200.0}) {
    const InteractionParams p = InteractionParams::power_law(s);
    for (double th = 1e-2; th < 1e-1; th *= 1.3) {
      CHECK(angular_kernel_b_grazing(p, th) == doctest::Approx(angular_kernel_b_regular(p, th)).epsilon(1e-6));
    }
  }
}

TEST_CASE("full kernel") {
  CHECK(full_kernel_B(InteractionParams::power_law(5.0), 7.3, pi / 2) ==
        doctest::Approx(angular_kernel_b(InteractionParams::power_law(5.0), pi / 2)).epsilon(1e-14));
  CHECK(full_kernel_B(kS3, 2.0, pi / 2) == doctest::Approx(16 / (9 * pi)).epsilon(1e-10));
  CHECK(full_kernel_B(kS3, 2.0, pi / 2) == doctest::Approx(0.56588).epsilon(1e-5));
  CHECK(full_kernel_B(InteractionParams::hard_sphere(), 2.0, pi / 3) == 0.5);
  CHECK_THROWS_AS(full_kernel_B(kS3, 0.0, 1.0), DomainError);
  CHECK(full_kernel_B(InteractionParams::power_law(9.0), 0.0, 1.0) == 0.0);
}

TEST_CASE("grazing constant") {
  CHECK(singular_constant_Cs(3.0) == doctest::Approx(pi).epsilon(1e-12));
  for (double s : {3.0, 4.0, 5.0, 7.5, 10.0, 40.0, 100.0}) {
    CHECK(singular_constant_Cs(s) == doctest::Approx(cs_oracle(s)).epsilon(1e-10));
  }
  CHECK(std::abs(1e4 * singular_constant_Cs(1e4) - 1.0) < 1e-2);
  // theta^2 b_3 sin theta -> pi as theta -> 0 from the closed form.
  CHECK(1e-6 * 1e-6 * b3(1e-6) * std::sin(1e-6) == doctest::Approx(pi).epsilon(1e-5));
  CHECK_THROWS_AS(singular_constant_Cs(2.0), DomainError);
}

TEST_CASE("Wallis integral") {
  CHECK(wallis_integral(0.0) == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(wallis_integral(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wallis_integral(2.0) == doctest::Approx(pi / 4).epsilon(1e-12));
  CHECK(wallis_integral(5.5) == doctest::Approx(std::sqrt(pi) / 2 * std::tgamma(3.25) / std::tgamma(3.75)).epsilon(1e-10));
}

TEST_CASE("grazing asymptotics") {
  for (double s : {3.0, 5.0, 10.0, 40.0}) {
    const InteractionParams p = InteractionParams::power_law(s);
    CHECK(weighted_kernel(p, 1e-3) == doctest::Approx(singular_constant_Cs(s)).epsilon(1e-2));
  }
}

TEST_CASE("uniform bound") {
  const std::vector<double> grid = log_grid(1e-4, pi, 200);
  const std::vector<double> fine = log_grid(1e-4, pi, 399);
  for (double s : {3.0, 5.0, 10.0, 40.0, 100.0}) {
    const InteractionParams p = InteractionParams::power_law(s);
    const double a = singular_sup_norm(p, grid);
    const double b = singular_sup_norm(p, fine);
    CHECK(std::isfinite(a));
    CHECK(a <= 4.0);
    CHECK(std::abs(a - b) < 1e-2 * b);
  }
  // s = 3 sup approaches C_3 = pi from below as the grid reaches 0.
  CHECK(singular_sup_norm(kS3, log_grid(1e-8, pi, 50)) == doctest::Approx(pi).epsilon(1e-6));
  CHECK(weighted_kernel(kS3, pi) == doctest::Approx(0.0).epsilon(1e-14));
  const std::vector<double> empty;
  CHECK_THROWS_AS(singular_sup_norm(kS3, empty), DomainError);
  CHECK_THROWS_AS(singular_sup_norm(InteractionParams::power_law(2.5), grid), DomainError);
}

TEST_CASE("positivity on random angles") {
  for (double s : {2.5, 3.0, 6.0, 40.0, 1000.0}) {
    const InteractionParams p = InteractionParams::power_law(s);
    for (double th : linear_grid(1e-3, pi, 40)) CHECK(angular_kernel_b(p, th) > 0.0);
  }
}

TEST_CASE("momentum transfer") {
  CHECK(momentum_transfer_integral(InteractionParams::hard_sphere()) == doctest::Approx(pi / 4).epsilon(1e-14));
  CHECK(std::abs(momentum_transfer_integral(InteractionParams::power_law(200.0)) / (pi / 4) - 1) < 0.05);
  CHECK_THROWS_AS(momentum_transfer_integral(kS3), DomainError);
  CHECK(std::isinf(momentum_transfer_below(kS3, 0.1)));

  // Independent theta-space quadrature of the chained kernel at s = 7.
  const InteractionParams p7 = InteractionParams::power_law(7.0);
  const double cut = 1e-6;
  const double c7 = singular_constant_Cs(7.0);
  const double exponent = 2.0 / 6.0;  // theta b sin theta ~ C theta^{-1/3}
  const double head = c7 * std::pow(cut, 1 - exponent) / (1 - exponent);
  const std::vector<double> bp{cut, 1e-4, 1e-2, 0.3, 1.0, 2.0, pi};
  QuadratureSpec loose;
  loose.rel_tol = 1e-8;
  const double body =
      integrate_adaptive([&](double th) { return th * angular_kernel_b(p7, th) * std::sin(th); }, bp, loose).value;
  CHECK(momentum_transfer_integral(p7) == doctest::Approx(head + body).epsilon(1e-5));

  // Hard-sphere partial integral: (sin t - t cos t) / 4.
  CHECK(momentum_transfer_below(InteractionParams::hard_sphere(), 1.0) ==
        doctest::Approx((std::sin(1.0) - std::cos(1.0)) / 4).epsilon(1e-14));
  CHECK(momentum_transfer_below(p7, pi) == doctest::Approx(momentum_transfer_integral(p7)).epsilon(1e-8));
}

TEST_CASE("momentum transfer stays under the uniform-bound majorant") {
  const std::vector<double> grid = log_grid(1e-4, pi, 200);
  double largest = 0.0;
  for (double s : {6.0, 10.0, 40.0, 200.0}) {
    const InteractionParams p = InteractionParams::power_law(s);
    const double q = 2.0 / (s - 1);
    const double bound = singular_sup_norm(p, grid) * std::pow(pi, 1 - q) / (1 - q);
    const double value = momentum_transfer_integral(p);
    CHECK(value <= 1.01 * bound);
    largest = std::max(largest, value);
  }
  CHECK(std::isfinite(largest));
}

TEST_CASE("evaluation record and grids") {
  const AngularKernelEval eval = evaluate_angular_kernel(InteractionParams::power_law(10.0), linear_grid(0.1, pi, 10));
  CHECK(eval.b_values.size() == 10);
  CHECK(eval.singular_exponent == doctest::Approx(1 + 2.0 / 9));
  CHECK(eval.C_s == doctest::Approx(singular_constant_Cs(10.0)));
  const std::vector<double> zero_grid{0.0, 1.0};
  CHECK_THROWS_AS(evaluate_angular_kernel(kS3, zero_grid), DomainError);
  const auto lg = log_grid(1e-3, pi, 200);
  CHECK(lg.size() == 200);
  CHECK(lg.front() == 1e-3);
  CHECK(lg.back() == pi);
}
