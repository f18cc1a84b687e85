#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ipl/angle_sampler.hpp"
#include "ipl/homogeneous_sim.hpp"
#include "ipl/kernel.hpp"
#include "ipl/numerics.hpp"
#include "ipl/scattering.hpp"
#include "ipl/singular_layer.hpp"
#include "ipl_cli/cli.hpp"

namespace ipl::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// 1 when the sequence is strictly decreasing, else 0.
double decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return 0.0;
  }
  return 1.0;
}

void numerics_suite(std::vector<VerifyEntry>& out) {
  const double v = integrate_endpoint_singular([](double z) { return 1.0 / std::sqrt(1.0 - z * z); }, 0.0, 1.0).value;
  out.push_back({"endpoint_singular_arcsine", v, kPi / 2, 1e-11});
  const double semi = integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }).value;
  out.push_back({"semi_infinite_arctan", semi, kPi / 2, 1e-10});
  const double root = invert_monotone([](double x) { return x * x * x; }, 2.0, 0.0, 2.0);
  out.push_back({"invert_cube_root", root, std::cbrt(2.0), 1e-10});
}

void scattering_suite(std::vector<VerifyEntry>& out) {
  const InteractionParams s3 = InteractionParams::power_law(3.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double beta = 0.1 + 10.0 * i / 49.0;
    worst = std::max(worst, std::abs(theta_of_beta(s3, beta) - kPi * (1 - beta / std::sqrt(1 + beta * beta))));
    const double x = 0.98 * i / 49.0;
    worst = std::max(worst, std::abs(phi_of_x(s3, x) - kPi * x / 2));
  }
  out.push_back({"s3_scattering_oracle", worst, 0.0, 1e-6});
  const InteractionParams s10 = InteractionParams::power_law(10.0);
  out.push_back({"dphi_dx_at_one_s10", dphi_dx(s10, 1.0), dphi_dx_at_one(s10), 1e-8 * dphi_dx_at_one(s10)});
}

void kernel_suite(std::vector<VerifyEntry>& out) {
  out.push_back({"C_3", weighted_kernel(InteractionParams::power_law(3.0), 1e-3), kPi, 1e-6});
  out.push_back({"C_3_gamma_form", singular_constant_Cs(3.0), kPi, 1e-10});
  for (double s : {5.0, 10.0, 40.0}) {
    const double cs = singular_constant_Cs(s);
    out.push_back({"grazing_constant_s" + std::to_string(static_cast<int>(s)),
                   weighted_kernel(InteractionParams::power_law(s), 1e-3), cs, 1e-2 * cs});
  }
  out.push_back({"s_times_C_s_at_1e4", 1e4 * singular_constant_Cs(1e4), 1.0, 1e-2});

  // Hard-sphere limit at fixed angles.
  double at_200 = 0.0;
  double monotone = 1.0;
  for (double theta : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
    std::vector<double> errs;
    for (double s : {10.0, 20.0, 50.0, 100.0, 200.0}) {
      errs.push_back(std::abs(angular_kernel_b(InteractionParams::power_law(s), theta) - 0.25));
    }
    monotone = std::min(monotone, decreasing(errs));
    at_200 = std::max(at_200, errs.back());
  }
  out.push_back({"hard_sphere_limit_monotone", monotone, 1.0, 0.0});
  out.push_back({"hard_sphere_limit_at_s200", at_200, 0.0, 0.02});
  out.push_back({"b_s100_half_pi", angular_kernel_b(InteractionParams::power_law(100.0), kPi / 2), 0.25, 0.02});

  const std::vector<double> grid = log_grid(1e-4, kPi, 200);
  const std::vector<double> fine = log_grid(1e-4, kPi, 399);
  double change = 0.0;
  for (double s : {3.0, 5.0, 10.0, 40.0, 100.0}) {
    const InteractionParams p = InteractionParams::power_law(s);
    const double a = singular_sup_norm(p, grid);
    const double b = singular_sup_norm(p, fine);
    change = std::max(change, std::abs(a - b) / b);
  }
  out.push_back({"uniform_bound_grid_doubling", change, 0.0, 1e-2});
  out.push_back({"momentum_transfer_s200", momentum_transfer_integral(InteractionParams::power_law(200.0)), kPi / 4,
                 0.05 * kPi / 4});
}

void layer_suite(std::vector<VerifyEntry>& out) {
  const LayerConstants c = layer_constants();
  out.push_back({"psi_prime_inf_0", c.psi_prime_inf_0, std::sqrt(kPi / 2), 1e-8});
  out.push_back({"xi_prime_0", c.xi_prime_0, std::sqrt(2 / kPi), 1e-8});
  out.push_back({"f0", c.f0, 1.0, 1e-5});
  out.push_back({"fprime0", c.fprime0, (std::sqrt(2.0) - 1) / std::sqrt(2 * kPi), 1e-5});
  out.push_back({"fprime0_plus_half_xi_prime_0", c.expansion_coefficient, 1 / std::sqrt(kPi), 1e-5});
  out.push_back({"tail_sqrt_xi_psi_prime", std::sqrt(1e4) * psi_inf_prime(1e4), 1.0, 0.02});
  out.push_back({"tail_sqrt_xi_J", std::sqrt(1e4) * layer_J(1e4), 1.0, 0.02});
  out.push_back({"Phi_at_100", phi_layer(100.0), 0.25, 0.02 * 0.25});
  out.push_back({"Phi0_continuity", std::abs(phi_layer_regular(1e-2) - phi_layer_regular(1e-3)), 0.0, 1e-2});

  std::vector<double> mismatch;
  for (double s : {1e2, 1e3, 1e4}) {
    const InteractionParams p = InteractionParams::power_law(s);
    double worst = 0.0;
    for (double psi : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double target = phi_layer(psi);
      worst = std::max(worst, std::abs(angular_kernel_b(p, psi / std::sqrt(s)) - target) / target);
    }
    mismatch.push_back(worst);
  }
  out.push_back({"layer_matching_monotone", decreasing(mismatch), 1.0, 0.0});
  out.push_back({"layer_matching_s1e4", mismatch.back(), 0.0, 0.02});
}

void simulation_suite(std::vector<VerifyEntry>& out) {
  const AngleSampler s3 = AngleSampler::build(InteractionParams::power_law(3.0), 1e-2);
  double table_err = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double beta = s3.beta_max() * k / 100.0;
    table_err = std::max(table_err, std::abs(s3.theta_from_beta(beta) - theta_of_beta(s3.params(), beta)));
  }
  out.push_back({"sampler_table_s3", table_err, 0.0, 1e-3});

  SimulationConfig c;
  c.n_particles = 4000;
  c.params = InteractionParams::power_law(7.0);
  c.t_end = 2.0;
  const MomentRecord r = run_simulation(c);
  double drift = 0.0;
  double momentum = 0.0;
  double m6 = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    drift = std::max(drift, std::abs(r.M2[i] / r.M2[0] - 1));
    for (int a = 0; a < 3; ++a) momentum = std::max(momentum, std::abs(r.momentum[i][a] - r.momentum[0][a]));
    m6 = std::max(m6, r.M6[i] / r.M6[0]);
  }
  out.push_back({"simulation_energy_drift", drift, 0.0, 1e-9});
  out.push_back({"simulation_momentum_drift", momentum, 0.0, 1e-12});
  out.push_back({"simulation_m6_growth", m6, 1.0, 1.0});

  c.init = InitialCondition::maxwellian;
  c.n_particles = 10000;
  const MomentRecord eq = run_simulation(c);
  const double sigma = std::sqrt(720.0 / c.n_particles) / 9.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < eq.size(); ++i) {
    worst = std::max(worst, std::abs(eq.M4[i] / (eq.M2[i] * eq.M2[i]) - 5.0 / 3.0));
  }
  out.push_back({"maxwellian_kurtosis", 5.0 / 3.0 + worst, 5.0 / 3.0, 3 * sigma});
}

}  // namespace

bool VerifyEntry::passed() const { return std::abs(measured - target) <= tolerance; }

std::vector<VerifyEntry> run_verify_suite() {
  std::vector<VerifyEntry> out;
  numerics_suite(out);
  scattering_suite(out);
  kernel_suite(out);
  layer_suite(out);
  simulation_suite(out);
  return out;
}

}  // namespace ipl::cli
