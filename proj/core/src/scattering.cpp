#include "ipl/scattering.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ipl/errors.hpp"

namespace ipl {
namespace {

constexpr double kPi = std::numbers::pi;

// Root solves use closed forms only, so they run to machine precision.
constexpr QuadratureSpec kRootSpec{1e-15, 1e-300, 1};

double finite_exponent(const InteractionParams& params) {
  if (params.is_hard_sphere()) {
    throw DomainError("scattering maps are undefined for hard spheres");
  }
  return params.exponent();
}

// With z = 1 - zgap: a = 1 - z^{s-1} and b = 1 - z^2, both free of cancellation.
struct Terms {
  double a;
  double b;
};

Terms terms(double s, double zgap) {
  return {-std::expm1((s - 1.0) * std::log1p(-zgap)), zgap * (2.0 - zgap)};
}

// phi_s'(x) with q = 1 - x^2 supplied by the caller.
double dphi_dx_impl(double s, double x, double q, const QuadratureSpec& spec) {
  const double x2 = x * x;
  const GapFn integrand = [s, x2, q](double, double zgap) {
    const auto [a, b] = terms(s, zgap);
    const double g = q * a + x2 * b;
    return a / (g * std::sqrt(g));
  };
  return integrate_endpoint_singular_gap(integrand, 0.0, 1.0, spec).value;
}

struct RootPoint {
  double x;
  double gap;
};

RootPoint solve_turning_point(double s, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw DomainError("impact parameter must be finite and non-negative");
  }
  if (beta == 0.0) return {0.0, 1.0};
  const double log_beta = std::log(beta);
  const double split = 0.5 * std::pow(0.75, -1.0 / (s - 1.0));
  if (beta <= split) {
    // log beta_s(x) = log x - log(1 - x^2) / (s - 1), increasing on [0, 1/2].
    const ScalarFn log_beta_of_x = [s](double x) {
      return std::log(x) - std::log1p(-x * x) / (s - 1.0);
    };
    const double x = invert_monotone(log_beta_of_x, log_beta, 0.0, 0.5, kRootSpec);
    return {x, 1.0 - x};
  }
  // -log beta_s(1 - gap), increasing in gap on [0, 1/2].
  const ScalarFn neg_log_beta = [s](double gap) {
    return -std::log1p(-gap) + std::log(gap * (2.0 - gap)) / (s - 1.0);
  };
  const double gap = invert_monotone(neg_log_beta, -log_beta, 0.0, 0.5, kRootSpec);
  return {1.0 - gap, gap};
}

BetaDerivative beta_from_q(double s, double x, double q) {
  const double inv = 1.0 / (s - 1.0);
  const double p1 = std::pow(q, -inv);
  const double beta = x * p1;
  const double dbeta = 2.0 * inv * std::pow(q, -s * inv) + (s - 3.0) * inv * p1;
  return {beta, dbeta};
}

}  // namespace

double phi_of_x(const InteractionParams& params, double x, const QuadratureSpec& spec) {
  const double s = finite_exponent(params);
  if (!(x >= 0.0) || !(x <= kMaxRegularX)) {
    throw DomainError("phi_of_x needs 0 <= x <= 1 - 1e-12 (got " + std::to_string(x) + ")");
  }
  if (x == 0.0) return 0.0;
  const double q = (1.0 - x) * (1.0 + x);
  const double x2 = x * x;
  const GapFn integrand = [s, x2, q](double, double zgap) {
    const auto [a, b] = terms(s, zgap);
    return 1.0 / std::sqrt(q * a + x2 * b);
  };
  return x * integrate_endpoint_singular_gap(integrand, 0.0, 1.0, spec).value;
}

double dphi_dx(const InteractionParams& params, double x, const QuadratureSpec& spec) {
  const double s = finite_exponent(params);
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw DomainError("dphi_dx needs 0 <= x <= 1");
  }
  return dphi_dx_impl(s, x, (1.0 - x) * (1.0 + x), spec);
}

double dphi_dx_at_one(const InteractionParams& params) {
  const double s = finite_exponent(params);
  return std::exp(0.5 * std::log(kPi) + std::lgamma(0.5 * s) - std::lgamma(0.5 * (s - 1.0)));
}

double x_of_phi(const InteractionParams& params, double phi, const QuadratureSpec& spec) {
  finite_exponent(params);
  if (!(phi >= 0.0)) throw DomainError("x_of_phi needs phi >= 0");
  if (phi == 0.0) return 0.0;
  if (!(phi < 0.5 * kPi)) {
    throw BracketInvalid("apse angle must stay below pi/2");
  }
  const ScalarFn map = [&](double x) { return phi_of_x(params, x, spec); };
  return invert_monotone(map, phi, 0.0, kMaxRegularX, spec);
}

BetaDerivative beta_of_x(const InteractionParams& params, double x) {
  const double s = finite_exponent(params);
  if (!(x >= 0.0) || !(x < 1.0)) throw DomainError("beta_of_x needs 0 <= x < 1");
  return beta_from_q(s, x, (1.0 - x) * (1.0 + x));
}

BetaDerivative beta_of_gap(const InteractionParams& params, double gap) {
  const double s = finite_exponent(params);
  if (!(gap > 0.0) || !(gap <= 1.0)) throw DomainError("beta_of_gap needs 0 < gap <= 1");
  return beta_from_q(s, 1.0 - gap, gap * (2.0 - gap));
}

double x_of_beta(const InteractionParams& params, double beta) {
  return solve_turning_point(finite_exponent(params), beta).x;
}

double gap_of_beta(const InteractionParams& params, double beta) {
  return solve_turning_point(finite_exponent(params), beta).gap;
}

double theta_of_beta(const InteractionParams& params, double beta, const QuadratureSpec& spec) {
  const double s = finite_exponent(params);
  const RootPoint root = solve_turning_point(s, beta);
  if (root.x <= 0.5) return kPi - 2.0 * phi_of_x(params, root.x, spec);
  return 2.0 * phi_complement(params, root.gap, spec);
}

double root_residual(const InteractionParams& params, double beta, double x) {
  const double s = finite_exponent(params);
  if (beta == 0.0) return x == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (x == 0.0) return 1.0;
  const double q = (1.0 - x) * (1.0 + x);
  return q - std::exp((s - 1.0) * (std::log(x) - std::log(beta)));
}

double phi_complement(const InteractionParams& params, double gap, const QuadratureSpec& spec) {
  const double s = finite_exponent(params);
  if (!(gap >= 0.0) || !(gap <= 1.0)) throw DomainError("phi_complement needs 0 <= gap <= 1");
  if (gap == 0.0) return 0.0;
  const double x = 1.0 - gap;
  const double q = gap * (2.0 - gap);
  const double x2 = x * x;
  const GapFn integrand = [s, x, x2, q](double, double zgap) {
    const auto [a, b] = terms(s, zgap);
    const double g = q * a + x2 * b;
    const double sg = std::sqrt(g);
    const double sb = std::sqrt(b);
    return a / (sb * sg * (sg + x * sb));
  };
  return q * integrate_endpoint_singular_gap(integrand, 0.0, 1.0, spec).value;
}

double dphi_dx_at_gap(const InteractionParams& params, double gap, const QuadratureSpec& spec) {
  const double s = finite_exponent(params);
  if (!(gap >= 0.0) || !(gap <= 1.0)) throw DomainError("dphi_dx_at_gap needs 0 <= gap <= 1");
  return dphi_dx_impl(s, 1.0 - gap, gap * (2.0 - gap), spec);
}

double gap_of_complement(const InteractionParams& params, double chi, const QuadratureSpec& spec) {
  finite_exponent(params);
  if (!(chi >= 0.0)) throw DomainError("angle deficit must be non-negative");
  if (chi == 0.0) return 0.0;
  if (!(chi < 0.5 * kPi)) throw BracketInvalid("angle deficit must stay below pi/2");
  const ScalarFn map = [&](double gap) { return phi_complement(params, gap, spec); };
  return invert_monotone(map, chi, 0.0, 1.0, spec);
}

ScatteringCurve::ScatteringCurve(InteractionParams params, std::vector<ScatteringNode> nodes)
    : params_(params), nodes_(std::move(nodes)) {}

ScatteringCurve ScatteringCurve::from_betas(const InteractionParams& params,
                                            std::span<const double> betas,
                                            const QuadratureSpec& spec) {
  const double s = finite_exponent(params);
  std::vector<ScatteringNode> nodes;
  nodes.reserve(betas.size());
  for (const double beta : betas) {
    if (!nodes.empty() && beta < nodes.back().beta) {
      throw DomainError("impact parameters must be non-decreasing");
    }
    const RootPoint root = solve_turning_point(s, beta);
    double phi;
    double theta;
    if (root.x <= 0.5) {
      phi = phi_of_x(params, root.x, spec);
      theta = kPi - 2.0 * phi;
    } else {
      const double chi = phi_complement(params, root.gap, spec);
      phi = 0.5 * kPi - chi;
      theta = 2.0 * chi;
    }
    double residual = 0.0;
    if (beta > 0.0) {
      const double q = root.gap * (2.0 - root.gap);
      const double qq = root.x <= 0.5 ? (1.0 - root.x) * (1.0 + root.x) : q;
      residual = qq - std::exp((s - 1.0) * (std::log(root.x) - std::log(beta)));
    }
    nodes.push_back({beta, root.x, phi, theta, residual});
  }
  return ScatteringCurve(params, std::move(nodes));
}

ScatteringCurve ScatteringCurve::tabulate(const InteractionParams& params, int linear_nodes,
                                          int log_nodes, double min_gap,
                                          const QuadratureSpec& spec) {
  const double s = finite_exponent(params);
  if (linear_nodes < 2 || log_nodes < 1 || !(min_gap > 0.0) || !(min_gap < 0.1)) {
    throw DomainError("tabulate needs linear_nodes >= 2, log_nodes >= 1, 0 < min_gap < 0.1");
  }
  std::vector<double> gaps;
  for (int i = 0; i < linear_nodes; ++i) {
    gaps.push_back(1.0 - 0.9 * i / (linear_nodes - 1));
  }
  const double log_hi = std::log(0.1);
  const double log_lo = std::log(min_gap);
  for (int i = 1; i <= log_nodes; ++i) {
    gaps.push_back(std::exp(log_hi + (log_lo - log_hi) * i / log_nodes));
  }
  std::vector<ScatteringNode> nodes;
  nodes.reserve(gaps.size());
  for (const double gap : gaps) {
    const double x = 1.0 - gap;
    if (x == 0.0) {
      nodes.push_back({0.0, 0.0, 0.0, kPi, 0.0});
      continue;
    }
    const BetaDerivative bd = beta_from_q(s, x, gap * (2.0 - gap));
    const double chi = phi_complement(params, gap, spec);
    const double residual = gap * (2.0 - gap) - std::exp((s - 1.0) * (std::log(x) - std::log(bd.beta)));
    nodes.push_back({bd.beta, x, 0.5 * kPi - chi, 2.0 * chi, residual});
  }
  return ScatteringCurve(params, std::move(nodes));
}

}  // namespace ipl
