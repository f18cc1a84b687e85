#pragma once

#include <functional>
#include <span>

namespace ipl {

/// Tolerances shared by the quadrature and inversion routines.
///
/// A result is accepted once its error estimate satisfies
/// `err <= max(rel_tol * |value|, abs_tol)`.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_refinements = 4000;

  void validate() const;
  double tolerance_for(double value) const;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

using ScalarFn = std::function<double(double)>;

/// Integrand that also receives the distance `b - x` to the singular
/// endpoint, computed without cancellation.
using GapFn = std::function<double(double x, double gap)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature over the consecutive
/// segments defined by `breakpoints` (at least two strictly increasing values).
/// Throws NonConvergence, NonFiniteIntegrand or InvalidDomain.
QuadResult integrate_adaptive(const ScalarFn& f, std::span<const double> breakpoints,
                              const QuadratureSpec& spec = {});

/// Integral over (a, b) of an integrand with at most a (b - x)^{-1/2}
/// singularity at b. The substitution x = b - u^2 makes the transformed
/// integrand bounded before adaptive refinement.
QuadResult integrate_endpoint_singular(const ScalarFn& f, double a, double b,
                                       const QuadratureSpec& spec = {});

/// Same as integrate_endpoint_singular, for integrands that need the exact
/// gap `b - x` (typically to evaluate 1 - z^n without cancellation).
QuadResult integrate_endpoint_singular_gap(const GapFn& f, double a, double b,
                                           const QuadratureSpec& spec = {});

/// Integral over (0, inf) of an integrand bounded by C min(x^{-1/2}, x^{-3/2}).
/// Splits at 1; the head uses x = t^2 and the tail x = 1/t^2.
QuadResult integrate_semi_infinite(const ScalarFn& f, const QuadratureSpec& spec = {});

/// Solves g(x) = target for a strictly increasing g on [lo, hi].
/// The bracket ends may evaluate to +/-inf. Throws BracketInvalid when the
/// target is not enclosed by g(lo), g(hi).
double invert_monotone(const ScalarFn& g, double target, double lo, double hi,
                       const QuadratureSpec& spec = {});

}  // namespace ipl
