#include "ipl/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ipl/errors.hpp"

namespace ipl {
namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

bool by_error(const Panel& a, const Panel& b) { return a.error < b.error; }

double checked(const ScalarFn& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw NonFiniteIntegrand("integrand is not finite at x = " + std::to_string(x));
  }
  return y;
}

Panel gauss_kronrod(const ScalarFn& f, double lo, double hi, long& evaluations) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = checked(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 3; ++j) {
    const int k = 2 * j + 1;
    const double dx = half * kXgk[k];
    const double sum = checked(f, center - dx) + checked(f, center + dx);
    gauss += kWg[j] * sum;
    kronrod += kWgk[k] * sum;
  }
  for (int j = 0; j < 4; ++j) {
    const int k = 2 * j;
    const double dx = half * kXgk[k];
    kronrod += kWgk[k] * (checked(f, center - dx) + checked(f, center + dx));
  }
  evaluations += 15;
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_refinements < 1) {
    throw DomainError("quadrature spec requires rel_tol > 0, abs_tol >= 0, max_refinements >= 1");
  }
}

double QuadratureSpec::tolerance_for(double value) const {
  return std::max(rel_tol * std::abs(value), abs_tol);
}

QuadResult integrate_adaptive(const ScalarFn& f, std::span<const double> breakpoints,
                              const QuadratureSpec& spec) {
  spec.validate();
  if (breakpoints.size() < 2) {
    throw InvalidDomain("integration needs at least two breakpoints");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1]) || !std::isfinite(breakpoints[i]) ||
        !std::isfinite(breakpoints[i + 1])) {
      throw InvalidDomain("integration limits must be finite and strictly increasing");
    }
  }

  long evaluations = 0;
  std::vector<Panel> heap;
  std::vector<Panel> frozen;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    heap.push_back(gauss_kronrod(f, breakpoints[i], breakpoints[i + 1], evaluations));
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto totals = [&] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      error += p.error;
    }
    for (const auto& p : frozen) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  // Splitting a panel can raise the summed estimate; report the best iterate so
  // that a larger refinement budget never yields a worse estimate.
  double best_value = value;
  double best_error = error;
  int refinements = 0;
  while (true) {
    if (error <= spec.tolerance_for(value)) {
      // The running sums drift; confirm with an exact re-summation.
      std::tie(value, error) = totals();
      if (error <= spec.tolerance_for(value)) break;
    }
    if (error < best_error) {
      best_value = value;
      best_error = error;
    }
    if (heap.empty() || refinements >= spec.max_refinements) {
      throw NonConvergence("adaptive quadrature did not reach tolerance (error estimate " +
                               std::to_string(best_error) + ")",
                           best_value, best_error);
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi) ||
        (worst.hi - worst.lo) <= 64.0 * std::numeric_limits<double>::epsilon() *
                                     std::max(std::abs(worst.lo), std::abs(worst.hi))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gauss_kronrod(f, worst.lo, mid, evaluations);
    const Panel right = gauss_kronrod(f, mid, worst.hi, evaluations);
    ++refinements;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }
  return {value, error, evaluations};
}

QuadResult integrate_endpoint_singular_gap(const GapFn& f, double a, double b,
                                           const QuadratureSpec& spec) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidDomain("endpoint-singular integral needs finite a < b");
  }
  const double span = std::sqrt(b - a);
  const ScalarFn transformed = [&](double u) {
    const double gap = u * u;
    return 2.0 * u * f(b - gap, gap);
  };
  const std::array<double, 2> limits = {0.0, span};
  return integrate_adaptive(transformed, limits, spec);
}

QuadResult integrate_endpoint_singular(const ScalarFn& f, double a, double b,
                                       const QuadratureSpec& spec) {
  return integrate_endpoint_singular_gap([&](double x, double) { return f(x); }, a, b, spec);
}

QuadResult integrate_semi_infinite(const ScalarFn& f, const QuadratureSpec& spec) {
  // t in (0,1): x = t^2; t in (1,2): x = 1/(2-t)^2.
  const ScalarFn transformed = [&](double t) {
    if (t < 1.0) return 2.0 * t * f(t * t);
    const double r = 2.0 - t;
    return 2.0 * f(1.0 / (r * r)) / (r * r * r);
  };
  const std::array<double, 3> limits = {0.0, 1.0, 2.0};
  return integrate_adaptive(transformed, limits, spec);
}

double invert_monotone(const ScalarFn& g, double target, double lo, double hi,
                       const QuadratureSpec& spec) {
  spec.validate();
  if (!(lo < hi) || std::isnan(target)) {
    throw BracketInvalid("inversion bracket must satisfy lo < hi");
  }
  const double residual_tol = spec.tolerance_for(target);
  double a = lo;
  double b = hi;
  double fa = g(a) - target;
  double fb = g(b) - target;
  if (std::isnan(fa) || std::isnan(fb)) {
    throw BracketInvalid("monotone map is undefined at the bracket ends");
  }
  if (std::abs(fa) <= residual_tol) return a;
  if (std::abs(fb) <= residual_tol) return b;
  if (fa > 0.0 || fb < 0.0) {
    throw BracketInvalid("target " + std::to_string(target) + " lies outside [g(lo), g(hi)]");
  }

  // Brent's method with a bisection fallback whenever a bracket value is infinite.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < 400; ++iter) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + std::numeric_limits<double>::min();
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= residual_tol || std::abs(xm) <= tol1) return b;

    const bool finite = std::isfinite(fa) && std::isfinite(fb) && std::isfinite(fc);
    if (finite && std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = g(b) - target;
    if (std::isnan(fb)) {
      throw NonConvergence("monotone map returned NaN inside the bracket", b, std::abs(xm));
    }
  }
  throw NonConvergence("monotone inversion exceeded its iteration budget", b, std::abs(fb));
}

}  // namespace ipl
