#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "jmgrow/errors.hpp"

namespace jmgrow {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_depth = 40;

  bool operator==(const QuadratureSpec&) const = default;

  // Nested integrals run the inner integral one notch tighter than the outer
  // one, so inner error does not masquerade as outer convergence.
  QuadratureSpec tightened() const {
    return QuadratureSpec{abs_tol * 0.1, rel_tol * 0.1, max_depth};
  }
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value;
  double error;
};

template <class F>
PanelEstimate gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  const double value = resk * h;
  double err = std::abs(resk - resg) * h;
  // Quadpack-style sharpening: the raw Kronrod-Gauss gap overestimates the
  // Kronrod error once the panel is nearly resolved.
  if (err > 0.0) {
    const double scaled = std::pow(200.0 * err, 1.5);
    if (scaled < err) err = scaled;
  }
  return {value, err};
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [lo, hi]. A panel is accepted
// when its error estimate is below its length-prorated share of abs_tol or
// below rel_tol relative to the panel value. Throws QuadratureError (carrying
// the achieved error) when the depth limit leaves too much unresolved.
template <class F>
double integrate(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_depth < 1) {
    throw DomainError("integrate: quadrature spec must have positive tolerances");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("integrate: bounds must be finite");
  }
  if (lo > hi) throw DomainError("integrate: lower bound exceeds upper bound");
  if (lo == hi) return 0.0;

  struct Panel {
    double a, b;
    int depth;
  };
  const double total_len = hi - lo;
  std::vector<Panel> stack;
  stack.push_back({lo, hi, 0});
  double total = 0.0;
  double accepted_err = 0.0;
  double unresolved_err = 0.0;

  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const auto est = detail::gk15(f, p.a, p.b);
    if (!std::isfinite(est.value)) {
      throw QuadratureError("integrate: integrand produced a non-finite value",
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN());
    }
    const double share = spec.abs_tol * (p.b - p.a) / total_len;
    if (est.error <= share || est.error <= spec.rel_tol * std::abs(est.value)) {
      total += est.value;
      accepted_err += est.error;
    } else if (p.depth >= spec.max_depth) {
      total += est.value;
      unresolved_err += est.error;
    } else {
      const double mid = 0.5 * (p.a + p.b);
      stack.push_back({p.a, mid, p.depth + 1});
      stack.push_back({mid, p.b, p.depth + 1});
    }
  }

  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  if (unresolved_err > tol) {
    const double achieved = accepted_err + unresolved_err;
    throw QuadratureError(
        "integrate: depth limit reached with unresolved error " +
            std::to_string(unresolved_err),
        achieved, total != 0.0 ? achieved / std::abs(total) : achieved);
  }
  return total;
}

}  // namespace jmgrow
