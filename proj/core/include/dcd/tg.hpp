#pragma once

#include "dcd/piecewise_poly.hpp"

namespace dcd {

// Lebesgue-Stieltjes integral of a continuous f against dg over the
// half-open interval [a, b), a <= b. Jumps of g at points of [a, b)
// contribute f(c) * (g(c) - g(c-)).
double stieltjes(const PiecewisePoly& f, const PiecewisePoly& g, double a, double b);

// T_g(f)(u) = g(u-) f(u) - int_0^u f dg, with int_0^u = int_[0,u) for u > 0
// and -int_[u,0) for u <= 0. The additive constant is fixed by
// T_g(f)(0) = g(0-) f(0). f must be continuous; g may jump.
double tg_apply(const PiecewisePoly& g, const PiecewisePoly& f, double u);

// Same operator, anchored at k instead: T_g(f)(u) - T_g(f)(k). For
// g = sgn(. - k) this is the Kruzhkov flux sgn(u - k)(f(u) - f(k)).
double tg_apply_relative(const PiecewisePoly& g, const PiecewisePoly& f, double u, double k);

// T_g(f) as a piecewise polynomial on the union of the breakpoints of f
// and g, with the normalization of tg_apply. The result is continuous.
PiecewisePoly tg_transform(const PiecewisePoly& g, const PiecewisePoly& f);

// C^2 convex regularization of |u - k|: equal to |u - k| for |u - k| >= eps,
// with second derivative (15 / (8 eps)) (1 - s^2)^2, s = (u - k) / eps,
// inside. Both the entropy and its derivative are exact piecewise
// polynomials.
struct MollifiedKruzhkov {
  double k;
  double eps;

  PiecewisePoly eta() const;
  PiecewisePoly eta_prime() const;
};

// sgn(u - k) as a piecewise constant with a jump at k (g(k) = +1).
PiecewisePoly sign_step(double k, Interval range = {-1.0, 1.0});

}  // namespace dcd
