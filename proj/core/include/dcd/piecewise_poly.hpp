#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcd/polynomial.hpp"

namespace dcd {

// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double u) const { return u >= lo && u <= hi; }
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// What happens outside [breakpoints.front(), breakpoints.back()].
enum class Extension {
  kExtend,  // end pieces continue as polynomials
  kStrict,  // evaluation outside the range is a DomainError
};

// Scalar function of u given by breakpoints b_0 < ... < b_m and one
// polynomial per interval [b_i, b_{i+1}). Values at interior breakpoints
// are taken from the right piece; left_limit() gives the other side.
class PiecewisePoly {
 public:
  PiecewisePoly(std::vector<double> breakpoints, std::vector<Polynomial> pieces,
                Extension extension = Extension::kExtend);

  static PiecewisePoly constant(double c, Interval range = {-1.0, 1.0});
  static PiecewisePoly from_polynomial(const Polynomial& p, Interval range = {-1.0, 1.0},
                                       Extension extension = Extension::kExtend);
  // Global monomial coefficients (constant first) on one piece.
  static PiecewisePoly monomial(std::vector<double> coeffs, Interval range = {-1.0, 1.0});

  double operator()(double u) const;
  double left_limit(double u) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  Extension extension() const { return extension_; }
  std::size_t num_pieces() const { return pieces_.size(); }
  Interval range() const { return {breakpoints_.front(), breakpoints_.back()}; }
  // Where the function may be evaluated: range() if strict, else all of R.
  Interval domain() const;
  bool in_domain(double u) const;

  // Index of the piece whose half-open interval holds u (end pieces absorb
  // the extension). Throws DomainError for strict functions out of range.
  std::size_t piece_index(double u) const;

  // Adjacent pieces agree at interior breakpoints within
  // tol * max(1, |value|).
  bool is_continuous(double tol = 1e-12) const;
  // Right value minus left limit at interior breakpoint i (0 < i < m).
  double jump(std::size_t i) const;

  PiecewisePoly derivative() const;
  // Continuous antiderivative normalized to vanish at u = 0.
  PiecewisePoly primitive() const;

  // Same function on the union of the current and the extra breakpoints.
  PiecewisePoly refined(std::span<const double> extra) const;

  // Piecewise-exact equality up to a coefficient tolerance, compared on the
  // common refinement.
  bool same_function(const PiecewisePoly& other, double tol = 1e-12) const;

  PiecewisePoly& operator*=(double s);
  friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
  friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b);
  friend PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b);
  friend PiecewisePoly operator*(PiecewisePoly a, double s) { return a *= s; }
  friend PiecewisePoly operator*(double s, PiecewisePoly a) { return a *= s; }

  // Maximum of |f| over [lo, hi] from the one-sided values at every
  // breakpoint inside, the interval ends, `samples` uniform points, and the
  // exact critical points of pieces of degree <= 3.
  double max_abs_on(Interval interval, int samples = 256) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Polynomial> pieces_;
  Extension extension_;
};

// Sorted union of two breakpoint lists, with exact duplicates removed.
std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b);

}  // namespace dcd
