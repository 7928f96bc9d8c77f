#pragma once

#include <vector>

namespace dcd {

// Polynomial in the shifted variable (u - center), constant term first.
// Keeping a per-polynomial center avoids the cancellation that global
// monomial coefficients suffer on narrow pieces far from the origin.
class Polynomial {
 public:
  Polynomial() : center_(0.0), coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs, double center = 0.0);

  static Polynomial constant(double c, double center = 0.0) {
    return Polynomial({c}, center);
  }

  double operator()(double u) const;

  double center() const { return center_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  // Highest index with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  bool is_affine() const { return degree() <= 1; }

  // Same tests, but coefficients with |c| <= tol count as zero.
  int degree(double tol) const;

  Polynomial derivative() const;
  // Antiderivative vanishing at center().
  Polynomial antiderivative() const;
  // Same function expanded about a different point (Taylor shift).
  Polynomial recentered(double new_center) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  // Real roots of this polynomial inside [lo, hi]; only degrees <= 2 are
  // solved, higher degrees return an empty list.
  std::vector<double> roots_in(double lo, double hi) const;

 private:
  double center_;
  std::vector<double> coeffs_;
};

}  // namespace dcd
