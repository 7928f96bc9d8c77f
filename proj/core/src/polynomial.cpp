#include "dcd/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "dcd/errors.hpp"

namespace dcd {

Polynomial::Polynomial(std::vector<double> coeffs, double center)
    : center_(center), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ConfigError("polynomial needs at least one coefficient");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw ConfigError("polynomial coefficient is not finite");
  }
  if (!std::isfinite(center_)) throw ConfigError("polynomial center is not finite");
}

double Polynomial::operator()(double u) const {
  const double s = u - center_;
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

int Polynomial::degree() const { return degree(0.0); }

int Polynomial::degree(double tol) const {
  for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j) {
    if (std::abs(coeffs_[j]) > tol) return j;
  }
  return -1;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial({0.0}, center_);
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = coeffs_[j] * static_cast<double>(j);
  return Polynomial(std::move(d), center_);
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) a[j + 1] = coeffs_[j] / static_cast<double>(j + 1);
  return Polynomial(std::move(a), center_);
}

Polynomial Polynomial::recentered(double new_center) const {
  if (new_center == center_) return *this;
  // p(u) = sum a_j (u - c0)^j with u - c0 = (u - c1) + d.
  const double d = new_center - center_;
  std::vector<double> a = coeffs_;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) a[j - 1] += d * a[j];
  }
  return Polynomial(std::move(a), new_center);
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  const Polynomial r = rhs.recentered(center_);
  if (r.coeffs_.size() > coeffs_.size()) coeffs_.resize(r.coeffs_.size(), 0.0);
  for (std::size_t j = 0; j < r.coeffs_.size(); ++j) coeffs_[j] += r.coeffs_[j];
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  const Polynomial r = rhs.recentered(center_);
  if (r.coeffs_.size() > coeffs_.size()) coeffs_.resize(r.coeffs_.size(), 0.0);
  for (std::size_t j = 0; j < r.coeffs_.size(); ++j) coeffs_[j] -= r.coeffs_[j];
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const Polynomial bb = b.recentered(a.center());
  const auto& x = a.coeffs();
  const auto& y = bb.coeffs();
  std::vector<double> z(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
  }
  return Polynomial(std::move(z), a.center());
}

std::vector<double> Polynomial::roots_in(double lo, double hi) const {
  std::vector<double> out;
  const int deg = degree();
  auto keep = [&](double s) {
    const double u = s + center_;
    if (u >= lo && u <= hi) out.push_back(u);
  };
  if (deg == 1) {
    keep(-coeffs_[0] / coeffs_[1]);
  } else if (deg == 2) {
    const double a = coeffs_[2], b = coeffs_[1], c = coeffs_[0];
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      // Numerically stable pair.
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      if (q != 0.0) {
        keep(q / a);
        keep(c / q);
      } else {
        keep(0.0);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dcd
