#include "dcd/piecewise_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dcd/errors.hpp"

namespace dcd {

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints, std::vector<Polynomial> pieces,
                             Extension extension)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), extension_(extension) {
  if (breakpoints_.size() < 2) throw ConfigError("piecewise polynomial needs >= 2 breakpoints");
  if (pieces_.size() + 1 != breakpoints_.size()) {
    throw ConfigError("piecewise polynomial: expected " + std::to_string(breakpoints_.size() - 1) +
                      " pieces, got " + std::to_string(pieces_.size()));
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) throw ConfigError("breakpoint is not finite");
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
      throw ConfigError("breakpoints must be strictly increasing");
    }
  }
}

PiecewisePoly PiecewisePoly::constant(double c, Interval range) {
  return PiecewisePoly({range.lo, range.hi}, {Polynomial::constant(c)});
}

PiecewisePoly PiecewisePoly::from_polynomial(const Polynomial& p, Interval range,
                                             Extension extension) {
  return PiecewisePoly({range.lo, range.hi}, {p}, extension);
}

PiecewisePoly PiecewisePoly::monomial(std::vector<double> coeffs, Interval range) {
  return from_polynomial(Polynomial(std::move(coeffs)), range);
}

Interval PiecewisePoly::domain() const {
  if (extension_ == Extension::kStrict) return range();
  return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
}

bool PiecewisePoly::in_domain(double u) const {
  return extension_ == Extension::kExtend || range().contains(u);
}

std::size_t PiecewisePoly::piece_index(double u) const {
  if (extension_ == Extension::kStrict && !range().contains(u)) {
    throw DomainError("u = " + std::to_string(u) + " outside strict range [" +
                      std::to_string(breakpoints_.front()) + ", " +
                      std::to_string(breakpoints_.back()) + "]");
  }
  if (pieces_.size() == 1) return 0;
  // First breakpoint strictly greater than u; piece i covers [b_i, b_{i+1}).
  auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end() - 1, u);
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double PiecewisePoly::operator()(double u) const { return pieces_[piece_index(u)](u); }

double PiecewisePoly::left_limit(double u) const {
  std::size_t i = piece_index(u);
  if (i > 0 && u == breakpoints_[i]) --i;
  return pieces_[i](u);
}

bool PiecewisePoly::is_continuous(double tol) const {
  for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
    const double l = pieces_[i - 1](breakpoints_[i]);
    const double r = pieces_[i](breakpoints_[i]);
    if (std::abs(l - r) > tol * std::max(1.0, std::max(std::abs(l), std::abs(r)))) return false;
  }
  return true;
}

double PiecewisePoly::jump(std::size_t i) const {
  if (i == 0 || i + 1 >= breakpoints_.size()) return 0.0;
  return pieces_[i](breakpoints_[i]) - pieces_[i - 1](breakpoints_[i]);
}

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<Polynomial> d;
  d.reserve(pieces_.size());
  for (const auto& p : pieces_) d.push_back(p.derivative());
  return PiecewisePoly(breakpoints_, std::move(d), extension_);
}

PiecewisePoly PiecewisePoly::primitive() const {
  const std::size_t m = pieces_.size();
  // Piece containing 0 (extension pieces included) is expanded about 0 so
  // that P(0) = 0 holds exactly; constants propagate outward by continuity.
  std::size_t k = 0;
  if (pieces_.size() > 1) {
    auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end() - 1, 0.0);
    k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  }
  std::vector<Polynomial> out(m);
  out[k] = pieces_[k].recentered(0.0).antiderivative();
  for (std::size_t i = k + 1; i < m; ++i) {
    Polynomial q = pieces_[i].antiderivative();
    const double b = breakpoints_[i];
    q += Polynomial::constant(out[i - 1](b) - q(b), q.center());
    out[i] = std::move(q);
  }
  for (std::size_t i = k; i-- > 0;) {
    Polynomial q = pieces_[i].antiderivative();
    const double b = breakpoints_[i + 1];
    q += Polynomial::constant(out[i + 1](b) - q(b), q.center());
    out[i] = std::move(q);
  }
  return PiecewisePoly(breakpoints_, std::move(out), extension_);
}

PiecewisePoly PiecewisePoly::refined(std::span<const double> extra) const {
  std::vector<double> bp = merge_breakpoints(breakpoints_, extra);
  std::vector<Polynomial> pieces;
  pieces.reserve(bp.size() - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i] + bp[i + 1]);
    if (extension_ == Extension::kStrict && !range().contains(mid)) {
      throw DomainError("refinement leaves the strict range of a piecewise polynomial");
    }
    std::size_t j = 0;
    if (pieces_.size() > 1) {
      auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end() - 1, mid);
      j = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    }
    pieces.push_back(pieces_[j]);
  }
  return PiecewisePoly(std::move(bp), std::move(pieces), extension_);
}

namespace {

Extension combined_extension(const PiecewisePoly& a, const PiecewisePoly& b) {
  if (a.extension() == Extension::kStrict || b.extension() == Extension::kStrict) {
    return Extension::kStrict;
  }
  return Extension::kExtend;
}

template <class Op>
PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b, Op op) {
  const Extension ext = combined_extension(a, b);
  if (ext == Extension::kStrict && !(a.range() == b.range())) {
    throw DomainError("combining piecewise polynomials with different strict ranges");
  }
  const PiecewisePoly ra = a.refined(b.breakpoints());
  const PiecewisePoly rb = b.refined(a.breakpoints());
  std::vector<Polynomial> pieces;
  pieces.reserve(ra.num_pieces());
  for (std::size_t i = 0; i < ra.num_pieces(); ++i) {
    pieces.push_back(op(ra.pieces()[i], rb.pieces()[i]));
  }
  return PiecewisePoly(ra.breakpoints(), std::move(pieces), ext);
}

}  // namespace

bool PiecewisePoly::same_function(const PiecewisePoly& other, double tol) const {
  const PiecewisePoly diff = *this - other;
  for (const auto& p : diff.pieces()) {
    if (p.degree(tol) >= 0) return false;
  }
  return true;
}

PiecewisePoly& PiecewisePoly::operator*=(double s) {
  for (auto& p : pieces_) p *= s;
  return *this;
}

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
  return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x + y; });
}

PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) {
  return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x - y; });
}

PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b) {
  return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x * y; });
}

double PiecewisePoly::max_abs_on(Interval interval, int samples) const {
  if (!(interval.hi >= interval.lo)) throw ConfigError("max_abs_on: empty interval");
  double best = 0.0;
  auto consider = [&](const Polynomial& p, double u) { best = std::max(best, std::abs(p(u))); };
  // Walk the pieces that meet the interval.
  const std::size_t first = piece_index(interval.lo);
  const std::size_t last = piece_index(interval.hi);
  for (std::size_t i = first; i <= last; ++i) {
    double lo = interval.lo, hi = interval.hi;
    if (i > 0) lo = std::max(lo, breakpoints_[i]);
    if (i + 1 < pieces_.size()) hi = std::min(hi, breakpoints_[i + 1]);
    if (lo > hi) continue;
    const Polynomial& p = pieces_[i];
    consider(p, lo);
    consider(p, hi);
    if (p.degree() >= 2 && p.degree() <= 3) {
      for (double r : p.derivative().roots_in(lo, hi)) consider(p, r);
    }
  }
  if (samples > 1 && interval.hi > interval.lo) {
    const double step = interval.length() / (samples - 1);
    for (int s = 0; s < samples; ++s) {
      const double u = std::min(interval.hi, interval.lo + s * step);
      best = std::max(best, std::abs((*this)(u)));
    }
  }
  return best;
}

std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dcd
