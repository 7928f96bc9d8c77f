#include "dcd/tg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dcd/errors.hpp"

namespace dcd {

namespace {

const Polynomial& piece_at(const PiecewisePoly& p, double u) { return p.pieces()[p.piece_index(u)]; }

void require_domain(const PiecewisePoly& p, double lo, double hi, const char* what) {
  if (!p.in_domain(lo) || !p.in_domain(hi)) {
    throw DomainError(std::string(what) + ": interval [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "] leaves the definition range");
  }
}

}  // namespace

double stieltjes(const PiecewisePoly& f, const PiecewisePoly& g, double a, double b) {
  if (!(a <= b)) throw DomainError("stieltjes: need a <= b");
  if (a == b) return 0.0;
  require_domain(f, a, b, "stieltjes");
  require_domain(g, a, b, "stieltjes");

  std::vector<double> cuts{a};
  for (double x : merge_breakpoints(f.breakpoints(), g.breakpoints())) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const double mid = 0.5 * (lo + hi);
    const Polynomial dg = piece_at(g, mid).derivative();
    if (dg.is_zero()) continue;
    const Polynomial w = (piece_at(f, mid) * dg).antiderivative();
    total += w(hi) - w(lo);
  }
  // Atoms of dg inside [a, b).
  const auto& gb = g.breakpoints();
  for (std::size_t i = 1; i + 1 < gb.size(); ++i) {
    const double c = gb[i];
    if (c < a || c >= b) continue;
    const double j = g.jump(i);
    if (j != 0.0) total += f(c) * j;
  }
  return total;
}

double tg_apply(const PiecewisePoly& g, const PiecewisePoly& f, double u) {
  if (!std::isfinite(u)) throw DomainError("tg_apply: u is not finite");
  require_domain(f, std::min(0.0, u), std::max(0.0, u), "tg_apply");
  require_domain(g, std::min(0.0, u), std::max(0.0, u), "tg_apply");
  const double integral = u > 0.0 ? stieltjes(f, g, 0.0, u) : -stieltjes(f, g, u, 0.0);
  return g.left_limit(u) * f(u) - integral;
}

double tg_apply_relative(const PiecewisePoly& g, const PiecewisePoly& f, double u, double k) {
  return tg_apply(g, f, u) - tg_apply(g, f, k);
}

PiecewisePoly tg_transform(const PiecewisePoly& g, const PiecewisePoly& f) {
  std::vector<double> bp = merge_breakpoints(f.breakpoints(), g.breakpoints());
  const Extension ext = (f.extension() == Extension::kStrict || g.extension() == Extension::kStrict)
                            ? Extension::kStrict
                            : Extension::kExtend;
  std::vector<Polynomial> pieces;
  pieces.reserve(bp.size() - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i] + bp[i + 1]);
    const Polynomial& fp = piece_at(f, mid);
    const Polynomial& gp = piece_at(g, mid);
    // Inside one piece g is smooth: T' = g f', so T = g f - int f g' + C.
    Polynomial t = gp * fp;
    t -= (fp * gp.derivative()).antiderivative();
    const double c = tg_apply(g, f, mid) - t(mid);
    t += Polynomial::constant(c, t.center());
    pieces.push_back(std::move(t));
  }
  return PiecewisePoly(std::move(bp), std::move(pieces), ext);
}

namespace {

// Polynomial in s = (u - k) / eps rewritten in powers of (u - k).
Polynomial scaled(std::vector<double> z_coeffs, double k, double eps, double factor) {
  double scale = factor;
  for (double& c : z_coeffs) {
    c *= scale;
    scale /= eps;
  }
  return Polynomial(std::move(z_coeffs), k);
}

}  // namespace

PiecewisePoly MollifiedKruzhkov::eta() const {
  if (!(eps > 0.0)) throw ConfigError("mollified entropy needs eps > 0");
  // eps * [ (15/8)(z^2/2 - z^4/6 + z^6/30) + 5/16 ]
  const double c = 15.0 / 8.0;
  Polynomial inner = scaled({5.0 / 16.0, 0.0, c / 2.0, 0.0, -c / 6.0, 0.0, c / 30.0}, k, eps, eps);
  return PiecewisePoly({k - eps - 1.0, k - eps, k + eps, k + eps + 1.0},
                       {Polynomial({0.0, -1.0}, k), inner, Polynomial({0.0, 1.0}, k)});
}

PiecewisePoly MollifiedKruzhkov::eta_prime() const {
  if (!(eps > 0.0)) throw ConfigError("mollified entropy needs eps > 0");
  // (15/8)(z - 2 z^3 / 3 + z^5 / 5)
  const double c = 15.0 / 8.0;
  Polynomial inner = scaled({0.0, c, 0.0, -2.0 * c / 3.0, 0.0, c / 5.0}, k, eps, 1.0);
  return PiecewisePoly({k - eps - 1.0, k - eps, k + eps, k + eps + 1.0},
                       {Polynomial::constant(-1.0, k), inner, Polynomial::constant(1.0, k)});
}

PiecewisePoly sign_step(double k, Interval range) {
  const double lo = std::min(range.lo, k - 1.0);
  const double hi = std::max(range.hi, k + 1.0);
  return PiecewisePoly({lo, k, hi}, {Polynomial::constant(-1.0), Polynomial::constant(1.0)});
}

}  // namespace dcd
