#include "dcd/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "dcd/errors.hpp"
#include "dcd/tg.hpp"

namespace dcd {

double bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double bump_d1(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return bump(s) * (-2.0 * s / (q * q));
}

double bump_d2(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  const double g = -2.0 * s / (q * q);
  const double gp = -2.0 / (q * q) - 8.0 * s * s / (q * q * q);
  return bump(s) * (g * g + gp);
}

double BumpSpec::value(double t, Vec2 x, int dim) const {
  double v = bump((t - t0) / tau);
  for (int i = 0; i < dim; ++i) v *= bump((x[i] - center[i]) / rho);
  return v;
}

double BumpSpec::dt(double t, Vec2 x, int dim) const {
  double v = bump_d1((t - t0) / tau) / tau;
  for (int i = 0; i < dim; ++i) v *= bump((x[i] - center[i]) / rho);
  return v;
}

Vec2 BumpSpec::grad(double t, Vec2 x, int dim) const {
  const double bt = bump((t - t0) / tau);
  Vec2 s{}, p{1.0, 1.0}, d{};
  for (int i = 0; i < dim; ++i) {
    s[i] = (x[i] - center[i]) / rho;
    p[i] = bump(s[i]);
    d[i] = bump_d1(s[i]) / rho;
  }
  if (dim == 1) return {bt * d[0], 0.0};
  return {bt * d[0] * p[1], bt * p[0] * d[1]};
}

Mat2 BumpSpec::hessian(double t, Vec2 x, int dim) const {
  const double bt = bump((t - t0) / tau);
  Vec2 s{}, p{1.0, 1.0}, d{}, dd{};
  for (int i = 0; i < dim; ++i) {
    s[i] = (x[i] - center[i]) / rho;
    p[i] = bump(s[i]);
    d[i] = bump_d1(s[i]) / rho;
    dd[i] = bump_d2(s[i]) / (rho * rho);
  }
  if (dim == 1) return {bt * dd[0], 0.0, 0.0, 0.0};
  const double cross = bt * d[0] * d[1];
  return {bt * dd[0] * p[1], cross, cross, bt * p[0] * dd[1]};
}

std::vector<EntropyResidual> entropy_residual(const Trajectory& traj, const std::vector<double>& k_values,
                                              const std::vector<BumpSpec>& tests, double eps) {
  const ScalarModel& model = traj.model();
  const GridFunction& u0 = traj.initial();
  const int dim = u0.dim();
  const auto& times = traj.times();
  if (times.size() < 2) throw ConfigError("entropy residual needs at least two snapshots");
  if (times.front() != 0.0) throw ConfigError("entropy residual needs the t = 0 snapshot");

  const Vec2 lo = u0.origin(), hi = u0.extent_end();
  for (const BumpSpec& f : tests) {
    if (!(f.tau > 0.0) || !(f.rho > 0.0)) throw ConfigError("test function widths must be positive");
    if (f.t0 + f.tau > times.back() + 1e-12) {
      throw ConfigError("test function support extends past the last snapshot");
    }
    for (int i = 0; i < dim; ++i) {
      if (f.center[i] - f.rho < lo[i] || f.center[i] + f.rho > hi[i]) {
        throw ConfigError("test function support leaves the grid box");
      }
    }
  }
  const Interval ur = model.urange();
  for (double k : k_values) {
    if (!ur.contains(k)) throw DomainError("entropy level k outside urange");
  }

  if (eps <= 0.0) {
    const Interval range{std::min(u0.min(), traj.final_state().min()),
                         std::max(u0.max(), traj.final_state().max())};
    const double lphi = model.flux_slope_bound(range);
    eps = 2.0 * u0.cell_size() * (lphi > 0.0 ? lphi : 1.0);
  }

  // Trapezoid weights over the snapshot times.
  std::vector<double> wt(times.size(), 0.0);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double d = times[i + 1] - times[i];
    wt[i] += 0.5 * d;
    wt[i + 1] += 0.5 * d;
  }
  const double vol = u0.cell_volume();

  std::vector<EntropyResidual> out;
  for (double k : k_values) {
    const MollifiedKruzhkov mk{k, eps};
    const PiecewisePoly eta = mk.eta();
    const PiecewisePoly deta = mk.eta_prime();
    std::vector<PiecewisePoly> q;
    for (int i = 0; i < dim; ++i) q.push_back(tg_transform(deta, model.flux(i)));
    std::vector<PiecewisePoly> r;
    const bool diffusive = !model.hyperbolic();
    if (diffusive) {
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) r.push_back(tg_transform(deta, model.primitive(i, j)));
      }
    }

    for (std::size_t ti = 0; ti < tests.size(); ++ti) {
      const BumpSpec& f = tests[ti];
      long double total = 0.0L;
      for (std::size_t s = 0; s < times.size(); ++s) {
        const double t = times[s];
        if (std::abs(t - f.t0) >= f.tau || wt[s] == 0.0) continue;
        const GridFunction& g = traj.snapshots()[s];
        long double acc = 0.0L;
        for (std::size_t c = 0; c < g.size(); ++c) {
          const Vec2 x = g.center_of(c);
          bool inside = true;
          for (int i = 0; i < dim; ++i) inside = inside && std::abs(x[i] - f.center[i]) < f.rho;
          if (!inside) continue;
          const double u = g[c];
          double term = eta(u) * f.dt(t, x, dim);
          const Vec2 gr = f.grad(t, x, dim);
          for (int i = 0; i < dim; ++i) term += q[i](u) * gr[i];
          if (diffusive) {
            const Mat2 hs = f.hessian(t, x, dim);
            for (int i = 0; i < dim * dim; ++i) term += r[i](u) * hs[dim == 1 ? 0 : i];
          }
          acc += term;
        }
        total += static_cast<long double>(wt[s]) * acc * vol;
      }
      // Initial term.
      if (f.t0 - f.tau < 0.0) {
        long double acc = 0.0L;
        for (std::size_t c = 0; c < u0.size(); ++c) {
          acc += eta(u0[c]) * f.value(0.0, u0.center_of(c), dim);
        }
        total += acc * vol;
      }
      out.push_back({k, ti, static_cast<double>(total)});
    }
  }
  return out;
}

Trajectory frozen_discontinuity(const ScalarModel& model, Interval box, std::size_t cells, double left,
                                double right, double x0, double speed, const std::vector<double>& times) {
  if (model.dim() != 1) throw ConfigError("frozen discontinuity is one-dimensional");
  if (times.empty() || times.front() != 0.0) throw ConfigError("times must start at 0");
  const auto profile = [&](double t) {
    GridFunction g = GridFunction::on_box(1, box, cells, right, Boundary::far_field(right));
    const double h = g.cell_size();
    const double xs = x0 + speed * t;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double a = g.origin()[0] + h * static_cast<double>(i);
      const double frac = std::clamp((xs - a) / h, 0.0, 1.0);  // share of the cell left of xs
      g[i] = frac * left + (1.0 - frac) * right;
    }
    return g;
  };
  GridFunction u0 = profile(0.0);
  // Ghost value on the left is `left`, which FarField cannot express; the
  // trajectory is never stepped, so the right value serves as a label.
  Trajectory traj(model, u0);
  for (double t : times) traj.add_snapshot(t, profile(t));
  return traj;
}

}  // namespace dcd
