#include "dcd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dcd/errors.hpp"

namespace dcd {

void SolverConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 0.5)) throw ConfigError("cfl must lie in (0, 0.5]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
  if (lipschitz_samples < 256) throw ConfigError("lipschitz_samples must be >= 256");
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    const double t = snapshot_times[i];
    if (!(t >= 0.0 && t <= t_end)) throw ConfigError("snapshot times must lie in [0, t_end]");
    if (i > 0 && !(t > snapshot_times[i - 1])) {
      throw ConfigError("snapshot times must be strictly increasing");
    }
  }
  if (certified_range && !(certified_range->lo <= certified_range->hi)) {
    throw ConfigError("certified range must have lo <= hi");
  }
}

// ---------------------------------------------------------------------------

Trajectory::Trajectory(ScalarModel model, GridFunction initial, SchemeInfo scheme)
    : model_(std::move(model)), initial_(std::move(initial)), scheme_(std::move(scheme)) {}

const GridFunction& Trajectory::at(double t) const {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (std::abs(times_[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return snapshots_[i];
  }
  throw DomainError("no snapshot at t = " + std::to_string(t));
}

std::size_t Trajectory::step_count() const {
  std::size_t n = 0;
  for (const auto& s : steps_) n += s.count;
  return n;
}

void Trajectory::add_snapshot(double t, GridFunction g) {
  if (!times_.empty() && !(t > times_.back())) {
    throw ConfigError("snapshot times must be strictly increasing");
  }
  if (!g.same_geometry(initial_)) throw ShapeError("snapshot geometry differs from the initial grid");
  times_.push_back(t);
  snapshots_.push_back(std::move(g));
}

void Trajectory::record_step(double dt) {
  if (!steps_.empty() && steps_.back().dt == dt) {
    ++steps_.back().count;
  } else {
    steps_.push_back({dt, 1});
  }
}

// ---------------------------------------------------------------------------

Stepper::Stepper(const ScalarModel& model, int dim, double cell_size, Interval range, double cfl,
                 int samples)
    : model_(&model), h_(cell_size) {
  if (dim != model.dim()) throw ConfigError("grid and model dimensions differ");
  const Interval ur = model.urange();
  if (range.lo < ur.lo - 1e-12 || range.hi > ur.hi + 1e-12) {
    throw DomainError("solution range [" + std::to_string(range.lo) + ", " +
                      std::to_string(range.hi) + "] leaves the model urange");
  }
  info_.range = range;
  for (int i = 0; i < dim; ++i) {
    info_.lambda[i] = model.flux_slope_bound(i, range, samples);
    info_.flux_bound = std::max(info_.flux_bound, info_.lambda[i]);
  }
  info_.diffusion_bound = model.diffusion_bound(range, samples);
  has_diffusion_ = !model.hyperbolic();
  has_cross_ = dim == 2 && !model.diagonal_diffusion();

  double dt = std::numeric_limits<double>::infinity();
  if (info_.flux_bound > 0.0) dt = std::min(dt, h_ / info_.flux_bound);
  if (info_.diffusion_bound > 0.0) dt = std::min(dt, h_ * h_ / (2.0 * dim * info_.diffusion_bound));
  info_.dt_max = cfl * dt;

  double diag = 0.0;
  for (int i = 0; i < dim; ++i) diag += model.diffusion(i, i).max_abs_on(range, samples);
  const double lam = info_.lambda[0] + info_.lambda[1];
  const double weight =
      std::isinf(info_.dt_max) ? 0.0 : info_.dt_max / h_ * lam + 2.0 * info_.dt_max / (h_ * h_) * diag;
  info_.diagnostic_only = has_cross_;
  info_.monotone = !has_cross_ && weight <= 1.0 + 1e-12;
}

void Stepper::advance(const GridFunction& u, GridFunction& out, double dt) const {
  const int dim = u.dim();
  const long nx = static_cast<long>(u.nx()), ny = static_cast<long>(u.ny());
  const bool periodic = u.bc().is_periodic();
  const double far = u.bc().value;
  const long px = nx + 2, py = dim == 2 ? ny + 2 : 1;
  const long oy = dim == 2 ? 1 : 0;

  // One ghost layer (corners included), filled by wrap or far-field value.
  std::vector<double> w(static_cast<std::size_t>(px * py));
  for (long b = 0; b < py; ++b) {
    const long j = b - oy;
    for (long a = 0; a < px; ++a) {
      const long i = a - 1;
      double v;
      if (periodic) {
        const long wi = (i + nx) % nx, wj = dim == 2 ? (j + ny) % ny : 0;
        v = u.at(static_cast<std::size_t>(wi), static_cast<std::size_t>(wj));
      } else if (i < 0 || i >= nx || j < 0 || j >= ny) {
        v = far;
      } else {
        v = u.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
      w[static_cast<std::size_t>(b * px + a)] = v;
    }
  }

  const ScalarModel& m = *model_;
  const std::size_t n = w.size();
  std::vector<double> fx(n), fy, axx, ayy, axy;
  for (std::size_t k = 0; k < n; ++k) fx[k] = m.flux(0)(w[k]);
  if (dim == 2) {
    fy.resize(n);
    for (std::size_t k = 0; k < n; ++k) fy[k] = m.flux(1)(w[k]);
  }
  if (has_diffusion_) {
    axx.resize(n);
    for (std::size_t k = 0; k < n; ++k) axx[k] = m.primitive(0, 0)(w[k]);
    if (dim == 2) {
      ayy.resize(n);
      for (std::size_t k = 0; k < n; ++k) ayy[k] = m.primitive(1, 1)(w[k]);
    }
    if (has_cross_) {
      axy.resize(n);
      for (std::size_t k = 0; k < n; ++k) axy[k] = m.primitive(0, 1)(w[k]);
    }
  }

  if (!out.same_geometry(u)) out = u;
  std::vector<double>& dst = out.values();
  const double lx = info_.lambda[0], ly = info_.lambda[1];
  const double c1 = dt / h_, c2 = dt / (h_ * h_);
  const Interval ur = m.urange();

  for (long j = 0; j < ny; ++j) {
    const long b = j + oy;
    for (long i = 0; i < nx; ++i) {
      const long k = b * px + i + 1;
      const auto K = static_cast<std::size_t>(k);
      const double uc = w[K];
      const double ue = w[K + 1], uw = w[K - 1];
      const double fe = 0.5 * (fx[K] + fx[K + 1]) - 0.5 * lx * (ue - uc);
      const double fw = 0.5 * (fx[K - 1] + fx[K]) - 0.5 * lx * (uc - uw);
      double du = -c1 * (fe - fw);
      if (has_diffusion_) du += c2 * (axx[K + 1] - 2.0 * axx[K] + axx[K - 1]);
      if (dim == 2) {
        const auto N = static_cast<std::size_t>(k + px), S = static_cast<std::size_t>(k - px);
        const double gn = 0.5 * (fy[K] + fy[N]) - 0.5 * ly * (w[N] - uc);
        const double gs = 0.5 * (fy[S] + fy[K]) - 0.5 * ly * (uc - w[S]);
        du -= c1 * (gn - gs);
        if (has_diffusion_) du += c2 * (ayy[N] - 2.0 * ayy[K] + ayy[S]);
        if (has_cross_) {
          const double cross = axy[N + 1] - axy[S + 1] - axy[N - 1] + axy[S - 1];
          du += c2 * 0.5 * cross;  // 2 * d_xy A_12 with the (i+-1, j+-1) stencil / 4h^2
        }
      }
      const double v = uc + du;
      if (!std::isfinite(v) || v < ur.lo - 1e-9 || v > ur.hi + 1e-9) {
        throw StabilityFault("value " + std::to_string(v) + " left urange at cell (" +
                             std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      dst[static_cast<std::size_t>(j * nx + i)] = v;
    }
  }
}

GridFunction Stepper::step(const GridFunction& u, double dt) const {
  GridFunction out = u;
  advance(u, out, dt);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Interval data_range(const GridFunction& u) {
  Interval r{u.min(), u.max()};
  if (!u.bc().is_periodic()) {
    r.lo = std::min(r.lo, u.bc().value);
    r.hi = std::max(r.hi, u.bc().value);
  }
  return r;
}

Interval solve_range(const GridFunction& u, const SolverConfig& config) {
  const Interval data = data_range(u);
  if (!config.certified_range) return data;
  const Interval c = *config.certified_range;
  if (data.lo < c.lo - 1e-12 || data.hi > c.hi + 1e-12) {
    throw DomainError("initial data leave the certified range");
  }
  return c;
}

}  // namespace

double cfl_dt(const GridFunction& u, const ScalarModel& model, const SolverConfig& config) {
  if (u.size() == 0) throw ShapeError("empty grid");
  const Stepper s(model, u.dim(), u.cell_size(), solve_range(u, config), config.cfl,
                  config.lipschitz_samples);
  return std::isinf(s.info().dt_max) ? config.t_end : s.info().dt_max;
}

GridFunction step(const GridFunction& u, const ScalarModel& model, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const Stepper s(model, u.dim(), u.cell_size(), data_range(u), 0.5);
  return s.step(u, dt);
}

Trajectory solve(const GridFunction& u0, const ScalarModel& model, const SolverConfig& config) {
  config.validate();
  const Interval range = solve_range(u0, config);
  const Stepper stepper(model, u0.dim(), u0.cell_size(), range, config.cfl, config.lipschitz_samples);
  Trajectory traj(model, u0, stepper.info());

  const bool guard = config.boundary_guard && !u0.bc().is_periodic();
  const auto check_boundary = [&](const GridFunction& g, double t) {
    if (!guard) return;
    const double dev = boundary_deviation(g);
    if (dev > config.boundary_tolerance) {
      throw DomainTooSmall("solution reached the FarField boundary at t = " + std::to_string(t) +
                           " (deviation " + std::to_string(dev) + ")");
    }
  };
  check_boundary(u0, 0.0);

  std::vector<double> targets = config.snapshot_times;
  targets.push_back(config.t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  traj.add_snapshot(0.0, u0);
  GridFunction cur = u0, next = u0;
  double t = 0.0;
  std::size_t steps = 0;
  const double dt_max = std::isinf(stepper.info().dt_max) ? config.t_end : stepper.info().dt_max;
  for (double target : targets) {
    if (target <= 0.0) continue;
    while (t < target) {
      double dt = dt_max;
      bool last = false;
      // Shorten the last step onto the target; avoid a sliver step.
      if (target - t <= dt * (1.0 + 1e-12)) {
        dt = target - t;
        last = true;
      }
      stepper.advance(cur, next, dt);
      std::swap(cur, next);
      traj.record_step(dt);
      t = last ? target : t + dt;
      check_boundary(cur, t);
      if (++steps > config.max_steps) throw ConfigError("step limit exceeded");
    }
    traj.add_snapshot(target, cur);
  }
  return traj;
}

GridFunction truncated_initial(const GridFunction& u0, double b, double radius) {
  std::vector<double> v(u0.size());
  for (std::size_t k = 0; k < u0.size(); ++k) {
    const Vec2 x = u0.center_of(k);
    const double r = u0.dim() == 2 ? std::hypot(x[0], x[1]) : std::abs(x[0]);
    v[k] = r <= radius ? u0[k] : b;
  }
  return GridFunction(u0.dim(), u0.origin(), u0.cell_size(), u0.shape(), std::move(v),
                      Boundary::far_field(b));
}

std::vector<Trajectory> truncation_sequence(const GridFunction& u0, const ScalarModel& model,
                                            const SolverConfig& config,
                                            const std::vector<double>& b_list,
                                            const std::vector<double>& radius_list) {
  if (u0.bc().is_periodic()) throw ConfigError("truncation needs FarField initial data");
  if (b_list.empty() || b_list.size() != radius_list.size()) {
    throw ConfigError("b_list and radius_list must be nonempty and of equal length");
  }
  const double top = u0.max();
  for (std::size_t i = 0; i < b_list.size(); ++i) {
    if (i > 0 && !(b_list[i] < b_list[i - 1])) throw ConfigError("b_list must be strictly decreasing");
    if (i > 0 && !(radius_list[i] > radius_list[i - 1])) {
      throw ConfigError("radius_list must be strictly increasing");
    }
    if (b_list[i] < top) throw ConfigError("every b_r must be >= max u0");
  }
  const Vec2 lo = u0.origin(), hi = u0.extent_end();
  for (int a = 0; a < u0.dim(); ++a) {
    if (radius_list.back() >= -lo[a] || radius_list.back() >= hi[a]) {
      throw ConfigError("truncation radius does not fit inside the grid box");
    }
  }
  SolverConfig shared = config;
  if (!shared.certified_range) {
    shared.certified_range = Interval{std::min(u0.min(), u0.bc().value), b_list.front()};
  }
  std::vector<Trajectory> out;
  for (std::size_t i = 0; i < b_list.size(); ++i) {
    out.push_back(solve(truncated_initial(u0, b_list[i], radius_list[i]), model, shared));
  }
  return out;
}

}  // namespace dcd
