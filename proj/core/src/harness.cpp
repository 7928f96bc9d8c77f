#include "dcd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dcd/errors.hpp"

namespace dcd {

const Check& PropertyReport::add(std::string name, double slack, double tolerance, std::string detail) {
  checks_.push_back({std::move(name), slack >= -tolerance, slack, tolerance, std::move(detail)});
  return checks_.back();
}

const Check& PropertyReport::add_flag(std::string name, bool pass, double slack, std::string detail) {
  checks_.push_back({std::move(name), pass, slack, 0.0, std::move(detail)});
  return checks_.back();
}

void PropertyReport::merge(const PropertyReport& other, const std::string& prefix) {
  for (Check c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
  inputs.insert(inputs.end(), other.inputs.begin(), other.inputs.end());
}

const Check* PropertyReport::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool PropertyReport::all_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

std::vector<std::string> PropertyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks_) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

void DecaySeries::validate() const {
  const std::size_t n = t.size();
  if (x_norm.size() != n || l1_norm.size() != n || min.size() != n || max.size() != n ||
      (bound_rhs && bound_rhs->size() != n)) {
    throw ShapeError("decay series columns differ in length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !(t[i] > t[i - 1])) throw ConfigError("decay series times must increase");
    if (x_norm[i] < 0.0 || l1_norm[i] < 0.0) throw ConfigError("decay series norms must be >= 0");
  }
}

namespace {

GridFunction minus_level(const GridFunction& g, double level) {
  if (level == 0.0) return g;
  std::vector<double> v = g.values();
  for (double& x : v) x -= level;
  Boundary bc = g.bc();
  if (!bc.is_periodic()) bc.value -= level;
  return GridFunction(g.dim(), g.origin(), g.cell_size(), g.shape(), std::move(v), bc);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

DecaySeries decay_series(const Trajectory& traj, double level, double radius) {
  DecaySeries s;
  for (std::size_t i = 0; i < traj.times().size(); ++i) {
    const GridFunction& g = traj.snapshots()[i];
    const GridFunction d = minus_level(g, level);
    s.t.push_back(traj.times()[i]);
    s.x_norm.push_back(x_norm(d, radius));
    s.l1_norm.push_back(g.bc().is_periodic() ? mean_deviation(g, level)
                                             : mean_deviation(g, level) * g.volume());
    s.min.push_back(g.min());
    s.max.push_back(g.max());
  }
  return s;
}

std::optional<std::size_t> majorant_crossing(const std::vector<double>& values, double threshold) {
  std::optional<std::size_t> first;
  for (std::size_t i = values.size(); i-- > 0;) {
    if (!(values[i] < threshold)) break;
    first = i;
  }
  return first;
}

// ---------------------------------------------------------------------------

double burgers_exact(double t, double x) {
  if (t < 0.0) throw DomainError("burgers_exact: t must be >= 0");
  if (t == 0.0) return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
  if (x <= 0.0) return 0.0;
  if (t <= 2.0) {
    if (x <= t) return x / t;
    if (x <= 1.0 + 0.5 * t) return 1.0;
    return 0.0;
  }
  return x <= std::sqrt(2.0 * t) ? x / t : 0.0;
}

double burgers_exact_mass(double t, double x) {
  if (t < 0.0) throw DomainError("burgers_exact: t must be >= 0");
  if (t == 0.0) return std::clamp(x, 0.0, 1.0);
  if (x <= 0.0) return 0.0;
  if (t <= 2.0) {
    if (x <= t) return x * x / (2.0 * t);
    if (x <= 1.0 + 0.5 * t) return 0.5 * t + (x - t);
    return 1.0;
  }
  const double s = std::sqrt(2.0 * t);
  return x <= s ? x * x / (2.0 * t) : 1.0;
}

GridFunction burgers_exact_grid(double t, const GridFunction& like) {
  if (like.dim() != 1) throw ConfigError("burgers_exact_grid is one-dimensional");
  std::vector<double> v(like.size());
  const double h = like.cell_size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = like.origin()[0] + h * static_cast<double>(i);
    v[i] = (burgers_exact_mass(t, a + h) - burgers_exact_mass(t, a)) / h;
  }
  return like.with_values(std::move(v));
}

// ---------------------------------------------------------------------------

GridFunction example1_initial(int n_blocks, Interval domain, std::size_t cells) {
  if (n_blocks < 1) throw ConfigError("example1 needs n_blocks >= 1");
  if (n_blocks > 40) throw ConfigError("example1 supports at most 40 blocks");
  const double last_hi = std::ldexp(1.0, n_blocks) + n_blocks;
  if (domain.lo > 2.0 || domain.hi < last_hi) {
    throw ConfigError("domain does not contain every block [2^k, 2^k + k]");
  }
  GridFunction g = GridFunction::on_box(1, domain, cells, 0.0, Boundary::far_field(0.0));
  const double h = g.cell_size();
  for (int k = 1; k <= n_blocks; ++k) {
    const double lo = std::ldexp(1.0, k), hi = lo + k;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double a = domain.lo + h * static_cast<double>(i);
      const double overlap = std::min(a + h, hi) - std::max(a, lo);
      if (overlap > 0.0) g[i] += overlap / h;
    }
  }
  return g;
}

Example1Result check_example1(const Example1Options& o) {
  const int n = o.n_blocks;
  if (!(o.t_max == 0.0 || o.t_max < 2.0 * n - 2.0)) {
    throw ConfigError("example1 needs t_max < 2 n_blocks - 2 (or t_max = 0)");
  }
  const GridFunction u0 = example1_initial(n, o.domain, o.cells);
  const ScalarModel model = ScalarModel::burgers({-1.0, 1.0});

  Example1Result res;
  Trajectory traj(model, u0);
  if (o.t_max > 0.0) {
    SolverConfig cfg;
    cfg.cfl = o.cfl;
    cfg.t_end = o.t_max;
    for (double t = o.snapshot_interval; t < o.t_max - 1e-12; t += o.snapshot_interval) {
      cfg.snapshot_times.push_back(t);
    }
    traj = solve(u0, model, cfg);
  } else {
    traj.add_snapshot(0.0, u0);
  }
  res.series = decay_series(traj);
  res.min_x_norm = *std::min_element(res.series.x_norm.begin(), res.series.x_norm.end());
  res.report.add("x_norm_lower_bound", res.min_x_norm - o.threshold, 0.0,
                 "min x_norm over t <= " + fmt(o.t_max) + " is " + fmt(res.min_x_norm) +
                     ", threshold " + fmt(o.threshold));

  // u >= U_k(t, x) = U(t / k, (x - 2^k) / k) block by block.
  double worst = 0.0;
  for (std::size_t s = 0; s < traj.times().size(); ++s) {
    const double t = traj.times()[s];
    const GridFunction& g = traj.snapshots()[s];
    const double h = g.cell_size();
    for (int k = 1; k <= n; ++k) {
      const double shift = std::ldexp(1.0, k);
      double deficit = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double a = g.origin()[0] + h * static_cast<double>(i);
        // Cell average of U_k: k * (mass(b') - mass(a')) / h in scaled units.
        const double ua = (a - shift) / k, ub = (a + h - shift) / k;
        const double avg = k * (burgers_exact_mass(t / k, ub) - burgers_exact_mass(t / k, ua)) / h;
        deficit += std::max(avg - g[i], 0.0) * h;
      }
      worst = std::max(worst, deficit);
    }
  }
  res.report.add("block_comparison", o.comparison_tolerance - worst, 0.0,
                 "max_k int (U_k - u)^+ = " + fmt(worst));
  return res;
}

// ---------------------------------------------------------------------------

PeriodicDecayResult run_periodic_decay(const ScalarModel& model, const GridFunction& u0,
                                       const LatticeSpec& lattice, const SolverConfig& config,
                                       double fraction, int xi_bound) {
  if (!u0.bc().is_periodic()) throw ConfigError("periodic decay needs periodic initial data");
  PeriodicDecayResult res;
  res.level = u0.mean();
  res.hypothesis = thm_hypothesis_periodic(model, lattice, res.level, xi_bound);
  const Trajectory traj = solve(u0, model, config);
  res.series = decay_series(traj, res.level);
  res.initial_l1 = res.series.l1_norm.front();
  res.final_l1 = res.series.l1_norm.back();
  res.report.add_flag("hypothesis", res.hypothesis.verified, 0.0,
                      res.hypothesis.verified ? res.hypothesis.note : "hypothesis unverified");
  const double threshold = fraction * res.initial_l1;
  const auto cross = majorant_crossing(res.series.l1_norm, threshold);
  if (cross) res.crossing_time = res.series.t[*cross];
  const double slack = res.initial_l1 == 0.0 ? 0.0 : threshold - res.final_l1;
  res.report.add_flag("decay", res.initial_l1 == 0.0 || cross.has_value(), slack,
                      "L1 distance to the mean " + fmt(res.final_l1) + " vs threshold " + fmt(threshold));
  const double mass_drift = std::abs(traj.final_state().mean() - res.level);
  res.report.add("mean_preserved", -mass_drift, 1e-12 * std::max(1.0, traj.step_count() * 1e-3));
  return res;
}

WholeSpaceDecayResult analyze_whole_space_decay(const Trajectory& traj, double fraction) {
  WholeSpaceDecayResult res;
  res.series = decay_series(traj);
  res.initial_x_norm = res.series.x_norm.front();
  res.final_x_norm = res.series.x_norm.back();
  const double threshold = fraction * res.initial_x_norm;
  const auto cross = majorant_crossing(res.series.x_norm, threshold);
  if (cross) res.crossing_time = res.series.t[*cross];
  res.report.add_flag("decay", res.initial_x_norm == 0.0 || cross.has_value(),
                      threshold - res.final_x_norm,
                      "final x_norm " + fmt(res.final_x_norm) + " vs threshold " + fmt(threshold));
  return res;
}

WholeSpaceDecayResult run_whole_space_decay(const ScalarModel& model, const GridFunction& u0,
                                            const SolverConfig& config, double fraction) {
  if (u0.bc().is_periodic() || u0.bc().value != 0.0) {
    throw ConfigError("whole-space decay needs FarField data with value 0");
  }
  if (!std::isfinite(superlevel_measure(u0, 1e-12))) throw ConfigError("u0 violates the vanishing condition");
  return analyze_whole_space_decay(solve(u0, model, config), fraction);
}

Interval influence_box(const ScalarModel& model, Interval support, Interval range, double t_end,
                       double margin) {
  const PiecewisePoly d = model.flux(0).derivative();
  double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
  constexpr int kSamples = 2048;
  for (int s = 0; s < kSamples; ++s) {
    const double u = range.lo + range.length() * s / (kSamples - 1);
    vmin = std::min(vmin, d(u));
    vmax = std::max(vmax, d(u));
  }
  for (double b : d.breakpoints()) {
    if (range.contains(b)) {
      vmin = std::min({vmin, d(b), d.left_limit(b)});
      vmax = std::max({vmax, d(b), d.left_limit(b)});
    }
  }
  return {support.lo + std::min(vmin, 0.0) * t_end - margin,
          support.hi + std::max(vmax, 0.0) * t_end + margin};
}

// ---------------------------------------------------------------------------

SandwichResult run_sandwich_decay(const GridFunction& u0, const ScalarModel& model,
                                  const LatticeSpec& lattice, double r, const SolverConfig& config) {
  if (u0.bc().is_periodic() || u0.bc().value != 0.0) {
    throw ConfigError("sandwich needs FarField data with value 0");
  }
  const GNReport gn = check_gn(model);
  if (!gn.holds) throw AnalysisError("nonlinearity-diffusivity condition fails; no sandwich");

  Periodization vp = periodize_sup(u0, lattice, r);
  Periodization vm = periodize_inf(u0, lattice, r);
  const auto [b_minus, b_plus] = nearest_f_values(gn, vm.mean, vp.mean);
  const GridFunction up0 = shift_mean(vp.grid, b_plus);
  const GridFunction um0 = shift_mean(vm.grid, b_minus);

  SolverConfig shared = config;
  shared.certified_range = Interval{std::min(um0.min(), u0.min()), std::max(up0.max(), u0.max())};

  Trajectory upper = solve(up0, model, shared);
  Trajectory lower = solve(um0, model, shared);
  Trajectory middle = solve(u0, model, shared);

  SandwichResult res{vp.r, vm.mean, vp.mean, b_minus, b_plus, lower, middle, upper, {}, {}, {}, {}, {}};
  constexpr double kTol = 1e-10;

  const auto ordering = [&](const GridFunction& lo, const GridFunction& mid, const GridFunction& hi) {
    const GridFunction l = sample_periodic(lo, mid), h = sample_periodic(hi, mid);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < mid.size(); ++k) {
      worst = std::min({worst, mid[k] - l[k], h[k] - mid[k]});
    }
    return worst;
  };
  res.report.add("initial_ordering", ordering(um0, u0, up0), kTol,
                 "u0r- <= u0 <= u0r+ cellwise");

  const double c = Window::ball(u0.dim(), 1.0, u0.cell_size()).measure(u0.cell_size());
  double order_worst = std::numeric_limits<double>::infinity();
  double bound_worst = std::numeric_limits<double>::infinity();
  res.lower_series = decay_series(lower, b_minus);
  res.upper_series = decay_series(upper, b_plus);
  res.middle_series = decay_series(middle);
  for (std::size_t s = 0; s < middle.times().size(); ++s) {
    const GridFunction& mid = middle.snapshots()[s];
    order_worst = std::min(order_worst, ordering(lower.snapshots()[s], mid, upper.snapshots()[s]));
    const double rhs = res.lower_series.x_norm[s] + res.upper_series.x_norm[s] +
                       c * (std::abs(b_minus) + std::abs(b_plus));
    res.bound_rhs.push_back(rhs);
    bound_worst = std::min(bound_worst, rhs - res.middle_series.x_norm[s]);
  }
  res.middle_series.bound_rhs = res.bound_rhs;
  res.report.add("sandwich_ordering", order_worst, kTol, "u_r- <= u <= u_r+ at every snapshot");
  // Equality is reached when v+ >= M+ on a window; allow roundoff.
  res.report.add("window_bound", bound_worst, 1e-12, "x_norm(u) <= bound at every snapshot");
  return res;
}

// ---------------------------------------------------------------------------

PropertyReport check_properties(const Trajectory& traj) {
  PropertyReport rep;
  const GridFunction& u0 = traj.initial();
  double lo = u0.min(), hi = u0.max();
  if (!u0.bc().is_periodic()) {
    lo = std::min(lo, u0.bc().value);
    hi = std::max(hi, u0.bc().value);
  }
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& g : traj.snapshots()) worst = std::min({worst, g.min() - lo, hi - g.max()});
  rep.add("max_principle", worst, 1e-12, "snapshots within [min u0, max u0]");

  if (u0.bc().is_periodic()) {
    const double m0 = u0.integral();
    double drift = 0.0;
    for (const auto& g : traj.snapshots()) drift = std::max(drift, std::abs(g.integral() - m0));
    const double steps = static_cast<double>(std::max<std::size_t>(1, traj.step_count()));
    const double scale = std::max(1.0, [&] {
      double s = 0.0;
      for (double v : u0.values()) s += std::abs(v);
      return s * u0.cell_volume();
    }());
    rep.add("conservation", -drift / steps, 1e-12 * scale, "per-step mass drift");
  } else {
    const double ff = u0.bc().value;
    for (double k : {ff, ff + 0.1}) {
      const double base = l1_plus(u0, k);
      double w = std::numeric_limits<double>::infinity();
      for (const auto& g : traj.snapshots()) w = std::min(w, base - l1_plus(g, k));
      rep.add(k == ff ? "k_plus_bound" : "k_plus_bound_offset", w, 1e-10,
              "int (u - k)^+ <= int (u0 - k)^+ for k = " + fmt(k));
    }
  }
  return rep;
}

PropertyReport check_properties(const Trajectory& u, const Trajectory& v) {
  if (!u.initial().same_geometry(v.initial()) || u.times() != v.times()) {
    throw ShapeError("trajectory pair differs in grid or snapshot times");
  }
  PropertyReport rep;
  const auto contraction = [&](const Trajectory& a, const Trajectory& b) {
    double worst = std::numeric_limits<double>::infinity();
    double prev = l1_plus(a.snapshots()[0], b.snapshots()[0]);
    for (std::size_t s = 1; s < a.times().size(); ++s) {
      const double cur = l1_plus(a.snapshots()[s], b.snapshots()[s]);
      const double dt = a.times()[s] - a.times()[s - 1];
      worst = std::min(worst, -(cur - prev) / dt);
      prev = cur;
    }
    return a.times().size() < 2 ? 0.0 : worst;
  };
  rep.add("l1_contraction", std::min(contraction(u, v), contraction(v, u)), 1e-10,
          "int (u - v)^+ nonincreasing, per unit time");

  const GridFunction& u0 = u.initial();
  const GridFunction& v0 = v.initial();
  bool u_below = true, v_below = true;
  for (std::size_t k = 0; k < u0.size(); ++k) {
    u_below = u_below && u0[k] <= v0[k];
    v_below = v_below && v0[k] <= u0[k];
  }
  if (!u0.bc().is_periodic()) {
    u_below = u_below && u0.bc().value <= v0.bc().value;
    v_below = v_below && v0.bc().value <= u0.bc().value;
  }
  if (u_below || v_below) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < u.times().size(); ++s) {
      const GridFunction& a = u.snapshots()[s];
      const GridFunction& b = v.snapshots()[s];
      for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::min(worst, u_below ? b[k] - a[k] : a[k] - b[k]);
      }
    }
    rep.add("comparison", worst, 1e-12, "ordered initial data stay ordered");
  }
  return rep;
}

PropertyReport check_extremal_convergence(const std::vector<Trajectory>& trajs, Interval inner_box,
                                          double factor) {
  if (trajs.size() < 3) throw ConfigError("extremal convergence needs at least 3 trajectories");
  PropertyReport rep;
  double mono = std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < trajs.size(); ++r) {
    const auto& a = trajs[r - 1];
    const auto& b = trajs[r];
    if (a.times() != b.times()) throw ShapeError("truncated runs differ in snapshot times");
    for (std::size_t s = 0; s < a.times().size(); ++s) {
      const GridFunction& ga = a.snapshots()[s];
      const GridFunction& gb = b.snapshots()[s];
      if (ga.shape() != gb.shape()) throw ShapeError("truncated runs differ in grid");
      for (std::size_t k = 0; k < ga.size(); ++k) mono = std::min(mono, ga[k] - gb[k]);
    }
  }
  rep.add("monotone_in_r", mono, 1e-10, "u_{r+1} <= u_r cellwise at every snapshot");

  std::vector<double> diffs;
  for (std::size_t r = 1; r < trajs.size(); ++r) {
    const GridFunction& ga = trajs[r - 1].final_state();
    const GridFunction& gb = trajs[r].final_state();
    double d = 0.0;
    for (std::size_t k = 0; k < ga.size(); ++k) {
      const Vec2 x = ga.center_of(k);
      bool inside = inner_box.contains(x[0]);
      if (ga.dim() == 2) inside = inside && inner_box.contains(x[1]);
      if (inside) d += std::abs(ga[k] - gb[k]);
    }
    diffs.push_back(d * ga.cell_volume());
  }
  double worst = std::numeric_limits<double>::infinity();
  std::string detail = "inner-box L1 differences:";
  for (double d : diffs) detail += " " + fmt(d);
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    worst = std::min(worst, diffs[i - 1] / factor - diffs[i]);
  }
  rep.add("cauchy_inner_box", worst, 1e-12, detail);
  return rep;
}

CoincidenceResult check_periodic_coincidence(const ScalarModel& model, const GridFunction& u0,
                                             const SolverConfig& config, int tiles, double b_lo,
                                             double b_hi, double tolerance) {
  if (!u0.bc().is_periodic() || u0.dim() != 1) {
    throw ConfigError("coincidence check needs one-dimensional periodic data");
  }
  if (tiles < 1) throw ConfigError("tiles must be >= 1");
  if (!(b_lo <= u0.min() && b_hi >= u0.max())) throw ConfigError("need b_lo <= u0 <= b_hi");
  const double h = u0.cell_size();
  const long period = static_cast<long>(u0.nx());
  const Interval range{b_lo, b_hi};
  const double speed = model.flux_slope_bound(range);
  const double reach = 2.0 * speed * config.t_end + 20.0 * h;
  const double radius = tiles * period * h;
  const long extra = static_cast<long>(std::ceil((reach + 20.0 * h) / h));
  const long half = tiles * period + extra;
  // Whole grid aligned with u0's cells: cell i covers origin + (i - half) h.
  const Vec2 origin{u0.origin()[0] - h * static_cast<double>(half), 0.0};
  const std::size_t n = static_cast<std::size_t>(2 * half + period);
  const auto build = [&](double b) {
    std::vector<double> v(n);
    const double center = u0.origin()[0] + 0.5 * period * h;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = origin[0] + h * (static_cast<double>(i) + 0.5);
      const long j = ((static_cast<long>(i) - half) % period + period) % period;
      v[i] = std::abs(x - center) <= radius ? u0[static_cast<std::size_t>(j)] : b;
    }
    return GridFunction(1, origin, h, {n, 1}, std::move(v), Boundary::far_field(b));
  };
  SolverConfig shared = config;
  shared.certified_range = range;
  const Trajectory tp = solve(u0, model, shared);
  const Trajectory hi = solve(build(b_hi), model, shared);
  const Trajectory lo = solve(build(b_lo), model, shared);

  CoincidenceResult res;
  double order = std::numeric_limits<double>::infinity();
  double gap = 0.0;
  const double center = u0.origin()[0] + 0.5 * period * h;
  const double inner = radius - reach;
  if (!(inner > 0.0)) throw ConfigError("too few tiles for the horizon");
  for (std::size_t s = 0; s < tp.times().size(); ++s) {
    const GridFunction p = sample_periodic(tp.snapshots()[s], hi.snapshots()[s]);
    const GridFunction& a = lo.snapshots()[s];
    const GridFunction& b = hi.snapshots()[s];
    for (std::size_t i = 0; i < n; ++i) {
      order = std::min({order, p[i] - a[i], b[i] - p[i]});
      const double x = a.center_of(i)[0];
      if (std::abs(x - center) <= inner) gap = std::max(gap, b[i] - a[i]);
    }
  }
  res.gap = gap;
  res.report.add("bracketing", order, 1e-10, "u_- <= u_per <= u_+ cellwise");
  res.report.add("coincidence", -gap, tolerance, "max |u_+ - u_-| on the inner region");
  return res;
}

}  // namespace dcd
