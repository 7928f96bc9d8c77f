#include "dcd/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dcd/errors.hpp"
#include "dcd/lattice.hpp"

namespace dcd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

double min_eigenvalue(const Mat2& m, int dim) {
  if (dim == 1) return m[0];
  const double a = m[0], d = m[3], b = 0.5 * (m[1] + m[2]);
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), b);
  return mean - r;
}

double max_abs_eigenvalue(const Mat2& m, int dim) {
  if (dim == 1) return std::abs(m[0]);
  const double a = m[0], d = m[3], b = 0.5 * (m[1] + m[2]);
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), b);
  return std::max(std::abs(mean - r), std::abs(mean + r));
}

ScalarModel::ScalarModel(int dim, std::vector<PiecewisePoly> flux,
                         std::vector<PiecewisePoly> diffusion, Interval urange, std::string name)
    : dim_(dim),
      flux_(std::move(flux)),
      diffusion_(std::move(diffusion)),
      urange_(urange),
      name_(std::move(name)) {
  if (dim_ != 1 && dim_ != 2) throw ConfigError("model dimension must be 1 or 2");
  if (static_cast<int>(flux_.size()) != dim_) throw ConfigError("flux must have dim components");
  if (static_cast<int>(diffusion_.size()) != dim_ * dim_) {
    throw ConfigError("diffusion must have dim*dim entries");
  }
  if (!(urange_.lo < urange_.hi) || !std::isfinite(urange_.lo) || !std::isfinite(urange_.hi)) {
    throw ConfigError("urange must be a finite interval with lo < hi");
  }
  for (int i = 0; i < dim_; ++i) {
    if (!flux_[i].is_continuous()) {
      throw ConfigError("flux component " + std::to_string(i) + " is not continuous");
    }
    if (!flux_[i].in_domain(urange_.lo) || !flux_[i].in_domain(urange_.hi)) {
      throw ConfigError("flux component " + std::to_string(i) + " is not defined on urange");
    }
  }
  for (const auto& a : diffusion_) {
    if (!a.in_domain(urange_.lo) || !a.in_domain(urange_.hi)) {
      throw ConfigError("diffusion entry is not defined on urange");
    }
  }
  if (dim_ == 2 && !diffusion_[1].same_function(diffusion_[2])) {
    throw ConfigError("diffusion matrix is not symmetric");
  }

  // a(u) >= 0: 1000 uniform samples plus both sides of every breakpoint.
  std::vector<double> probes;
  constexpr int kSamples = 1000;
  for (int s = 0; s <= kSamples; ++s) {
    probes.push_back(urange_.lo + urange_.length() * s / kSamples);
  }
  for (const auto& a : diffusion_) {
    for (double b : a.breakpoints()) {
      if (urange_.contains(b)) probes.push_back(b);
    }
  }
  for (double u : probes) {
    Mat2 m = diffusion_at(u);
    if (min_eigenvalue(m, dim_) < -1e-10) {
      throw ConfigError("diffusion matrix is not nonnegative at u = " + std::to_string(u));
    }
    for (const auto& a : diffusion_) {
      if (a.breakpoints().size() > 2) {
        Mat2 l{};
        for (int k = 0; k < dim_ * dim_; ++k) l[k] = diffusion_[k].left_limit(u);
        if (min_eigenvalue(l, dim_) < -1e-10) {
          throw ConfigError("diffusion matrix is not nonnegative at u = " + std::to_string(u) + "-");
        }
        break;
      }
    }
  }

  primitive_.reserve(diffusion_.size());
  for (const auto& a : diffusion_) primitive_.push_back(a.primitive());
}

ScalarModel ScalarModel::burgers(Interval urange) {
  const Interval r{std::min(urange.lo, -1.0), std::max(urange.hi, 1.0)};
  return ScalarModel(1, {PiecewisePoly::monomial({0.0, 0.0, 0.5}, r)},
                     {PiecewisePoly::constant(0.0, r)}, urange, "burgers");
}

ScalarModel ScalarModel::linear_advection(double speed, Interval urange) {
  const Interval r{std::min(urange.lo, -1.0), std::max(urange.hi, 1.0)};
  return ScalarModel(1, {PiecewisePoly::monomial({0.0, speed}, r)},
                     {PiecewisePoly::constant(0.0, r)}, urange, "linear-advection");
}

Vec2 ScalarModel::flux_at(double u) const {
  Vec2 f{0.0, 0.0};
  for (int i = 0; i < dim_; ++i) f[i] = flux_[i](u);
  return f;
}

Mat2 ScalarModel::diffusion_at(double u) const {
  Mat2 m{};
  for (int k = 0; k < dim_ * dim_; ++k) m[k] = diffusion_[k](u);
  return m;
}

Mat2 ScalarModel::primitive_at(double u) const {
  Mat2 m{};
  for (int k = 0; k < dim_ * dim_; ++k) m[k] = primitive_[k](u);
  return m;
}

bool ScalarModel::diagonal_diffusion() const {
  if (dim_ == 1) return true;
  for (const auto& p : diffusion(0, 1).pieces()) {
    if (!p.is_zero()) return false;
  }
  return true;
}

bool ScalarModel::hyperbolic() const {
  for (const auto& a : diffusion_) {
    for (const auto& p : a.pieces()) {
      if (!p.is_zero()) return false;
    }
  }
  return true;
}

double ScalarModel::flux_slope_bound(int axis, Interval range, int samples) const {
  return flux_[axis].derivative().max_abs_on(range, samples);
}

double ScalarModel::flux_slope_bound(Interval range, int samples) const {
  double l = 0.0;
  for (int i = 0; i < dim_; ++i) l = std::max(l, flux_slope_bound(i, range, samples));
  return l;
}

double ScalarModel::diffusion_bound(Interval range, int samples) const {
  double best = 0.0;
  for (int i = 0; i < dim_; ++i) best = std::max(best, diffusion(i, i).max_abs_on(range, samples));
  if (dim_ == 2 && samples > 1) {
    for (int s = 0; s < samples; ++s) {
      const double u = range.lo + range.length() * s / (samples - 1);
      best = std::max(best, max_abs_eigenvalue(diffusion_at(u), dim_));
    }
    for (double b : all_breakpoints()) {
      if (range.contains(b)) best = std::max(best, max_abs_eigenvalue(diffusion_at(b), dim_));
    }
  }
  return best;
}

std::vector<double> ScalarModel::all_breakpoints() const {
  std::vector<double> out;
  for (const auto& f : flux_) out = merge_breakpoints(out, f.breakpoints());
  for (const auto& a : diffusion_) out = merge_breakpoints(out, a.breakpoints());
  return out;
}

KruzhkovFluxes kruzhkov_fluxes(const ScalarModel& model, double k, double u) {
  const Interval r = model.urange();
  if (!r.contains(k) || !r.contains(u)) {
    throw DomainError("kruzhkov_fluxes: arguments outside urange");
  }
  KruzhkovFluxes out;
  const int s = sgn(u - k);
  if (s == 0) return out;
  const Vec2 fu = model.flux_at(u), fk = model.flux_at(k);
  const Mat2 au = model.primitive_at(u), ak = model.primitive_at(k);
  for (int i = 0; i < 2; ++i) out.flux[i] = s * (fu[i] - fk[i]);
  for (int i = 0; i < 4; ++i) out.diffusion[i] = s * (au[i] - ak[i]);
  return out;
}

namespace {

// Pieces of the model on the merged breakpoints, including the unbounded
// extension intervals when every component extends.
struct Cell {
  double lo, hi;
  std::vector<Polynomial> flux;
  std::vector<Polynomial> diffusion;
};

std::vector<Cell> model_cells(const ScalarModel& model) {
  std::vector<double> bp = model.all_breakpoints();
  bool extends = true;
  for (const auto& f : model.flux()) extends = extends && f.extension() == Extension::kExtend;
  for (const auto& a : model.diffusion()) extends = extends && a.extension() == Extension::kExtend;
  std::vector<double> cuts;
  if (extends) cuts.push_back(-kInf);
  cuts.insert(cuts.end(), bp.begin(), bp.end());
  if (extends) cuts.push_back(kInf);

  std::vector<Cell> cells;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double probe;
    if (std::isinf(cuts[i])) {
      probe = cuts[i + 1] - 1.0;
    } else if (std::isinf(cuts[i + 1])) {
      probe = cuts[i] + 1.0;
    } else {
      probe = 0.5 * (cuts[i] + cuts[i + 1]);
    }
    Cell c{cuts[i], cuts[i + 1], {}, {}};
    for (const auto& f : model.flux()) c.flux.push_back(f.pieces()[f.piece_index(probe)]);
    for (const auto& a : model.diffusion()) c.diffusion.push_back(a.pieces()[a.piece_index(probe)]);
    cells.push_back(std::move(c));
  }
  return cells;
}

bool degenerate(const Cell& c) {
  for (const auto& p : c.flux) {
    if (!p.is_affine()) return false;
  }
  for (const auto& p : c.diffusion) {
    if (!p.is_zero()) return false;
  }
  return true;
}

// Two adjacent affine cells continue the same affine function (the flux is
// continuous, so equal slopes suffice).
bool same_affine(const Cell& a, const Cell& b) {
  for (std::size_t i = 0; i < a.flux.size(); ++i) {
    const auto slope = [](const Polynomial& p) { return p.coeffs().size() > 1 ? p.coeffs()[1] : 0.0; };
    if (slope(a.flux[i]) != slope(b.flux[i])) return false;
  }
  return true;
}

}  // namespace

GNReport check_gn(const ScalarModel& model) {
  const Interval ur = model.urange();
  if (!(ur.lo < 0.0 && ur.hi > 0.0)) throw ConfigError("check_gn: urange must contain 0 in its interior");

  // Maximal open degenerate intervals on the whole definition range.
  std::vector<Interval> runs;
  const std::vector<Cell> cells = model_cells(model);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!degenerate(cells[i])) continue;
    if (!runs.empty() && runs.back().hi == cells[i].lo && i > 0 && degenerate(cells[i - 1]) &&
        same_affine(cells[i - 1], cells[i])) {
      runs.back().hi = cells[i].hi;
    } else {
      runs.push_back({cells[i].lo, cells[i].hi});
    }
  }

  GNReport report;
  report.urange = ur;
  for (const Interval& r : runs) {
    const double lo = std::max(r.lo, ur.lo), hi = std::min(r.hi, ur.hi);
    if (lo < hi) report.degenerate.push_back({lo, hi});
    // Linear on (a, 0) or (0, b): the run reaches 0 from either side.
    if (r.lo <= 0.0 && r.hi >= 0.0 && report.holds) {
      report.holds = false;
      if (r.hi > 0.0) {
        report.witness = Interval{std::max(r.lo, 0.0), std::min(r.hi, ur.hi)};
      } else {
        report.witness = Interval{std::max(r.lo, ur.lo), 0.0};
      }
    }
  }

  // F within urange: complement of the open runs. Runs only touch at
  // points where the slope changes, and such points belong to F.
  double cursor = ur.lo;
  for (const Interval& r : runs) {
    if (r.hi <= ur.lo || r.lo >= ur.hi) continue;
    if (r.lo >= cursor) report.f_set.push_back({cursor, r.lo});
    cursor = r.hi;
  }
  if (cursor <= ur.hi) report.f_set.push_back({cursor, ur.hi});

  report.sup_f_minus = -kInf;
  report.inf_f_plus = kInf;
  for (const Interval& f : report.f_set) {
    if (f.lo < 0.0) report.sup_f_minus = std::max(report.sup_f_minus, std::min(f.hi, 0.0));
    if (f.hi > 0.0) report.inf_f_plus = std::min(report.inf_f_plus, std::max(f.lo, 0.0));
  }
  return report;
}

std::pair<double, double> nearest_f_values(const GNReport& report, double m_minus, double m_plus) {
  if (!(m_minus <= m_plus)) throw ConfigError("nearest_f_values: need m_minus <= m_plus");
  double b_minus = -kInf, b_plus = kInf;
  for (const Interval& f : report.f_set) {
    if (f.lo <= m_minus) b_minus = std::max(b_minus, std::min(f.hi, m_minus));
    if (f.hi >= m_plus) b_plus = std::min(b_plus, std::max(f.lo, m_plus));
  }
  if (std::isinf(b_minus)) {
    throw AnalysisError("no point of F at or below m- = " + std::to_string(m_minus) + " within urange");
  }
  if (std::isinf(b_plus)) {
    throw AnalysisError("no point of F at or above m+ = " + std::to_string(m_plus) + " within urange");
  }
  return {b_minus, b_plus};
}

namespace {

// xi . phi affine and a xi.xi == 0 on every cell meeting (lo, hi), with the
// affine pieces joined by equal slopes. Coefficients are compared against
// a tolerance because xi is real.
bool linear_near(const std::vector<Cell>& cells, const Vec2& xi, int dim, double lo, double hi) {
  bool have_slope = false;
  double slope = 0.0;
  for (const Cell& c : cells) {
    if (c.hi <= lo || c.lo >= hi) continue;
    Polynomial q = c.flux[0] * xi[0];
    if (dim == 2) q += c.flux[1] * xi[1];
    double scale = 0.0;
    for (int i = 0; i < dim; ++i) {
      for (double v : c.flux[i].coeffs()) scale = std::max(scale, std::abs(v) * std::abs(xi[i]));
    }
    const double tol = 1e-12 * std::max(1.0, scale);
    if (q.degree(tol) > 1) return false;
    const double s = q.coeffs().size() > 1 ? q.coeffs()[1] : 0.0;
    if (have_slope && std::abs(s - slope) > tol) return false;
    have_slope = true;
    slope = s;

    Polynomial d = c.diffusion[0] * (xi[0] * xi[0]);
    double dscale = 0.0;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (i == 0 && j == 0) continue;
        d += c.diffusion[i * dim + j] * (xi[i] * xi[j]);
      }
    }
    for (int k = 0; k < dim * dim; ++k) {
      for (double v : c.diffusion[k].coeffs()) dscale = std::max(dscale, std::abs(v));
    }
    const double dtol = 1e-12 * std::max(1.0, dscale * (xi[0] * xi[0] + xi[1] * xi[1]));
    if (d.degree(dtol) >= 0) return false;
  }
  return true;
}

}  // namespace

HypothesisReport thm_hypothesis_periodic(const ScalarModel& model, const LatticeSpec& lattice,
                                         double mean, int xi_bound) {
  if (xi_bound < 1) throw ConfigError("xi_bound must be >= 1");
  if (lattice.dim() != model.dim()) throw ConfigError("lattice and model dimensions differ");
  const Interval ur = model.urange();
  if (!(mean > ur.lo && mean < ur.hi)) throw ConfigError("mean must lie in the interior of urange");

  const std::vector<Cell> cells = model_cells(model);
  const int dim = model.dim();

  // One representative per +-pair, ordered by sup norm, then l1 norm, then
  // lexicographically.
  std::vector<std::array<std::int64_t, 2>> coords;
  const std::int64_t b = xi_bound;
  for (std::int64_t i = (dim == 1 ? 1 : -b); i <= b; ++i) {
    for (std::int64_t j = (dim == 1 ? 0 : -b); j <= (dim == 1 ? 0 : b); ++j) {
      if (i == 0 && j == 0) continue;
      const bool positive = i > 0 || (i == 0 && j > 0);
      if (positive) coords.push_back({i, j});
    }
  }
  std::sort(coords.begin(), coords.end(), [](const auto& x, const auto& y) {
    const auto inf = [](const auto& v) { return std::max(std::abs(v[0]), std::abs(v[1])); };
    const auto l1 = [](const auto& v) { return std::abs(v[0]) + std::abs(v[1]); };
    if (inf(x) != inf(y)) return inf(x) < inf(y);
    if (l1(x) != l1(y)) return l1(x) < l1(y);
    return x < y;
  });

  HypothesisReport report;
  report.xi_bound = xi_bound;
  report.mean = mean;
  const double delta0 = std::min(mean - ur.lo, ur.hi - mean);
  constexpr int kShrinkSteps = 40;
  for (const auto& n : coords) {
    const Vec2 xi = lattice.dual_point(n);
    ++report.vectors_checked;
    for (int s = 0; s <= kShrinkSteps; ++s) {
      const double delta = delta0 * std::ldexp(1.0, -s);
      if (linear_near(cells, xi, dim, mean - delta, mean + delta)) {
        ++report.witness_count;
        if (report.witnesses.size() < 16) {
          report.witnesses.push_back({n, xi, {mean - delta, mean + delta}});
        }
        break;
      }
    }
  }
  report.verified = report.witness_count == 0;
  report.note = "hypothesis " + std::string(report.verified ? "verified" : "violated") +
                " up to |xi|_inf <= " + std::to_string(xi_bound) + " in dual-basis coordinates";
  return report;
}

}  // namespace dcd
