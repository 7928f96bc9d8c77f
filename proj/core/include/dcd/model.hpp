#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcd/piecewise_poly.hpp"

namespace dcd {

class LatticeSpec;

using Vec2 = std::array<double, 2>;
// Row-major 2x2; in one dimension only entry 0 is used.
using Mat2 = std::array<double, 4>;

// u_t + div phi(u) - D^2 . A(u) = 0 with A' = a, A(0) = 0.
class ScalarModel {
 public:
  // `diffusion` is row-major dim x dim. Validates continuity of the flux,
  // symmetry of the diffusion, and nonnegativity of a(u) on urange.
  ScalarModel(int dim, std::vector<PiecewisePoly> flux, std::vector<PiecewisePoly> diffusion,
              Interval urange, std::string name = {});

  // phi = u^2/2, a = 0.
  static ScalarModel burgers(Interval urange = {-1.0, 1.0});
  // phi = c u, a = 0 (one dimension).
  static ScalarModel linear_advection(double speed, Interval urange = {-1.0, 1.0});

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  Interval urange() const { return urange_; }

  const PiecewisePoly& flux(int i) const { return flux_[i]; }
  const PiecewisePoly& diffusion(int i, int j) const { return diffusion_[i * dim_ + j]; }
  const PiecewisePoly& primitive(int i, int j) const { return primitive_[i * dim_ + j]; }
  const std::vector<PiecewisePoly>& flux() const { return flux_; }
  const std::vector<PiecewisePoly>& diffusion() const { return diffusion_; }

  Vec2 flux_at(double u) const;
  Mat2 diffusion_at(double u) const;
  Mat2 primitive_at(double u) const;

  // Off-diagonal diffusion entries are the zero function.
  bool diagonal_diffusion() const;
  // All diffusion entries vanish identically.
  bool hyperbolic() const;

  // max_u |phi_i'(u)| over `range` (see PiecewisePoly::max_abs_on).
  double flux_slope_bound(int axis, Interval range, int samples = 1024) const;
  // max over axes of flux_slope_bound.
  double flux_slope_bound(Interval range, int samples = 1024) const;
  // Upper bound for the spectral radius of a(u) over `range`: the sampled
  // spectral radius, never below the exact maxima of the diagonal entries.
  double diffusion_bound(Interval range, int samples = 1024) const;

  // Every polynomial breakpoint of flux and diffusion, sorted and unique.
  std::vector<double> all_breakpoints() const;

 private:
  int dim_;
  std::vector<PiecewisePoly> flux_;
  std::vector<PiecewisePoly> diffusion_;
  std::vector<PiecewisePoly> primitive_;
  Interval urange_;
  std::string name_;
};

// Kruzhkov entropy flux Phi_k(u) = sgn(u-k)(phi(u) - phi(k)) and its
// diffusive counterpart H_k(u) = sgn(u-k)(A(u) - A(k)).
struct KruzhkovFluxes {
  Vec2 flux{};
  Mat2 diffusion{};
};
KruzhkovFluxes kruzhkov_fluxes(const ScalarModel& model, double k, double u);

// Smallest eigenvalue of the symmetric part of a dim x dim matrix.
double min_eigenvalue(const Mat2& m, int dim);
double max_abs_eigenvalue(const Mat2& m, int dim);

// Result of the nonlinearity-diffusivity analysis.
struct GNReport {
  bool holds = true;
  // Interval adjacent to 0 on which the equation is linear first order.
  std::optional<Interval> witness;
  // Maximal open intervals (as lo/hi pairs, intersected with urange) on
  // which every flux component is affine and the diffusion vanishes.
  std::vector<Interval> degenerate;
  // F intersected with urange as closed intervals; points appear as
  // degenerate intervals [c, c].
  std::vector<Interval> f_set;
  // -inf / +inf when the corresponding half of F is empty.
  double sup_f_minus = 0.0;
  double inf_f_plus = 0.0;
  Interval urange;
};

GNReport check_gn(const ScalarModel& model);

// B- = max{v in F : v <= m_minus}, B+ = min{v in F : v >= m_plus}.
std::pair<double, double> nearest_f_values(const GNReport& report, double m_minus, double m_plus);

struct HypothesisWitness {
  std::array<std::int64_t, 2> coords{};  // integer coordinates in the dual basis
  Vec2 xi{};
  Interval neighborhood;
};

struct HypothesisReport {
  bool verified = true;
  int xi_bound = 0;
  double mean = 0.0;
  std::size_t vectors_checked = 0;
  std::size_t witness_count = 0;
  // First few offending vectors in enumeration order (shortest first).
  std::vector<HypothesisWitness> witnesses;
  std::string note;
};

// For every nonzero xi in the dual lattice with integer coordinates bounded
// by xi_bound, checks that no neighborhood of `mean` has xi.phi affine and
// a(u) xi.xi = 0 at once. xi and -xi are equivalent; one of each pair is
// enumerated.
HypothesisReport thm_hypothesis_periodic(const ScalarModel& model, const LatticeSpec& lattice,
                                         double mean, int xi_bound = 50);

}  // namespace dcd
