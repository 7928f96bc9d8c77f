#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcd/grid.hpp"
#include "dcd/model.hpp"

namespace dcd {

struct SolverConfig {
  double cfl = 0.45;
  double t_end = 1.0;
  // Requested output times in [0, t_end]; 0 and t_end are always emitted.
  std::vector<double> snapshot_times;
  int lipschitz_samples = 1024;
  // Range used for the wave-speed and diffusion bounds. Defaults to the
  // range of the initial data (and far-field value). Runs that are compared
  // cell by cell should share one range so they share the operator and dt.
  std::optional<Interval> certified_range;
  // Abort with DomainTooSmall once a FarField boundary cell moves.
  bool boundary_guard = true;
  double boundary_tolerance = 1e-6;
  std::size_t max_steps = 200'000'000;

  void validate() const;
};

// Constants of the discrete operator, fixed for a whole solve.
struct SchemeInfo {
  std::string flux = "rusanov";
  Interval range;
  Vec2 lambda{};             // per-axis Rusanov coefficient, max |phi_i'| on range
  double flux_bound = 0.0;   // max_i lambda_i
  double diffusion_bound = 0.0;
  double dt_max = 0.0;
  // dt/h sum lambda_i + 2 dt/h^2 sum max a_ii <= 1 with diagonal diffusion:
  // the update is nondecreasing in every argument.
  bool monotone = false;
  // Cross-diffusion stencil in use; discrete principles are not guaranteed.
  bool diagnostic_only = false;
};

struct StepRun {
  double dt = 0.0;
  std::size_t count = 0;
};

class Trajectory {
 public:
  Trajectory(ScalarModel model, GridFunction initial, SchemeInfo scheme = {});

  const ScalarModel& model() const { return model_; }
  const GridFunction& initial() const { return initial_; }
  const SchemeInfo& scheme() const { return scheme_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<GridFunction>& snapshots() const { return snapshots_; }
  const GridFunction& final_state() const { return snapshots_.back(); }
  // Snapshot whose time equals t to 1e-12; throws DomainError otherwise.
  const GridFunction& at(double t) const;
  // Run-length encoded step sizes.
  const std::vector<StepRun>& steps() const { return steps_; }
  std::size_t step_count() const;

  // Appends a snapshot; times must increase and geometry must match.
  void add_snapshot(double t, GridFunction g);
  void record_step(double dt);

 private:
  ScalarModel model_;
  GridFunction initial_;
  SchemeInfo scheme_;
  std::vector<double> times_;
  std::vector<GridFunction> snapshots_;
  std::vector<StepRun> steps_;
};

// Explicit conservative update with precomputed constants.
class Stepper {
 public:
  Stepper(const ScalarModel& model, int dim, double cell_size, Interval range, double cfl,
          int samples = 1024);

  const SchemeInfo& info() const { return info_; }
  // u -> out after one step of size dt (out is resized as needed).
  void advance(const GridFunction& u, GridFunction& out, double dt) const;
  GridFunction step(const GridFunction& u, double dt) const;

 private:
  const ScalarModel* model_;
  double h_;
  SchemeInfo info_;
  bool has_diffusion_;
  bool has_cross_;
};

// cfl * min(h / L_phi, h^2 / (2 dim L_a)) over the range of u (or the
// configured certified range); t_end when both bounds vanish.
double cfl_dt(const GridFunction& u, const ScalarModel& model, const SolverConfig& config);

// One step with wave speeds bounded over the range of u.
GridFunction step(const GridFunction& u, const ScalarModel& model, double dt);

Trajectory solve(const GridFunction& u0, const ScalarModel& model, const SolverConfig& config);

// u0 inside |x| <= radius_r, b_r outside (FarField b_r), solved for every r
// with one shared certified range.
std::vector<Trajectory> truncation_sequence(const GridFunction& u0, const ScalarModel& model,
                                            const SolverConfig& config,
                                            const std::vector<double>& b_list,
                                            const std::vector<double>& radius_list);

GridFunction truncated_initial(const GridFunction& u0, double b, double radius);

}  // namespace dcd
