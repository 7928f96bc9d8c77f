#pragma once

#include <vector>

#include "dcd/solver.hpp"

namespace dcd {

// psi(s) = exp(1 - 1 / (1 - s^2)) on |s| < 1, 0 elsewhere; psi(0) = 1.
double bump(double s);
double bump_d1(double s);
double bump_d2(double s);

// f(t, x) = psi((t - t0) / tau) prod_i psi((x_i - center_i) / rho).
struct BumpSpec {
  double t0 = 0.5;
  double tau = 0.25;
  Vec2 center{};
  double rho = 0.5;

  double value(double t, Vec2 x, int dim) const;
  double dt(double t, Vec2 x, int dim) const;
  Vec2 grad(double t, Vec2 x, int dim) const;
  // Row-major Hessian in x.
  Mat2 hessian(double t, Vec2 x, int dim) const;
};

struct EntropyResidual {
  double k = 0.0;
  std::size_t test = 0;
  double value = 0.0;
};

// For every (k, test) pair: quadrature of
//   eta(u) f_t + T_{eta'}(phi)(u) . grad f + T_{eta'}(A)(u) : D^2 f
// over the trajectory (trapezoid in t over the snapshots, midpoint in x)
// plus int eta(u0) f(0, x) dx, with eta the mollified Kruzhkov entropy at
// level k. eps <= 0 picks 2 h L_phi (2 h if the flux is flat). Entropy
// consistent data give values >= 0 up to quadrature error.
std::vector<EntropyResidual> entropy_residual(const Trajectory& traj, const std::vector<double>& k_values,
                                              const std::vector<BumpSpec>& tests, double eps = 0.0);

// Cell averages of the frozen profile u = left for x < x0 + speed t, right
// beyond, at the given times (no solve involved).
Trajectory frozen_discontinuity(const ScalarModel& model, Interval box, std::size_t cells, double left,
                                double right, double x0, double speed, const std::vector<double>& times);

}  // namespace dcd
