#include "dcd/lattice.hpp"

#include <cmath>
#include <random>
#include <string>

#include "dcd/errors.hpp"

namespace dcd {

LatticeSpec::LatticeSpec(int dim, Mat2 basis) : dim_(dim), basis_(basis), dual_{} {
  if (dim != 1 && dim != 2) throw ConfigError("lattice dimension must be 1 or 2");
  if (dim == 1) {
    basis_ = {basis[0], 0.0, 0.0, 0.0};
    if (!(std::abs(basis_[0]) > 1e-10)) throw ConfigError("singular lattice basis");
    dual_ = {1.0 / basis_[0], 0.0, 0.0, 0.0};
    return;
  }
  const double det = basis_[0] * basis_[3] - basis_[1] * basis_[2];
  if (!(std::abs(det) > 1e-10)) throw ConfigError("singular lattice basis");
  // inverse = [d -b; -c a] / det, dual = inverse^T.
  dual_ = {basis_[3] / det, -basis_[2] / det, -basis_[1] / det, basis_[0] / det};
}

LatticeSpec LatticeSpec::integer(int dim) {
  return LatticeSpec(dim, dim == 1 ? Mat2{1.0, 0.0, 0.0, 0.0} : Mat2{1.0, 0.0, 0.0, 1.0});
}

Vec2 LatticeSpec::generator(int k) const {
  if (dim_ == 1) return {basis_[0], 0.0};
  return {basis_[k], basis_[2 + k]};
}

Vec2 LatticeSpec::dual_generator(int k) const {
  if (dim_ == 1) return {dual_[0], 0.0};
  return {dual_[k], dual_[2 + k]};
}

Vec2 LatticeSpec::point(std::array<std::int64_t, 2> n) const {
  if (dim_ == 1) return {basis_[0] * static_cast<double>(n[0]), 0.0};
  const double a = static_cast<double>(n[0]), b = static_cast<double>(n[1]);
  return {basis_[0] * a + basis_[1] * b, basis_[2] * a + basis_[3] * b};
}

Vec2 LatticeSpec::dual_point(std::array<std::int64_t, 2> n) const {
  if (dim_ == 1) return {dual_[0] * static_cast<double>(n[0]), 0.0};
  const double a = static_cast<double>(n[0]), b = static_cast<double>(n[1]);
  return {dual_[0] * a + dual_[1] * b, dual_[2] * a + dual_[3] * b};
}

double LatticeSpec::determinant() const {
  if (dim_ == 1) return basis_[0];
  return basis_[0] * basis_[3] - basis_[1] * basis_[2];
}

bool LatticeSpec::axis_aligned(double tol) const {
  return dim_ == 1 || (std::abs(basis_[1]) <= tol && std::abs(basis_[2]) <= tol);
}

namespace {

// Orthonormal basis of span(vectors) in R^dim (Gram-Schmidt).
std::vector<Vec2> orthonormalize(const Subspace& vectors, int dim) {
  std::vector<Vec2> q;
  for (Vec2 v : vectors) {
    if (dim == 1) v[1] = 0.0;
    for (const Vec2& e : q) {
      const double d = v[0] * e[0] + v[1] * e[1];
      v[0] -= d * e[0];
      v[1] -= d * e[1];
    }
    const double n = std::hypot(v[0], v[1]);
    if (n > 1e-12) q.push_back({v[0] / n, v[1] / n});
  }
  if (static_cast<int>(q.size()) >= dim) throw ConfigError("subspace is not proper");
  return q;
}

double distance_to(const Vec2& p, const std::vector<Vec2>& onb) {
  Vec2 r = p;
  for (const Vec2& e : onb) {
    const double d = r[0] * e[0] + r[1] * e[1];
    r[0] -= d * e[0];
    r[1] -= d * e[1];
  }
  return std::hypot(r[0], r[1]);
}

}  // namespace

std::optional<LatticeViolation> find_lattice_violation(const Mat2& basis, int dim,
                                                       const std::vector<Subspace>& subspaces,
                                                       int xi_bound, double min_distance) {
  if (xi_bound < 1) throw ConfigError("xi_bound must be >= 1");
  std::vector<std::vector<Vec2>> onbs;
  for (const auto& s : subspaces) onbs.push_back(orthonormalize(s, dim));
  const std::int64_t b = xi_bound;
  const std::int64_t b2 = dim == 2 ? b : 0;
  for (std::int64_t i = -b; i <= b; ++i) {
    for (std::int64_t j = -b2; j <= b2; ++j) {
      if (i == 0 && j == 0) continue;
      Vec2 p;
      if (dim == 1) {
        p = {basis[0] * static_cast<double>(i), 0.0};
      } else {
        p = {basis[0] * i + basis[1] * j, basis[2] * i + basis[3] * j};
      }
      for (std::size_t s = 0; s < onbs.size(); ++s) {
        const double d = distance_to(p, onbs[s]);
        if (!(d > min_distance)) return LatticeViolation{{i, j}, s, d};
      }
    }
  }
  return std::nullopt;
}

LatticeSpec make_lattice(int dim, const std::vector<Subspace>& subspaces, int xi_bound,
                         std::uint64_t seed) {
  if (dim != 1 && dim != 2) throw ConfigError("lattice dimension must be 1 or 2");
  if (subspaces.empty()) return LatticeSpec::integer(dim);
  std::mt19937_64 rng(seed);
  // Portable uniform draw in [0.5, 1.5) with a random sign.
  auto uniform = [&rng] {
    const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return x;
  };
  auto entry = [&] {
    const double mag = 0.5 + uniform();
    return uniform() < 0.5 ? -mag : mag;
  };
  for (int attempt = 0; attempt < 100; ++attempt) {
    Mat2 basis = dim == 1 ? Mat2{entry(), 0.0, 0.0, 0.0} : Mat2{entry(), entry(), entry(), entry()};
    const double det = dim == 1 ? basis[0] : basis[0] * basis[3] - basis[1] * basis[2];
    if (std::abs(det) < 0.1) continue;
    if (!find_lattice_violation(basis, dim, subspaces, xi_bound)) return LatticeSpec(dim, basis);
  }
  throw GenerationError("make_lattice: 100 draws all met a subspace");
}

}  // namespace dcd
