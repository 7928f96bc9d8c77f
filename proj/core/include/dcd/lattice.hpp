#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dcd/model.hpp"

namespace dcd {

// Lattice L = basis * Z^dim (columns are the generators e_k) and its dual
// L' = {xi : xi . e in Z for all e in L}, whose basis is basis^{-T}.
class LatticeSpec {
 public:
  LatticeSpec(int dim, Mat2 basis);

  static LatticeSpec integer(int dim);

  int dim() const { return dim_; }
  const Mat2& basis() const { return basis_; }
  const Mat2& dual() const { return dual_; }

  // Column k of the basis / dual basis.
  Vec2 generator(int k) const;
  Vec2 dual_generator(int k) const;
  // basis * n and dual * n for integer coordinates n.
  Vec2 point(std::array<std::int64_t, 2> n) const;
  Vec2 dual_point(std::array<std::int64_t, 2> n) const;

  double determinant() const;
  // Off-diagonal basis entries vanish: the fundamental cell is a box.
  bool axis_aligned(double tol = 1e-12) const;

 private:
  int dim_;
  Mat2 basis_;
  Mat2 dual_;
};

// A linear subspace of R^dim given by spanning vectors (possibly none,
// meaning {0}).
using Subspace = std::vector<Vec2>;

struct LatticeViolation {
  std::array<std::int64_t, 2> coords{};
  std::size_t subspace = 0;
  double distance = 0.0;
};

// First integer vector n, 0 < |n|_inf <= xi_bound, whose image basis * n
// lies within min_distance of one of the subspaces.
std::optional<LatticeViolation> find_lattice_violation(const Mat2& basis, int dim,
                                                       const std::vector<Subspace>& subspaces,
                                                       int xi_bound, double min_distance = 1e-9);

// Seeded random lattice avoiding every subspace on the bounded integer box.
// With no subspaces the integer lattice is returned. Throws GenerationError
// after 100 rejected draws.
LatticeSpec make_lattice(int dim, const std::vector<Subspace>& subspaces, int xi_bound,
                         std::uint64_t seed);

}  // namespace dcd
