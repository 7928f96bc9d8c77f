#include "dcd/initial.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "dcd/errors.hpp"
#include "dcd/harness.hpp"
#include "dcd/io.hpp"

namespace dcd {

GridFunction GridSpec::make(double value) const {
  if (dim != 1 && dim != 2) throw ConfigError("grid dim must be 1 or 2");
  if (!(x.lo < x.hi) || (dim == 2 && !(y.lo < y.hi))) throw ConfigError("grid box must have lo < hi");
  if (nx == 0 || (dim == 2 && ny == 0)) throw ConfigError("grid needs cells on every axis");
  const double h = x.length() / static_cast<double>(nx);
  if (dim == 2) {
    const double hy = y.length() / static_cast<double>(ny);
    if (std::abs(hy - h) > 1e-12 * h) throw ConfigError("grid spacing must be equal on both axes");
  }
  return GridFunction::filled(dim, {x.lo, dim == 2 ? y.lo : 0.0}, h, {nx, dim == 2 ? ny : 1}, value, bc);
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

constexpr int kSub = 4;

GridFunction sample(const GridSpec& grid, double far, const std::function<double(double, double)>& f) {
  GridSpec gs = grid;
  if (!gs.bc.is_periodic()) gs.bc.value = far;
  GridFunction g = gs.make();
  const double h = g.cell_size();
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double x0 = g.origin()[0] + h * static_cast<double>(i);
      const double y0 = g.origin()[1] + h * static_cast<double>(j);
      double acc = 0.0;
      int count = 0;
      for (int b = 0; b < (g.dim() == 2 ? kSub : 1); ++b) {
        const double y = g.dim() == 2 ? y0 + h * (b + 0.5) / kSub : 0.0;
        for (int a = 0; a < kSub; ++a) {
          acc += f(x0 + h * (a + 0.5) / kSub, y);
          ++count;
        }
      }
      g[j * g.nx() + i] = acc / count;
    }
  }
  return g;
}

}  // namespace

GridFunction build_initial(const InitialSpec& s, const GridSpec& grid) {
  const double pi = std::numbers::pi;
  const double far = grid.bc.is_periodic() ? 0.0 : grid.bc.value;
  const int dim = grid.dim;

  if (s.family == "constant") {
    GridSpec gs = grid;
    if (!gs.bc.is_periodic()) gs.bc.value = s.value;
    return gs.make(s.value);
  }
  if (s.family == "box") {
    if (!(s.lo < s.hi)) throw ConfigError("box needs lo < hi");
    return sample(grid, far, [&](double x, double y) {
      const bool in = x >= s.lo && x <= s.hi && (dim == 1 || (y >= s.lo && y <= s.hi));
      return in ? s.height : far;
    });
  }
  if (s.family == "sine") {
    const double lx = grid.x.length(), ly = grid.y.length();
    return sample(grid, far, [&](double x, double y) {
      double phase = s.kx * (x - grid.x.lo) / lx;
      if (dim == 2) phase += s.ky * (y - grid.y.lo) / ly;
      return s.mean + s.amplitude * std::sin(2.0 * pi * phase);
    });
  }
  if (s.family == "bump") {
    if (!(s.radius > 0.0)) throw ConfigError("bump radius must be positive");
    const double rho = s.radius;
    const double height = dim == 1 ? s.mass / rho : s.mass / (rho * rho * (pi / 2.0 - 2.0 / pi));
    return sample(grid, far, [&](double x, double y) {
      const double r = dim == 1 ? std::abs(x - s.center[0]) : std::hypot(x - s.center[0], y - s.center[1]);
      return r < rho ? far + 0.5 * height * (1.0 + std::cos(pi * r / rho)) : far;
    });
  }
  if (s.family == "example1") {
    if (dim != 1 || grid.bc.is_periodic()) throw ConfigError("example1 is a 1D FarField family");
    return example1_initial(s.n_blocks, grid.x, grid.nx);
  }
  if (s.family == "random") {
    if (!s.seed) throw ConfigError("random initial data need a seed");
    if (!(s.lo <= s.hi) || !(s.piece > 0.0)) throw ConfigError("random needs lo <= hi and piece > 0");
    std::mt19937_64 rng(*s.seed);
    const double sx = s.support_lo, sy = s.support_lo;
    const auto count = static_cast<std::size_t>(std::ceil((s.support_hi - s.support_lo) / s.piece));
    if (count == 0 || count > 4096) throw ConfigError("random support must hold 1..4096 pieces per axis");
    std::vector<double> vals(dim == 2 ? count * count : count);
    for (double& v : vals) v = s.lo + (s.hi - s.lo) * unit_uniform(rng());
    return sample(grid, far, [&](double x, double y) {
      if (x < s.support_lo || x >= s.support_hi) return far;
      const auto i = std::min(count - 1, static_cast<std::size_t>((x - sx) / s.piece));
      if (dim == 1) return vals[i];
      if (y < s.support_lo || y >= s.support_hi) return far;
      const auto j = std::min(count - 1, static_cast<std::size_t>((y - sy) / s.piece));
      return vals[j * count + i];
    });
  }
  if (s.family == "snapshot") {
    if (s.path.empty()) throw ConfigError("snapshot family needs a path");
    return read_grid(s.path);
  }
  throw ConfigError("unknown initial-data family \"" + s.family + "\"");
}

}  // namespace dcd
