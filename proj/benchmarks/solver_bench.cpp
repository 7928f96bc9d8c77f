#include <benchmark/benchmark.h>

#include "dcd/harness.hpp"
#include "dcd/solver.hpp"

namespace {

void BM_StepBurgers1D(benchmark::State& state) {
  const auto cells = static_cast<std::size_t>(state.range(0));
  dcd::ScalarModel model = dcd::ScalarModel::burgers();
  dcd::GridFunction u = dcd::burgers_exact_grid(
      0.0, dcd::GridFunction::on_box(1, {-1.0, 4.0}, cells, 0.0, dcd::Boundary::far_field()));
  dcd::Stepper stepper(model, 1, u.cell_size(), {0.0, 1.0}, 0.45);
  dcd::GridFunction out = u;
  const double dt = stepper.info().dt_max;
  for (auto _ : state) {
    stepper.advance(u, out, dt);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cells));
}
BENCHMARK(BM_StepBurgers1D)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_StepDiffusion2D(benchmark::State& state) {
  const auto cells = static_cast<std::size_t>(state.range(0));
  dcd::PiecewisePoly one = dcd::PiecewisePoly::constant(1.0), zero = dcd::PiecewisePoly::constant(0.0);
  dcd::ScalarModel model(2, {dcd::PiecewisePoly::monomial({0.0, 0.0, 0.5}), zero}, {one, zero, zero, one},
                         {-1.0, 1.0});
  dcd::GridFunction u = dcd::GridFunction::on_box(2, {0.0, 1.0}, cells, 0.0, dcd::Boundary::periodic());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = (k % 7) * 0.1 - 0.3;
  dcd::Stepper stepper(model, 2, u.cell_size(), {-1.0, 1.0}, 0.3);
  dcd::GridFunction out = u;
  const double dt = stepper.info().dt_max;
  for (auto _ : state) {
    stepper.advance(u, out, dt);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(u.size()));
}
BENCHMARK(BM_StepDiffusion2D)->Arg(64)->Arg(256);

}  // namespace
