#include <benchmark/benchmark.h>

#include "dcd/grid.hpp"
#include "dcd/harness.hpp"

namespace {

void BM_XNorm1D(benchmark::State& state) {
  const auto cells = static_cast<std::size_t>(state.range(0));
  dcd::GridFunction g = dcd::example1_initial(3, {0.0, 40.0}, cells);
  for (auto _ : state) benchmark::DoNotOptimize(dcd::x_norm(g));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cells));
}
BENCHMARK(BM_XNorm1D)->Arg(4000)->Arg(16000);

void BM_XNorm2D(benchmark::State& state) {
  const auto cells = static_cast<std::size_t>(state.range(0));
  dcd::GridFunction g = dcd::GridFunction::on_box(2, {-4.0, 4.0}, cells, 0.0, dcd::Boundary::periodic());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = static_cast<double>((k * 2654435761u) % 1000) / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(dcd::x_norm(g));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_XNorm2D)->Arg(64)->Arg(128);

}  // namespace
