#include <benchmark/benchmark.h>

#include "sgp/analysis.hpp"
#include "sgp/catalog.hpp"
#include "sgp/projector.hpp"
#include "sgp/yy.hpp"

using namespace sgp;

namespace {

void BM_ProjectPnorm(benchmark::State& state) {
  auto e = catalog::make_pnorm_power(4.0);
  const auto xs = analysis::draw_points(analysis::SampleSpec::cube(2, -3, 3, 1024, 1));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_projector(e.handle, xs[i++ & 1023]));
  }
}
BENCHMARK(BM_ProjectPnorm);

void BM_ProjectMaxDist(benchmark::State& state) {
  auto e = catalog::make_max_dist_example();
  const auto xs = analysis::draw_points(analysis::SampleSpec::cube(2, -3, 3, 1024, 2));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_projector(e.handle, xs[i++ & 1023]));
  }
}
BENCHMARK(BM_ProjectMaxDist);

void BM_CheckPairwiseFirm(benchmark::State& state) {
  auto e = catalog::make_huber(2);
  const auto spec = analysis::SampleSpec::cube(2, -3, 3, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::check_pairwise(e.handle, spec, analysis::PairwiseMode::FirmlyNonexpansive));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CheckPairwiseFirm)->Arg(1000)->Arg(10000);

void BM_ReconstructY(benchmark::State& state) {
  auto f = catalog::make_1d(catalog::OneDKind::QuadMinusOne).handle;
  for (auto _ : state) {
    benchmark::DoNotOptimize(yy::reconstruct_y(f, {3.0, 1.0}, {.extent = 4.0, .step = 1e-2}));
  }
}
BENCHMARK(BM_ReconstructY)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
