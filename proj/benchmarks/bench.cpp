// Hot-path timings: the supremum scans, the local maximal function, the
// integrability-exponent bisection, and the singular-kernel quadrature.
// Weights are fixed random draws so runs are comparable across commits.

#include <benchmark/benchmark.h>

#include "flatweights/constants.hpp"
#include "flatweights/families.hpp"
#include "flatweights/grid.hpp"
#include "flatweights/maximal.hpp"
#include "flatweights/report.hpp"
#include "flatweights/sobolev.hpp"

namespace fw = flatweights;

namespace {

fw::Weight random_weight(int dim, int level, std::uint64_t seed) {
  fw::WeightFamilySpec s;
  s.kind = fw::WeightFamilySpec::Kind::Random;
  s.grid = fw::make_grid(dim, level);
  s.log_range = 2.0;
  s.seed = seed;
  return fw::generate(s);
}

const fw::CubeFamily kDyadic = fw::CubeFamily::dyadic();
const fw::CubeFamily kAligned = fw::CubeFamily::aligned(1, 1);

void bm_a_p_dyadic(benchmark::State& state) {
  const fw::Weight w = random_weight(1, static_cast<int>(state.range(0)), 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(fw::a_p(w, 2.0, kDyadic).value);
}
BENCHMARK(bm_a_p_dyadic)->Arg(8)->Arg(10)->Arg(12);

void bm_fujii_wilson(benchmark::State& state) {
  const fw::Weight w = random_weight(1, static_cast<int>(state.range(0)), 12);
  for (auto _ : state)
    benchmark::DoNotOptimize(fw::fujii_wilson(w, kDyadic).value);
}
BENCHMARK(bm_fujii_wilson)->Arg(6)->Arg(8)->Arg(10);

void bm_fujii_wilson_aligned_2d(benchmark::State& state) {
  const fw::Weight w = random_weight(2, static_cast<int>(state.range(0)), 13);
  for (auto _ : state)
    benchmark::DoNotOptimize(fw::fujii_wilson(w, kAligned).value);
}
BENCHMARK(bm_fujii_wilson_aligned_2d)->Arg(3)->Arg(4);

void bm_local_maximal(benchmark::State& state) {
  const fw::Weight w = random_weight(2, static_cast<int>(state.range(0)), 14);
  const fw::Cube q = fw::full_cube(w.fn.grid);
  for (auto _ : state)
    benchmark::DoNotOptimize(fw::local_maximal(w, q, kDyadic).values.back());
}
BENCHMARK(bm_local_maximal)->Arg(4)->Arg(6)->Arg(7);

void bm_jn_sup_r(benchmark::State& state) {
  const fw::Weight w = random_weight(1, static_cast<int>(state.range(0)), 15);
  for (auto _ : state)
    benchmark::DoNotOptimize(fw::jn_sup_r(w, kDyadic).value);
}
BENCHMARK(bm_jn_sup_r)->Arg(6)->Arg(8);

void bm_riesz_2d(benchmark::State& state) {
  const fw::GridSpec g = fw::make_grid(2, static_cast<int>(state.range(0)));
  std::vector<double> v(g.cell_count(), 1.0);
  const fw::GridFn f = fw::make_grid_fn(g, std::move(v));
  const fw::Cube q = fw::full_cube(g);
  for (auto _ : state)
    benchmark::DoNotOptimize(fw::riesz(f, 1.0, q).values.back());
}
BENCHMARK(bm_riesz_2d)->Arg(4)->Arg(5);

void bm_sweep_row(benchmark::State& state) {
  fw::SweepSpec spec;
  spec.grid = fw::make_grid(1, static_cast<int>(state.range(0)));
  spec.deltas = {0.1};
  spec.family = kDyadic;
  for (auto _ : state) benchmark::DoNotOptimize(fw::run_sweep(spec).size());
}
BENCHMARK(bm_sweep_row)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
