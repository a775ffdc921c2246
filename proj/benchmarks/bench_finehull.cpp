#include <benchmark/benchmark.h>

#include "finehull/blaschke.hpp"
#include "finehull/hull.hpp"
#include "finehull/potential.hpp"
#include "finehull/product.hpp"

using namespace finehull;

namespace {

CantorSpec affine_spec() {
  return CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, 12);
}

void BM_PartialProduct(benchmark::State& state) {
  CantorSpec spec = affine_spec();
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_partial_product(spec, 12, {0.3, 0.2}));
  }
}
BENCHMARK(BM_PartialProduct);

void BM_Leja(benchmark::State& state) {
  CompactUnion set{{Shape::interval(0.0, 1.0)}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(leja_points(set, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Leja)->Arg(16)->Arg(64);

void BM_FiberScan(benchmark::State& state) {
  HullPotentialSpec hps = make_hull_spec(affine_spec(), 8, WeightMode::UnitCoefficient);
  int res = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fiber_scan(hps, {2.0, 0.0}, {-3.0, 3.0, -3.0, 3.0}, res, true));
  }
}
BENCHMARK(BM_FiberScan)->Arg(32)->Arg(128);

void BM_Blaschke(benchmark::State& state) {
  BlaschkeSpec spec = BlaschkeSpec::build(0, 0.0, 1.5707963267948966, CRule::affine(5.0), 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_blaschke(spec, 64, {0.3, 0.2}));
  }
}
BENCHMARK(BM_Blaschke);

}  // namespace

BENCHMARK_MAIN();
