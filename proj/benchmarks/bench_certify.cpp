#include <benchmark/benchmark.h>

#include "sqgd/certify.hpp"
#include "sqgd/initial.hpp"
#include "sqgd/modulus.hpp"

namespace {

sqgd::ScalarField small_field(int n) {
  sqgd::InitSpec spec;
  spec.seed = 5;
  spec.k_max = 6;
  spec.target_linf = 0.01;
  return sqgd::generate_initial(spec, sqgd::Grid(n));
}

void BM_PairScanExhaustive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = small_field(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqgd::PairScan(f, {sqgd::ScanMode::exhaustive}).max_increment());
  }
}
BENCHMARK(BM_PairScanExhaustive)->Arg(32)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_PairScanSampled(benchmark::State& state) {
  const auto f = small_field(256);
  const sqgd::ScanOptions opts{sqgd::ScanMode::sampled, static_cast<std::size_t>(state.range(0)), 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqgd::PairScan(f, opts).max_increment());
  }
}
BENCHMARK(BM_PairScanSampled)->Arg(100'000)->Arg(2'000'000)->Unit(benchmark::kMillisecond);

void BM_MinimalB(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const sqgd::PairScan scan(small_field(n));
  const sqgd::ModulusParams p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqgd::minimal_B(scan, p).b_min);
  }
}
BENCHMARK(BM_MinimalB)->Arg(32)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_BigOmega(benchmark::State& state) {
  const sqgd::ModulusParams p;
  double xi = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqgd::big_omega(xi, p));
    xi = xi < 10.0 ? xi * 1.7 : 1e-3;
  }
}
BENCHMARK(BM_BigOmega);

}  // namespace
