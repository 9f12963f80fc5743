#include <benchmark/benchmark.h>

#include "sqgd/initial.hpp"
#include "sqgd/integrator.hpp"
#include "sqgd/spectral.hpp"

namespace {

sqgd::ScalarField smooth_field(int n) {
  sqgd::InitSpec spec;
  spec.seed = 3;
  spec.k_max = 8;
  return sqgd::generate_initial(spec, sqgd::Grid(n));
}

void BM_ForwardInverse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sqgd::Spectral s{sqgd::Grid(n)};
  const auto f = smooth_field(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.inverse(s.forward(f)));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ForwardInverse)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

void BM_Advect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sqgd::Spectral s{sqgd::Grid(n)};
  const auto theta_hat = s.forward(smooth_field(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.advect(theta_hat));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Advect)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

void BM_Etdrk2Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sqgd::Integrator integ{sqgd::Grid(n)};
  sqgd::SolverState s{smooth_field(n), 0.0, 2.0, 0};
  for (auto _ : state) {
    s = integ.step(s, 1e-3);
    benchmark::DoNotOptimize(s.theta.values().data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Etdrk2Step)->Arg(64)->Arg(128)->Arg(256);

}  // namespace
