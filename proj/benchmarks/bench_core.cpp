#include <benchmark/benchmark.h>

#include <cmath>

#include "bhold/affine_sphere.hpp"
#include "bhold/constants.hpp"
#include "bhold/masolver.hpp"
#include "bhold/verifier.hpp"

using namespace bhold;

namespace {

void BM_EvalBarrier(benchmark::State& state) {
  const BarrierParams bp{2.0, 2.0, 0.1, 0.1};
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_barrier(0.05, x, bp));
    x = x < 0.02 ? x + 1e-7 : 0.01;
  }
}
BENCHMARK(BM_EvalBarrier);

void BM_HessianEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto be = eval_barrier(0.05, 0.02, {2.0, 2.0, 0.1, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(hessian_eigenvalues(be, n));
}
BENCHMARK(BM_HessianEigenvalues)->Arg(2)->Arg(6);

void BM_Table1Constants(benchmark::State& state) {
  ConstantInputs in;
  in.a = 3.0;
  in.b = 2.0;
  in.p = affine_sphere::params(2).values();
  for (auto _ : state) benchmark::DoNotOptimize(table1_constants(in));
}
BENCHMARK(BM_Table1Constants);

void BM_SubsolutionSearch(benchmark::State& state) {
  const auto dom = affine_sphere::domain(2);
  Vec P(2);
  P << 0, 0;
  const auto cert = classify_boundary_point(dom, P, CertKind::interior, 2.0);
  SubsolutionOptions o;
  o.grid = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(search_xi_subsolution(affine_sphere::params(2), dom, cert, 2.0, power_operator(1, 1, 1), o));
}
BENCHMARK(BM_SubsolutionSearch)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SolveAffineSphere(benchmark::State& state) {
  const auto dom = affine_sphere::domain(2);
  const MaRhs f = singular_power_rhs(1.0, 4.0, [](const Vec2&) { return 0.0; }, 1e-6);
  const BoundaryData g = [](const Vec2& q) { return -std::sqrt(std::max(0.0, q.y())); };
  SolveConfig cfg;
  cfg.h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_dirichlet_ma(dom, f, g, cfg));
}
BENCHMARK(BM_SolveAffineSphere)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
