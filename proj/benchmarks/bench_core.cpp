#include <benchmark/benchmark.h>

#include <cmath>

#include "fockdual/duality.hpp"
#include "fockdual/integrate.hpp"
#include "fockdual/kernels.hpp"
#include "fockdual/measure.hpp"
#include "fockdual/poly.hpp"
#include "fockdual/rng.hpp"

using namespace fockdual;

namespace {

void BM_sample_M(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HaarSampler sampler(1, 1);
  ComplexVector xi;
  std::uint64_t draw = 0;
  for (auto _ : state) {
    sample_M_into(sampler, n, draw++, xi);
    benchmark::DoNotOptimize(xi);
  }
}
BENCHMARK(BM_sample_M)->Arg(2)->Arg(3)->Arg(6);

void BM_sample_orthogonal(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const HaarSampler sampler(1, 2);
  std::uint64_t draw = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_orthogonal(sampler, k, draw++));
}
BENCHMARK(BM_sample_orthogonal)->Arg(3)->Arg(7);

void BM_integrate_polar(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FockParams params(n, 1.0, 0.5);
  QuadSpec q;
  q.mc_samples = 10000;
  q.radial_nodes = 32;
  const ConeFunction f = [](const ConePoint& w) { return std::pow(std::abs(w[0] + w.last()), 0.5); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_polar(f, params, q));
  state.SetItemsProcessed(state.iterations() * q.mc_samples * q.radial_nodes);
}
BENCHMARK(BM_integrate_polar)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_bergman_kernel(benchmark::State& state) {
  const FockParams params(3, 1.0, 1.0);
  const HaarSampler sampler(2, 3);
  const ConePoint z = sample_M(sampler, 3, 0).scaled(1.5), w = sample_M(sampler, 3, 1).scaled(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(bergman_kernel(z, w, params));
}
BENCHMARK(BM_bergman_kernel);

void BM_kernel_from_basis(benchmark::State& state) {
  const FockParams params(3, 1.0, 1.0);
  const HaarSampler sampler(2, 4);
  const ConePoint z = sample_M(sampler, 3, 0).scaled(1.5), w = sample_M(sampler, 3, 1).scaled(0.7);
  const int kmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_from_basis(z, w, params, kmax));
}
BENCHMARK(BM_kernel_from_basis)->Arg(50)->Arg(200);

void BM_poly_eval(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const Poly f = random_poly(3, degree, CounterRng(5, 5));
  const ComplexVector z{0.3, cplx(0.1, -0.4), 0.8};
  for (auto _ : state) benchmark::DoNotOptimize(f(z));
  state.counters["terms"] = static_cast<double>(f.size());
}
BENCHMARK(BM_poly_eval)->Arg(4)->Arg(6)->Arg(12);

void BM_dual_norm_lb(benchmark::State& state) {
  const FockParams params(2, 1.0, 0.5);
  const NormCubature cub(params, 4, 1000, 12, 3);
  std::vector<cplx> ell(cub.basis_size());
  const CounterRng rng(7, 7);
  for (std::size_t a = 0; a < ell.size(); ++a) ell[a] = cplx(rng.normal(2 * a), rng.normal(2 * a + 1));
  DualSearch search;
  search.budget = 1;
  for (auto _ : state) benchmark::DoNotOptimize(dual_norm_lb(ell, cub, search));
}
BENCHMARK(BM_dual_norm_lb)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
