// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "curvcx/generators.hpp"
#include "curvcx/kernels.hpp"
#include "curvcx/metric.hpp"

using namespace curvcx;

namespace {

const Structure& heptagons() {
  static const Structure s = gen_regular_tessellation(7, 3, 7);
  return s;
}

std::vector<FaceId> ball(int R) { return spheres(*heptagons().complex, 0, R).faces; }

template <auto Kernel>
void BM_pairwise(benchmark::State& state) {
  auto sample = ball(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(*heptagons().complex, sample));
  state.SetItemsProcessed(state.iterations() * sample.size() * sample.size());
}

template <auto Kernel>
void BM_four_point(benchmark::State& state) {
  auto sample = ball(static_cast<int>(state.range(0)));
  auto D = kernels::pairwise_distances_serial(*heptagons().complex, sample);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(D, sample.size()));
}

template <auto Kernel>
void BM_bigons(benchmark::State& state) {
  FaceMetric M(heptagons().complex);
  auto faces = ball(static_cast<int>(state.range(0)));
  const auto& radii = M.trusted_radii();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(*heptagons().complex, faces, radii, 4));
}

template <auto Kernel>
void BM_cheeger(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  kernels::CheegerProblem P;
  P.neighbors.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    P.degree.push_back(7);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng() % 4 == 0) {
        P.neighbors[i] |= 1ull << j;
        P.neighbors[j] |= 1ull << i;
      }
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(P, n));
}

template <auto Kernel>
void BM_laplacian(benchmark::State& state) {
  auto faces = ball(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(*heptagons().complex, faces));
}

}  // namespace

BENCHMARK(BM_pairwise<kernels::pairwise_distances_serial>)->Arg(3)->Arg(5);
BENCHMARK(BM_pairwise<kernels::pairwise_distances_parallel>)->Arg(3)->Arg(5);
BENCHMARK(BM_four_point<kernels::four_point_twice_delta_serial>)->Arg(2)->Arg(3);
BENCHMARK(BM_four_point<kernels::four_point_twice_delta_parallel>)->Arg(2)->Arg(3);
BENCHMARK(BM_bigons<kernels::bigon_scan_serial>)->Arg(4)->Arg(5);
BENCHMARK(BM_bigons<kernels::bigon_scan_parallel>)->Arg(4)->Arg(5);
BENCHMARK(BM_cheeger<kernels::cheeger_scan_serial>)->Arg(16)->Arg(20);
BENCHMARK(BM_cheeger<kernels::cheeger_scan_parallel>)->Arg(16)->Arg(20);
BENCHMARK(BM_laplacian<kernels::laplacian_serial>)->Arg(3)->Arg(4);
BENCHMARK(BM_laplacian<kernels::laplacian_parallel>)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
