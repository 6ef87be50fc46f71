// Serial reference kernels against their OpenMP counterparts. Arguments are
// the image side length.

#include <benchmark/benchmark.h>

#include "despeck/metrics.hpp"
#include "despeck/phantom.hpp"
#include "despeck/pipeline.hpp"
#include "despeck/serial.hpp"
#include "despeck/speckle.hpp"
#include "despeck/wavelet.hpp"

namespace {

using namespace despeck;

Image noisy_input(std::size_t n) {
  return apply_speckle(make_phantom(n, n), SpeckleSpec{SpeckleKind::gamma_multilook, 3, 42});
}

template <bool Parallel>
void BM_Dwt2Level(benchmark::State& state) {
  const Image img = noisy_input(static_cast<std::size_t>(state.range(0)));
  const FilterBank bank = filter_bank_by_name("db4");
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(dwt2_level(img, bank));
    else
      benchmark::DoNotOptimize(serial::dwt2_level(img, bank));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

template <bool Parallel>
void BM_Idwt2Level(benchmark::State& state) {
  const Image img = noisy_input(static_cast<std::size_t>(state.range(0)));
  const FilterBank bank = filter_bank_by_name("db4");
  const Subbands sub = dwt2_level(img, bank);
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(idwt2_level(sub, bank));
    else
      benchmark::DoNotOptimize(serial::idwt2_level(sub, bank));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

template <bool Parallel>
void BM_Median(benchmark::State& state) {
  const Image img = noisy_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(median_filter_homomorphic(img, 5));
    else
      benchmark::DoNotOptimize(serial::median_filter_homomorphic(img, 5));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

template <bool Parallel>
void BM_Lee(benchmark::State& state) {
  const Image img = noisy_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(lee_filter(img, 5, 1.0 / 3.0));
    else
      benchmark::DoNotOptimize(serial::lee_filter(img, 5, 1.0 / 3.0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

template <bool Parallel>
void BM_Speckle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SpeckleSpec spec{SpeckleKind::gamma_multilook, 3, 42};
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(generate_speckle(n, n, spec));
    else
      benchmark::DoNotOptimize(serial::generate_speckle(n, n, spec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

template <bool Parallel>
void BM_Edges(benchmark::State& state) {
  const Image img = noisy_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(detect_edges(img, 0.2));
    else
      benchmark::DoNotOptimize(serial::detect_edges(img, 0.2));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

}  // namespace

#define DESPECK_BENCH_PAIR(fn)                                               \
  BENCHMARK_TEMPLATE(fn, false)->Name(#fn "/serial")->Arg(256)->Arg(1024);   \
  BENCHMARK_TEMPLATE(fn, true)->Name(#fn "/parallel")->Arg(256)->Arg(1024)

DESPECK_BENCH_PAIR(BM_Dwt2Level);
DESPECK_BENCH_PAIR(BM_Idwt2Level);
DESPECK_BENCH_PAIR(BM_Median);
DESPECK_BENCH_PAIR(BM_Lee);
DESPECK_BENCH_PAIR(BM_Speckle);
DESPECK_BENCH_PAIR(BM_Edges);

BENCHMARK_MAIN();
