// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "voxrg/kernels.hpp"
#include "voxrg/morphology.hpp"

namespace {

using namespace voxrg;

Dims cube(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  return {n, n, n};
}

std::vector<std::uint8_t> random_bits(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution on(density);
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = on(rng) ? 1 : 0;
  return v;
}

std::vector<float> random_floats(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0F, 1.0F);
  std::vector<float> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

template <auto Dilate>
void BM_Dilate(benchmark::State& state) {
  const Dims d = cube(state);
  const auto in = random_bits(d.size(), 0.3, 1);
  std::vector<std::uint8_t> out(d.size());
  const auto se = morphology::StructuringElement::full26();
  for (auto _ : state) {
    Dilate(in, d, se.offsets(), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.size()));
}

template <auto Overlap>
void BM_Overlap(benchmark::State& state) {
  const Dims d = cube(state);
  const auto p = random_bits(d.size(), 0.3, 2);
  const auto g = random_bits(d.size(), 0.3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(Overlap(p, g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.size()));
}

template <auto Distance>
void BM_Distance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> c(0, 63);
  std::vector<Voxel> src(n), dst(n);
  for (auto& v : src) v = {c(rng), c(rng), c(rng)};
  for (auto& v : dst) v = {c(rng), c(rng), c(rng)};
  const std::array<double, 3> spacing{1.0, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(Distance(src, dst, spacing));
}

template <auto Convolve>
void BM_Convolve(benchmark::State& state) {
  const Dims d = cube(state);
  const auto base = random_floats(d.size(), 5);
  const std::vector<float> kernel{0.05F, 0.1F, 0.2F, 0.3F, 0.2F, 0.1F, 0.05F};
  auto data = base;
  for (auto _ : state) {
    for (int axis = 0; axis < 3; ++axis) Convolve(data, d, axis, kernel);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.size()));
}

template <auto LossSums>
void BM_LossSums(benchmark::State& state) {
  const Dims d = cube(state);
  const auto pred = random_floats(d.size(), 6);
  const auto target = random_bits(d.size(), 0.5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(LossSums(pred, target, d, 1e-6));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.size()));
}

}  // namespace

BENCHMARK(BM_Dilate<kernels::serial::dilate>)->Name("dilate/serial")->Arg(32)->Arg(96);
BENCHMARK(BM_Dilate<kernels::omp::dilate>)->Name("dilate/omp")->Arg(32)->Arg(96);
BENCHMARK(BM_Overlap<kernels::serial::overlap>)->Name("overlap/serial")->Arg(32)->Arg(128);
BENCHMARK(BM_Overlap<kernels::omp::overlap>)->Name("overlap/omp")->Arg(32)->Arg(128);
BENCHMARK(BM_Distance<kernels::serial::max_min_sq_distance>)->Name("hausdorff/serial")->Arg(1000)->Arg(4000);
BENCHMARK(BM_Distance<kernels::omp::max_min_sq_distance>)->Name("hausdorff/omp")->Arg(1000)->Arg(4000);
BENCHMARK(BM_Convolve<kernels::serial::convolve_axis>)->Name("convolve/serial")->Arg(32)->Arg(96);
BENCHMARK(BM_Convolve<kernels::omp::convolve_axis>)->Name("convolve/omp")->Arg(32)->Arg(96);
BENCHMARK(BM_LossSums<kernels::serial::loss_sums>)->Name("loss_sums/serial")->Arg(32)->Arg(128);
BENCHMARK(BM_LossSums<kernels::omp::loss_sums>)->Name("loss_sums/omp")->Arg(32)->Arg(128);

BENCHMARK_MAIN();
