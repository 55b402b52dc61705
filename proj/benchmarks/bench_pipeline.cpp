#include <benchmark/benchmark.h>

#include "densify/morphology.hpp"
#include "densify/pipeline.hpp"
#include "synthetic.hpp"

using namespace densify;

namespace {

const DepthMap& frame() {
  static const DepthMap f = synthetic::kitti_like_frame(42);
  return f;
}

const DepthMap& inverted() {
  static const DepthMap f = invert(frame());
  return f;
}

// Densified inverted frame, the input the blur stage sees.
const DepthMap& dense() {
  static const DepthMap f = [] {
    PipelineConfig c;
    c.blur_mode = BlurMode::None;
    return invert(complete(frame(), c));
  }();
  return f;
}

void BM_Complete(benchmark::State& state) {
  PipelineConfig c;
  c.blur_mode = static_cast<BlurMode>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(complete(frame(), c));
  state.SetLabel(std::string(to_string(c.blur_mode)));
}
BENCHMARK(BM_Complete)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Dilate(benchmark::State& state) {
  const Kernel k = make_kernel(static_cast<KernelShape>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(dilate(inverted(), k));
  state.SetLabel(std::string(to_string(k.shape())) + " " + std::to_string(k.size()));
}
BENCHMARK(BM_Dilate)
    ->ArgsProduct({{0, 1, 2, 3}, {3, 5, 7}})
    ->Args({0, 31})
    ->Unit(benchmark::kMillisecond);

void BM_MaskedFill(benchmark::State& state) {
  const Kernel k = make_kernel(KernelShape::Full, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(masked_fill_dilate(inverted(), k));
}
BENCHMARK(BM_MaskedFill)->Arg(7)->Arg(31)->Unit(benchmark::kMillisecond);

void BM_Median(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(median_filter(dense(), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Median)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Gaussian(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_filter(dense(), 5, 1.1));
}
BENCHMARK(BM_Gaussian)->Unit(benchmark::kMillisecond);

void BM_Bilateral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bilateral_filter(dense(), 5, 1.5, 2.0));
}
BENCHMARK(BM_Bilateral)->Unit(benchmark::kMillisecond);

void BM_ExtendToTop(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(extend_to_top(inverted()));
}
BENCHMARK(BM_ExtendToTop)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
