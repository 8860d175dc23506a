#include <benchmark/benchmark.h>

#include <omp.h>

#include "vq/framing.h"
#include "vq/kernels.h"
#include "vq/synth.h"

namespace {

/// Two seconds of a jittered vowel, framed once and shared by every case.
const vq::FrameSequence& frames() {
  static const vq::FrameSequence f = [] {
    vq::SynthParams p;
    p.kind = vq::SynthKind::kJittered;
    p.amount = 2.0;
    p.f0_hz = 140.0;
    p.duration_s = 2.0;
    return vq::frame_signal(vq::generate_synthetic(p));
  }();
  return f;
}

constexpr std::size_t kMinLag = 16;
constexpr std::size_t kMaxLag = 293;

void set_threads(const benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(0))); }

void BM_SpectrogramReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vq::power_spectrogram_reference(frames(), state.range(0)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(frames().count()));
}

void BM_Spectrogram(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(vq::power_spectrogram(frames(), state.range(1)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(frames().count()));
}

void BM_PeriodicityReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vq::frame_periodicity_reference(frames(), kMinLag, kMaxLag));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(frames().count()));
}

void BM_Periodicity(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(vq::frame_periodicity(frames(), kMinLag, kMaxLag));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(frames().count()));
}

}  // namespace

BENCHMARK(BM_SpectrogramReference)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Spectrogram)->ArgsProduct({{1, 2, 4}, {512, 4096}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PeriodicityReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Periodicity)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
