#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "test_support.h"
#include "vq/error.h"
#include "vq/formants.h"
#include "vq/framing.h"
#include "vq/harmonic.h"
#include "vq/kernels.h"
#include "vq/pitch.h"
#include "vq/synth.h"

using namespace vq;

namespace {

double h1_h2_of(const std::vector<double>& x) {
  const auto frames = frame_signal(test::signal_of(x));
  const auto pitch = track_pitch(frames);
  return h1_minus_h2_db(power_spectrogram(frames, kHarmonicFftSize), pitch);
}

FormantLlfs vowel_formants(double f0) {
  SynthParams p;
  p.f0_hz = f0;
  const auto frames = frame_signal(generate_synthetic(p));
  return summarize_formants(estimate_formants(frames, track_pitch(frames)));
}

}  // namespace

TEST_CASE("H1-H2 of a harmonic series with halved second harmonic") {
  const double expected = 20.0 * std::log10(2.0);
  CHECK(h1_h2_of(test::harmonic_series(200.0, {0.4, 0.2}, 0.6)) == doctest::Approx(expected).epsilon(0.5 / expected));
  CHECK(h1_h2_of(test::harmonic_series(160.0, {0.3, 0.15, 0.1, 0.05}, 0.6)) ==
        doctest::Approx(expected).epsilon(0.5 / expected));
}

TEST_CASE("equal harmonics give H1-H2 near zero") {
  CHECK(std::abs(h1_h2_of(test::harmonic_series(200.0, {0.3, 0.3, 0.3}, 0.6))) <= 0.5);
}

TEST_CASE("harmonic features need voiced frames") {
  const auto frames = frame_signal(test::signal_of(std::vector<double>(8000, 0.0)));
  const auto pitch = track_pitch(frames);
  CHECK_THROWS_AS(compute_harmonic_llfs(frames, pitch, FormantTrack{}), Error);
  CHECK_THROWS_AS(estimate_formants(frames, pitch), Error);
}

TEST_CASE("levinson recursion recovers a known all-pole model") {
  // x[n] = 1.3 x[n-1] - 0.6 x[n-2] + e[n]
  const auto e = test::white_noise(2.0, 31, 0.1);
  std::vector<double> x(e.size(), 0.0);
  for (std::size_t n = 2; n < x.size(); ++n) x[n] = 1.3 * x[n - 1] - 0.6 * x[n - 2] + e[n];
  const auto a = lpc(x, 2);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == doctest::Approx(-1.3).epsilon(0.02));
  CHECK(a[2] == doctest::Approx(0.6).epsilon(0.03));
}

TEST_CASE("pole to resonance conversion") {
  const double fs = 16000.0;
  const double f = 1000.0;
  const double bw = 100.0;
  const double r = std::exp(-std::numbers::pi * bw / fs);
  const auto pole = std::polar(r, 2.0 * std::numbers::pi * f / fs);
  // (1 - p z^-1)(1 - conj(p) z^-1)
  const std::vector<double> a = {1.0, -2.0 * pole.real(), std::norm(pole)};
  const auto roots = lpc_roots(a);
  const auto res = formant_candidates(roots, 16000);
  REQUIRE(res.size() == 1);
  CHECK(res[0].frequency_hz == doctest::Approx(f).epsilon(1e-9));
  CHECK(res[0].bandwidth_hz == doctest::Approx(bw).epsilon(1e-9));
  CHECK(lpc_order(16000) == 18);
}

TEST_CASE("three-resonance vowel at 120 Hz recovers its formants") {
  const auto f = vowel_formants(120.0);
  const std::array<double, 3> freq = {700.0, 1220.0, 2600.0};
  const std::array<double, 3> bw = {80.0, 100.0, 120.0};
  for (std::size_t i = 0; i < 3; ++i) {
    CAPTURE(i);
    CHECK(std::abs(f.frequency_hz[i] - freq[i]) <= 60.0);
    CHECK(std::abs(f.bandwidth_hz[i] - bw[i]) <= 40.0);
  }
}

TEST_CASE("formant frames are ordered with positive bandwidths") {
  SynthParams p;
  p.f0_hz = 130.0;
  p.formants_hz = {500.0, 1500.0, 2500.0};
  const auto frames = frame_signal(generate_synthetic(p));
  const auto track = estimate_formants(frames, track_pitch(frames));
  REQUIRE(!track.frames.empty());
  for (const auto& fr : track.frames) {
    CHECK(0.0 < fr.frequency_hz[0]);
    CHECK(fr.frequency_hz[0] < fr.frequency_hz[1]);
    CHECK(fr.frequency_hz[1] < fr.frequency_hz[2]);
    for (double b : fr.bandwidth_hz) CHECK(b > 0.0);
  }
  CHECK_THROWS_AS(summarize_formants(FormantTrack{}), Error);
}

TEST_CASE("H1-A3 is larger when the third formant is weaker") {
  auto h1_a3 = [](double b3) {
    SynthParams p;
    p.f0_hz = 120.0;
    p.bandwidths_hz = {80.0, 100.0, b3};
    const auto frames = frame_signal(generate_synthetic(p));
    const auto pitch = track_pitch(frames);
    return compute_harmonic_llfs(frames, pitch, estimate_formants(frames, pitch)).h1_a3_db;
  };
  CHECK(h1_a3(300.0) > h1_a3(80.0));
}
