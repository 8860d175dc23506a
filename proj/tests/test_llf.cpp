#include <doctest.h>

#include <cmath>

#include "test_support.h"
#include "vq/error.h"
#include "vq/formants.h"
#include "vq/framing.h"
#include "vq/harmonic.h"
#include "vq/llf.h"
#include "vq/period.h"
#include "vq/pitch.h"
#include "vq/spectral.h"
#include "vq/synth.h"

using namespace vq;

namespace {

AudioSignal vowel(double f0 = 130.0, SynthKind kind = SynthKind::kClean, double amount = 0.0) {
  SynthParams p;
  p.kind = kind;
  p.amount = amount;
  p.f0_hz = f0;
  p.seed = 2;
  return generate_synthetic(p);
}

}  // namespace

TEST_CASE("feature keys round trip") {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const auto f = parse_feature(kFeatureKeys[i]);
    REQUIRE(f.has_value());
    CHECK(index_of(*f) == i);
  }
  CHECK_FALSE(parse_feature("loudness").has_value());
}

TEST_CASE("vowel yields 25 finite features with sane signs") {
  const auto v = extract_llf_vector(vowel());
  for (double x : v.values) CHECK(std::isfinite(x));
  CHECK(v[Feature::kJitterLocal] >= 0.0);
  CHECK(v[Feature::kShimmerLocalDb] >= 0.0);
  for (auto f : {Feature::kF1Frequency, Feature::kF2Frequency, Feature::kF3Frequency, Feature::kF1Bandwidth,
                 Feature::kF2Bandwidth, Feature::kF3Bandwidth}) {
    CHECK(v[f] > 0.0);
  }
}

TEST_CASE("full extraction equals the individual extractors") {
  const auto s = vowel();
  const auto frames = frame_signal(s);
  const auto pitch = track_pitch(frames);
  LlfVector manual;
  compute_spectral_llfs(frames).write_to(manual);
  compute_period_llfs(s, pitch).write_to(manual);
  const auto formants = estimate_formants(frames, pitch);
  summarize_formants(formants).write_to(manual);
  compute_harmonic_llfs(frames, pitch, formants).write_to(manual);
  CHECK(extract_llf_vector(s) == manual);
}

TEST_CASE("extraction is deterministic") {
  const auto s = vowel(170.0, SynthKind::kBreathy, 0.2);
  CHECK(extract_llf_vector(s) == extract_llf_vector(s));
}

TEST_CASE("halving the amplitude moves loudness only") {
  const auto s = vowel(125.0, SynthKind::kJittered, 1.0);
  const auto a = extract_llf_vector(s);
  const auto b = extract_llf_vector(s.scaled(0.5));
  CHECK(b[Feature::kLoudness] - a[Feature::kLoudness] == doctest::Approx(-6.02).epsilon(0.1 / 6.02));
  for (auto f : {Feature::kJitterLocal, Feature::kF0Semitone, Feature::kAlphaRatio, Feature::kHammarbergIndex,
                 Feature::kSlope0To500, Feature::kSlope500To1500, Feature::kH1MinusH2, Feature::kF1Frequency,
                 Feature::kF2Frequency, Feature::kF3Frequency}) {
    CAPTURE(feature_key(f));
    CHECK(std::abs(b[f] - a[f]) <= 1e-6 * std::max(1.0, std::abs(a[f])));
  }
}

TEST_CASE("time reversal keeps level and band balance") {
  const auto s = vowel(140.0);
  const auto a = extract_llf_vector(s);
  const auto b = extract_llf_vector(s.reversed());
  CHECK(std::abs(b[Feature::kLoudness] - a[Feature::kLoudness]) <= 0.1);
  CHECK(std::abs(b[Feature::kAlphaRatio] - a[Feature::kAlphaRatio]) <= 0.1);
  CHECK(std::abs(b[Feature::kHammarbergIndex] - a[Feature::kHammarbergIndex]) <= 0.1);
}

TEST_CASE("jitter and shimmer are nonnegative across inputs") {
  for (auto kind : {SynthKind::kClean, SynthKind::kJittered, SynthKind::kShimmered, SynthKind::kBreathy}) {
    const auto v = extract_llf_vector(vowel(115.0, kind, kind == SynthKind::kBreathy ? 0.4 : 2.0));
    CHECK(v[Feature::kJitterLocal] >= 0.0);
    CHECK(v[Feature::kShimmerLocalDb] >= 0.0);
  }
}

TEST_CASE("short or unvoiced clips are rejected") {
  auto code = [](const AudioSignal& s) {
    try {
      (void)extract_llf_vector(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  CHECK(code(test::signal_of(test::sine(200.0, 0.2))) == ErrorCode::kTooShort);
  CHECK(code(test::signal_of(test::white_noise(0.8, 4))) == ErrorCode::kInsufficientVoicing);
}
