#include <doctest.h>

#include <cmath>

#include "test_support.h"
#include "vq/error.h"
#include "vq/llf.h"
#include "vq/synth.h"

using namespace vq;

TEST_CASE("same seed gives identical samples") {
  SynthParams p;
  p.kind = SynthKind::kBreathy;
  p.amount = 0.3;
  p.seed = 42;
  const auto a = synthesize_vowel(p);
  const auto b = synthesize_vowel(p);
  CHECK(a.samples == b.samples);
  p.seed = 43;
  CHECK(synthesize_vowel(p).samples != a.samples);
}

TEST_CASE("generator bookkeeping is consistent") {
  SynthParams p;
  p.kind = SynthKind::kJittered;
  p.amount = 3.0;
  p.f0_hz = 150.0;
  p.seed = 9;
  const auto r = synthesize_vowel(p);
  CHECK(r.samples.size() == 16000);
  REQUIRE(r.pulse_times.size() == r.periods.size() + 1);
  double peak = 0.0;
  for (double x : r.samples) peak = std::max(peak, std::abs(x));
  CHECK(peak == doctest::Approx(0.5));
  for (double T : r.periods) {
    CHECK(T >= (1.0 - 0.03) / 150.0 - 1e-12);
    CHECK(T <= (1.0 + 0.03) / 150.0 + 1e-12);
  }
  CHECK(jitter_of_periods(r.periods) == doctest::Approx(test::periods_jitter(r.periods)));
}

TEST_CASE("clean vowel measures low jitter and jittered measures more") {
  SynthParams p;
  p.f0_hz = 150.0;
  const double clean = extract_llf_vector(generate_synthetic(p))[Feature::kJitterLocal];
  p.kind = SynthKind::kJittered;
  p.amount = 3.0;
  const double jittered = extract_llf_vector(generate_synthetic(p))[Feature::kJitterLocal];
  CHECK(clean < 0.005);
  CHECK(jittered > clean);
}

TEST_CASE("breathy vowel has lower HNR") {
  SynthParams p;
  p.f0_hz = 120.0;
  const double clean = extract_llf_vector(generate_synthetic(p))[Feature::kHnrDbAcf];
  p.kind = SynthKind::kBreathy;
  p.amount = 0.3;
  const double breathy = extract_llf_vector(generate_synthetic(p))[Feature::kHnrDbAcf];
  CHECK(breathy < clean);
}

TEST_CASE("generator rejects bad parameters") {
  SynthParams p;
  p.duration_s = 0.2;
  CHECK_THROWS_AS(generate_synthetic(p), Error);
  p.duration_s = 1.0;
  p.f0_hz = -5.0;
  CHECK_THROWS_AS(generate_synthetic(p), Error);
  CHECK(parse_synth_kind(to_string(SynthKind::kShimmered)) == SynthKind::kShimmered);
  CHECK_THROWS_AS(parse_synth_kind("squeaky"), Error);
}
