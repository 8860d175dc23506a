#include <doctest.h>

#include <cmath>
#include <complex>
#include <omp.h>

#include "test_support.h"
#include "vq/fft.h"
#include "vq/framing.h"
#include "vq/kernels.h"

using namespace vq;

namespace {

FrameSequence mixed_frames() {
  auto x = test::white_noise(0.4, 21, 0.2);
  const auto tone = test::sine(173.0, 0.4, 0.5);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += tone[i];
  return frame_signal(test::signal_of(std::move(x)));
}

}  // namespace

TEST_CASE("fft power matches a direct DFT") {
  const auto x = test::white_noise(0.01, 2);  // 160 samples
  const std::size_t n = 256;
  RealFft fft(n);
  std::vector<double> p(fft.bins());
  fft.power(x, p);
  for (std::size_t k = 0; k < fft.bins(); k += 7) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
      acc += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * t) / n);
    }
    CHECK(p[k] == doctest::Approx(std::norm(acc)).epsilon(1e-9));
  }
  CHECK(next_pow2(400) == 512);
  CHECK(next_pow2(512) == 512);
}

TEST_CASE("parallel spectrogram agrees with the serial reference") {
  const auto frames = mixed_frames();
  const auto fast = power_spectrogram(frames, 512);
  const auto ref = power_spectrogram_reference(frames, 512);
  REQUIRE(fast.power.size() == ref.power.size());
  double scale = 0.0;
  for (double v : ref.power) scale = std::max(scale, v);
  for (std::size_t i = 0; i < ref.power.size(); ++i) REQUIRE(std::abs(fast.power[i] - ref.power[i]) <= 1e-9 * scale);
}

TEST_CASE("parallel periodicity agrees with the serial reference") {
  const auto frames = mixed_frames();
  const auto fast = frame_periodicity(frames, 16, 291);
  const auto ref = frame_periodicity_reference(frames, 16, 291);
  REQUIRE(fast.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(fast[i].lag == doctest::Approx(ref[i].lag).epsilon(1e-9));
    CHECK(fast[i].peak == doctest::Approx(ref[i].peak).epsilon(1e-9));
    CHECK(fast[i].rms == doctest::Approx(ref[i].rms).epsilon(1e-12));
    CHECK(fast[i].candidates.size() == ref[i].candidates.size());
  }
}

TEST_CASE("kernel output does not depend on the thread count") {
  const auto frames = mixed_frames();
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = frame_periodicity(frames, 16, 291);
  const auto s1 = power_spectrogram(frames, 512);
  omp_set_num_threads(4);
  const auto four = frame_periodicity(frames, 16, 291);
  const auto s4 = power_spectrogram(frames, 512);
  omp_set_num_threads(saved);
  CHECK(s1.power == s4.power);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].lag == four[i].lag);
    CHECK(one[i].peak == four[i].peak);
  }
}

TEST_CASE("period picking takes the shortest of near-equal peaks") {
  // Equal peaks at 80 and 160: the shorter lag wins.
  std::vector<double> r(200, 0.0);
  r[80 - 16] = 0.9;
  r[160 - 16] = 0.95;
  const auto p = pick_period(r, 16, 400);
  CHECK(p.lag == doctest::Approx(80.0));
  CHECK(p.peak == doctest::Approx(0.9));
  CHECK(p.candidates.size() == 2);
  CHECK(pick_period(std::vector<double>(50, -0.2), 16, 400).lag == 0.0);
}

TEST_CASE("nccf of a periodic frame peaks at the period") {
  const auto x = test::sine(200.0, 0.025);
  const auto r = nccf(x, x.size(), 16, 291);
  CHECK(r[80 - 16] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(nccf_near_lag(x, x.size(), 80.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS(nccf(x, x.size(), 0, 10));
  CHECK_THROWS(nccf(x, x.size() + 1, 16, 291));
}
