#include <algorithm>
#include <cmath>
#include <numbers>

#include "vq/audio.h"
#include "vq/error.h"

namespace vq {

namespace {

constexpr int kZeroCrossings = 16;
constexpr double kKaiserBeta = 8.6;
constexpr double kRolloff = 0.95;

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

std::vector<double> resample(std::span<const double> input, int from_rate_hz, int to_rate_hz) {
  if (from_rate_hz <= 0 || to_rate_hz <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "resample: rates must be positive");
  }
  if (from_rate_hz == to_rate_hz) {
    return {input.begin(), input.end()};
  }
  const auto n_in = static_cast<long long>(input.size());
  const long long n_out = (n_in * to_rate_hz + from_rate_hz / 2) / from_rate_hz;
  std::vector<double> out(static_cast<std::size_t>(n_out), 0.0);

  // Cutoff relative to the input Nyquist.
  const double cutoff = kRolloff * std::min(1.0, static_cast<double>(to_rate_hz) / from_rate_hz);
  const double half_width = kZeroCrossings / cutoff;
  const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);
  const double step = static_cast<double>(from_rate_hz) / to_rate_hz;

  for (long long m = 0; m < n_out; ++m) {
    const double t = m * step;
    const auto lo = std::max<long long>(0, static_cast<long long>(std::ceil(t - half_width)));
    const auto hi = std::min<long long>(n_in - 1, static_cast<long long>(std::floor(t + half_width)));
    double acc = 0.0;
    for (long long k = lo; k <= hi; ++k) {
      const double d = t - static_cast<double>(k);
      const double r = d / half_width;
      const double w = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
      acc += input[static_cast<std::size_t>(k)] * cutoff * sinc(cutoff * d) * w;
    }
    out[static_cast<std::size_t>(m)] = acc;
  }
  return out;
}

}  // namespace vq
