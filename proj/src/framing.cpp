#include "vq/framing.h"

#include <cmath>
#include <numbers>

#include "vq/error.h"

namespace vq {

FrameSequence::FrameSequence(std::vector<double> windowed, std::vector<double> source, std::size_t frame_length,
                             std::size_t hop, std::size_t count, int sample_rate_hz)
    : windowed_(std::move(windowed)),
      source_(std::move(source)),
      frame_length_(frame_length),
      hop_(hop),
      count_(count),
      sample_rate_hz_(sample_rate_hz) {}

std::vector<double> hamming(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return w;
}

std::size_t frame_count(std::size_t n_samples, std::size_t frame_length, std::size_t hop) noexcept {
  if (n_samples < frame_length || hop == 0) return 0;
  return (n_samples - frame_length) / hop + 1;
}

FrameSequence frame_signal(const AudioSignal& signal) {
  const int sr = signal.sample_rate_hz();
  const auto frame_length = static_cast<std::size_t>(std::lround(kFrameLengthS * sr));
  const auto hop = static_cast<std::size_t>(std::lround(kHopS * sr));
  const std::size_t count = frame_count(signal.size(), frame_length, hop);
  if (count == 0) {
    throw Error(ErrorCode::kTooShort, "signal shorter than one 25 ms frame");
  }

  const auto window = hamming(frame_length);
  const auto x = signal.samples();
  std::vector<double> windowed(count * frame_length);
  for (std::size_t f = 0; f < count; ++f) {
    const std::size_t base = f * hop;
    for (std::size_t i = 0; i < frame_length; ++i) {
      windowed[f * frame_length + i] = x[base + i] * window[i];
    }
  }
  return FrameSequence(std::move(windowed), std::vector<double>(x.begin(), x.end()), frame_length, hop, count, sr);
}

}  // namespace vq
