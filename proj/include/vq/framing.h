#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "vq/audio.h"

namespace vq {

inline constexpr double kFrameLengthS = 0.025;
inline constexpr double kHopS = 0.010;

/// Fixed-length analysis frames over a signal. The Hamming-windowed blocks are
/// stored; raw blocks are views into the kept source signal. The trailing
/// partial frame is dropped.
class FrameSequence {
 public:
  FrameSequence(std::vector<double> windowed, std::vector<double> source, std::size_t frame_length,
                std::size_t hop, std::size_t count, int sample_rate_hz);

  std::size_t count() const noexcept { return count_; }
  std::size_t frame_length() const noexcept { return frame_length_; }
  std::size_t hop() const noexcept { return hop_; }
  int sample_rate_hz() const noexcept { return sample_rate_hz_; }

  std::span<const double> windowed(std::size_t i) const {
    return std::span<const double>(windowed_).subspan(i * frame_length_, frame_length_);
  }
  std::span<const double> raw(std::size_t i) const {
    return std::span<const double>(source_).subspan(start(i), frame_length_);
  }
  /// Raw frame i followed by up to `extra` further source samples.
  std::span<const double> extended(std::size_t i, std::size_t extra) const {
    const std::size_t len = std::min(frame_length_ + extra, source_.size() - start(i));
    return std::span<const double>(source_).subspan(start(i), len);
  }
  std::span<const double> source() const noexcept { return source_; }
  /// First sample index of frame i in the source signal.
  std::size_t start(std::size_t i) const noexcept { return i * hop_; }

 private:
  std::vector<double> windowed_;
  std::vector<double> source_;
  std::size_t frame_length_;
  std::size_t hop_;
  std::size_t count_;
  int sample_rate_hz_;
};

/// Symmetric Hamming window of length n.
std::vector<double> hamming(std::size_t n);

/// 25 ms frames with a 10 ms hop. Throws kTooShort when the signal is
/// shorter than one frame.
FrameSequence frame_signal(const AudioSignal& signal);

/// Frame count for `n_samples` at the given geometry (0 if too short).
std::size_t frame_count(std::size_t n_samples, std::size_t frame_length, std::size_t hop) noexcept;

}  // namespace vq
