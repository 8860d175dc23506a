#pragma once

#include <cstddef>
#include <vector>

#include "vq/framing.h"

namespace vq {

inline constexpr double kMinF0Hz = 55.0;
inline constexpr double kMaxF0Hz = 1000.0;
inline constexpr double kVoicingThreshold = 0.45;
inline constexpr double kRelativeRmsFloor = 0.01;
/// Voiced frames further than this factor from the utterance median f0 are
/// re-picked from their NCCF candidates.
inline constexpr double kOctaveJumpFactor = 1.8;

/// Per-frame F0. Unvoiced frames carry f0_hz == 0.
struct PitchTrack {
  std::vector<double> f0_hz;
  std::vector<bool> voiced;
  std::vector<double> periodicity;  ///< NCCF peak clamped to [0, 1]

  std::size_t size() const noexcept { return f0_hz.size(); }
  std::size_t voiced_count() const noexcept;
  /// Longest run of consecutive voiced frames.
  std::size_t longest_voiced_run() const noexcept;
};

/// Autocorrelation pitch tracker over 55-1000 Hz. A frame is voiced when its
/// NCCF peak reaches 0.45 and its RMS is at least 1% of the loudest frame's.
/// A frame whose f0 lies more than kOctaveJumpFactor from the median of the
/// voiced frames takes its candidate closest to that median (NCCF >= 0.45),
/// or turns unvoiced when there is none.
PitchTrack track_pitch(const FrameSequence& frames);

}  // namespace vq
