#include "vq/pitch.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vq/kernels.h"

namespace vq {

std::size_t PitchTrack::voiced_count() const noexcept {
  return static_cast<std::size_t>(std::count(voiced.begin(), voiced.end(), true));
}

std::size_t PitchTrack::longest_voiced_run() const noexcept {
  std::size_t best = 0;
  std::size_t run = 0;
  for (bool v : voiced) {
    run = v ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

PitchTrack track_pitch(const FrameSequence& frames) {
  const double sr = frames.sample_rate_hz();
  const auto min_lag = static_cast<std::size_t>(std::floor(sr / kMaxF0Hz));
  // Two extra lags so a period right at the 55 Hz limit still forms a peak.
  const auto max_lag = std::min(static_cast<std::size_t>(std::ceil(sr / kMinF0Hz)) + 2, frames.frame_length() - 2);
  const auto candidates = frame_periodicity(frames, min_lag, max_lag);

  double max_rms = 0.0;
  for (const auto& c : candidates) max_rms = std::max(max_rms, c.rms);
  const double rms_floor = kRelativeRmsFloor * max_rms;

  PitchTrack track;
  track.f0_hz.assign(candidates.size(), 0.0);
  track.voiced.assign(candidates.size(), false);
  track.periodicity.assign(candidates.size(), 0.0);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    track.periodicity[i] = std::clamp(c.peak, 0.0, 1.0);
    if (max_rms > 0.0 && c.lag > 0.0 && c.peak >= kVoicingThreshold && c.rms >= rms_floor) {
      track.voiced[i] = true;
      track.f0_hz[i] = std::clamp(sr / c.lag, kMinF0Hz, kMaxF0Hz);
    }
  }

  std::vector<double> voiced_f0;
  for (std::size_t i = 0; i < track.size(); ++i) {
    if (track.voiced[i]) voiced_f0.push_back(track.f0_hz[i]);
  }
  if (voiced_f0.size() < 3) return track;
  const auto mid = voiced_f0.begin() + static_cast<std::ptrdiff_t>(voiced_f0.size() / 2);
  std::nth_element(voiced_f0.begin(), mid, voiced_f0.end());
  const double median = *mid;
  const double max_jump = std::log2(kOctaveJumpFactor);

  for (std::size_t i = 0; i < track.size(); ++i) {
    if (!track.voiced[i] || std::abs(std::log2(track.f0_hz[i] / median)) <= max_jump) continue;
    const LagPeak* pick = nullptr;
    double pick_distance = max_jump;
    for (const auto& cand : candidates[i].candidates) {
      if (cand.value < kVoicingThreshold) continue;
      const double distance = std::abs(std::log2(sr / cand.lag / median));
      if (distance <= pick_distance) {
        pick = &cand;
        pick_distance = distance;
      }
    }
    if (pick) {
      track.f0_hz[i] = std::clamp(sr / pick->lag, kMinF0Hz, kMaxF0Hz);
      track.periodicity[i] = std::clamp(pick->value, 0.0, 1.0);
    } else {
      track.voiced[i] = false;
      track.f0_hz[i] = 0.0;
    }
  }
  return track;
}

}  // namespace vq
