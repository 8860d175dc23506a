#include "vq/llf.h"

#include <cmath>
#include <string>

#include "vq/error.h"
#include "vq/formants.h"
#include "vq/framing.h"
#include "vq/harmonic.h"
#include "vq/kernels.h"
#include "vq/period.h"
#include "vq/pitch.h"
#include "vq/spectral.h"

namespace vq {

std::optional<Feature> parse_feature(std::string_view key) noexcept {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (kFeatureKeys[i] == key) return feature_at(i);
  }
  return std::nullopt;
}

LlfVector extract_llf_vector(const AudioSignal& signal) {
  if (signal.duration_s() < kMinUtteranceS) {
    throw Error(ErrorCode::kTooShort, "signal shorter than 300 ms: " + signal.source_id());
  }
  const FrameSequence frames = frame_signal(signal);
  const PitchTrack pitch = track_pitch(frames);
  if (pitch.voiced_count() < kMinVoicedFrames) {
    throw Error(ErrorCode::kInsufficientVoicing, "insufficient voicing: fewer than 3 voiced frames");
  }

  LlfVector v;
  compute_spectral_llfs(frames).write_to(v);
  compute_period_llfs(signal, pitch).write_to(v);

  const Spectrogram harmonic_spectrum = power_spectrogram(frames, kHarmonicFftSize);
  const FormantTrack formants = estimate_formants(frames, pitch, harmonic_spectrum);
  summarize_formants(formants).write_to(v);
  compute_harmonic_llfs(frames, pitch, formants, harmonic_spectrum).write_to(v);

  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (!std::isfinite(v.values[i])) {
      throw Error(ErrorCode::kInsufficientVoicing,
                  "non-finite " + std::string(kFeatureKeys[i]) + " for " + signal.source_id());
    }
  }
  return v;
}

}  // namespace vq
