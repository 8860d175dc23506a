#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vq/audio.h"

namespace vq {

enum class SynthKind { kClean, kJittered, kShimmered, kBreathy };

/// Parameters of a pulse-train-excited vowel.
struct SynthParams {
  SynthKind kind = SynthKind::kClean;
  /// jittered: period perturbation in percent; shimmered: amplitude
  /// perturbation in dB; breathy: aspiration-to-voice energy ratio.
  double amount = 0.0;
  double f0_hz = 150.0;
  double duration_s = 1.0;
  std::uint64_t seed = 0;
  int sample_rate_hz = kCanonicalRate;
  std::array<double, 3> formants_hz{700.0, 1220.0, 2600.0};
  std::array<double, 3> bandwidths_hz{80.0, 100.0, 120.0};
  double peak = 0.5;  ///< output peak amplitude
};

struct SynthResult {
  std::vector<double> samples;
  std::vector<double> pulse_times;       ///< seconds
  std::vector<double> pulse_amplitudes;  ///< linear excitation gains
  std::vector<double> periods;           ///< seconds, consecutive pulse spacing
};

/// Band-limited pulses at fractional positions -> cascade of 2-pole
/// resonators. jittered scales each period by 1 + (amount/100) u,
/// shimmered each pulse gain by 10^(amount u / 20), u ~ U[-1, 1]. breathy
/// adds white aspiration noise at `amount` times the voiced energy and widens
/// the F1 bandwidth by a factor 1 + 2 amount. Same params -> same samples.
SynthResult synthesize_vowel(const SynthParams& params);

/// synthesize_vowel wrapped as an AudioSignal. Throws kInvalidArgument on
/// duration < 0.5 s or out-of-range parameters.
AudioSignal generate_synthetic(const SynthParams& params);

/// mean|T_i - T_{i+1}| / mean T_i over a period list.
double jitter_of_periods(const std::vector<double>& periods);

std::string to_string(SynthKind kind);
SynthKind parse_synth_kind(const std::string& text);

}  // namespace vq
