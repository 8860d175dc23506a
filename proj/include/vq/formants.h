#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "vq/framing.h"
#include "vq/kernels.h"
#include "vq/llf.h"
#include "vq/pitch.h"

namespace vq {

inline constexpr double kPreEmphasis = 0.97;
inline constexpr double kMinFormantHz = 90.0;
inline constexpr double kMaxFormantHz = 5500.0;
inline constexpr double kMaxFormantBandwidthHz = 700.0;
/// Zero-padded FFT size for harmonic level measurements (3.9 Hz bins at 16 kHz).
inline constexpr std::size_t kHarmonicFftSize = 4096;

/// Formants 1-3 of one voiced frame.
struct FormantFrame {
  std::size_t frame = 0;
  std::array<double, 3> frequency_hz{};
  std::array<double, 3> bandwidth_hz{};
  std::array<double, 3> amplitude_db_rel_f0{};  ///< nearest harmonic level minus H1 level
};

struct FormantTrack {
  std::vector<FormantFrame> frames;  ///< voiced frames with >= 3 valid poles, in frame order
};

/// LPC order used at a given sample rate: 2 + rate / 1000.
std::size_t lpc_order(int sample_rate_hz) noexcept;

/// Predictor polynomial [1, a1, ..., ap] by the autocorrelation method and
/// Levinson-Durbin recursion.
std::vector<double> lpc(std::span<const double> frame, std::size_t order);

/// Roots of 1 + a1 z^-1 + ... + ap z^-p (companion-matrix eigenvalues).
std::vector<std::complex<double>> lpc_roots(std::span<const double> coefficients);

struct Resonance {
  double frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
};

/// Pole -> resonance candidates within [90, 5500] Hz and bandwidth < 700 Hz,
/// sorted by frequency.
std::vector<Resonance> formant_candidates(std::span<const std::complex<double>> roots, int sample_rate_hz);

/// Pre-emphasis (0.97), Hamming window, LPC and root solving on one raw frame.
std::vector<Resonance> analyze_frame_formants(std::span<const double> raw_frame, int sample_rate_hz);

/// Level in dB of the power spectrum bin nearest `hz`.
double level_db_at(std::span<const double> power, double bin_hz, double hz);

/// Per voiced frame F1-F3. Frames with fewer than 3 valid poles are skipped.
/// Throws kInsufficientVoicing when no frame is voiced.
FormantTrack estimate_formants(const FrameSequence& frames, const PitchTrack& pitch);
FormantTrack estimate_formants(const FrameSequence& frames, const PitchTrack& pitch,
                               const Spectrogram& harmonic_spectrum);

struct FormantLlfs {
  std::array<double, 3> frequency_hz{};
  std::array<double, 3> bandwidth_hz{};
  std::array<double, 3> amplitude_db{};

  void write_to(LlfVector& v) const;
};

/// Means over the track. Throws kInsufficientVoicing on an empty track.
FormantLlfs summarize_formants(const FormantTrack& track);

}  // namespace vq
