#pragma once

#include <array>
#include <span>
#include <vector>

#include "vq/framing.h"
#include "vq/kernels.h"
#include "vq/llf.h"

namespace vq {

inline constexpr std::size_t kSpectralFftSize = 512;
inline constexpr std::size_t kMelBands = 26;
inline constexpr double kMelLowHz = 20.0;
inline constexpr double kMelHighHz = 8000.0;

/// Frame-averaged spectral features.
struct SpectralLlfs {
  double loudness_db = 0.0;
  double alpha_ratio_db = 0.0;
  double hammarberg_db = 0.0;
  double slope_0_500 = 0.0;     ///< dB/Hz
  double slope_500_1500 = 0.0;  ///< dB/Hz
  double spectral_flux = 0.0;
  std::array<double, 4> mfcc{};

  void write_to(LlfVector& v) const;
};

SpectralLlfs compute_spectral_llfs(const FrameSequence& frames);

/// Same, reusing a power spectrogram of `frames` computed at kSpectralFftSize.
SpectralLlfs compute_spectral_llfs(const FrameSequence& frames, const Spectrogram& spectrum);

/// 10*log10(sum P[50, 1000) / sum P[1000, 5000]).
double alpha_ratio_db(std::span<const double> power, double bin_hz);
/// 10*log10(max P[0, 2000] / max P(2000, 5000]).
double hammarberg_db(std::span<const double> power, double bin_hz);
/// Least-squares slope (dB/Hz) of 10*log10 P over bins in [lo_hz, hi_hz].
double log_spectral_slope(std::span<const double> power, double bin_hz, double lo_hz, double hi_hz);

/// Triangular mel filterbank: kMelBands rows of `bins` weights.
std::vector<std::vector<double>> mel_filterbank(std::size_t bins, double bin_hz, std::size_t bands = kMelBands,
                                                double low_hz = kMelLowHz, double high_hz = kMelHighHz);

}  // namespace vq
