#pragma once

// Per-frame data-parallel kernels. Each has an OpenMP implementation used by
// the pipeline and a plain serial reference written independently, kept for
// tests and for the benchmark in bench/.

#include <cstddef>
#include <span>
#include <vector>

#include "vq/framing.h"

namespace vq {

/// Row-major power spectra, one row of `bins` values per frame.
struct Spectrogram {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::size_t fft_size = 0;
  int sample_rate_hz = 0;
  std::vector<double> power;

  std::span<const double> row(std::size_t f) const {
    return std::span<const double>(power).subspan(f * bins, bins);
  }
  double bin_hz() const noexcept { return static_cast<double>(sample_rate_hz) / static_cast<double>(fft_size); }
};

/// Windowed frames -> |FFT|^2, zero-padded to `fft_size` (power of two).
/// Parallel over frames; output does not depend on the thread count.
Spectrogram power_spectrogram(const FrameSequence& frames, std::size_t fft_size);

/// Direct O(N * bins) DFT, serial.
Spectrogram power_spectrogram_reference(const FrameSequence& frames, std::size_t fft_size);

/// A parabolic-refined local maximum of the NCCF.
struct LagPeak {
  double lag = 0.0;
  double value = 0.0;
  bool operator==(const LagPeak&) const = default;
};

/// Best normalized cross-correlation peak found in one frame.
struct FramePeriodicity {
  double lag = 0.0;   ///< samples, parabolic-interpolated; 0 when no peak found
  double peak = 0.0;  ///< interpolated NCCF value at `lag`, clamped to [-1, 1]
  double rms = 0.0;   ///< RMS of the raw frame (DC included)
  std::vector<LagPeak> candidates;  ///< every positive local maximum, by lag
};

/// NCCF between the first `window` samples of a DC-removed segment and the
/// same-length block `t` samples later, for t in [min_lag, max_lag]:
/// r(t) = sum x[j]x[j+t] / sqrt(sum x[j]^2 * sum x[j+t]^2), j < window.
/// Where the segment ends early the sums stop at its end. Entry i holds lag
/// min_lag + i.
std::vector<double> nccf(std::span<const double> segment, std::size_t window, std::size_t min_lag,
                         std::size_t max_lag);

/// Ranks local maxima by r * (1 - 0.5 lag / window) and takes the shortest
/// lag ranked within 10% of the best (guards against period multiples). All
/// positive maxima are returned as candidates.
FramePeriodicity pick_period(std::span<const double> correlation, std::size_t min_lag, std::size_t window);

/// nccf + pick_period per frame, each frame's window compared against the
/// source signal up to max_lag samples past the frame end. Parallel over
/// frames; energy terms come from prefix sums.
std::vector<FramePeriodicity> frame_periodicity(const FrameSequence& frames, std::size_t min_lag,
                                                std::size_t max_lag);

/// Serial reference with every sum recomputed directly.
std::vector<FramePeriodicity> frame_periodicity_reference(const FrameSequence& frames, std::size_t min_lag,
                                                          std::size_t max_lag);

/// NCCF maximum in the neighbourhood of a known (fractional) lag, refined
/// parabolically. Used when the lag comes from elsewhere, e.g. a pitch track.
double nccf_near_lag(std::span<const double> segment, std::size_t window, double lag);

}  // namespace vq
