#include "vq/spectral.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vq {

namespace {

constexpr double kRmsFloor = 1e-10;
// Power floor relative to the frame's strongest bin; scales with the signal
// so the ratio features stay exactly gain-invariant.
constexpr double kRelativePowerFloor = 1e-12;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

double frame_floor(std::span<const double> power) {
  return kRelativePowerFloor * *std::max_element(power.begin(), power.end());
}

std::size_t bin_at_or_above(double hz, double bin_hz) {
  return static_cast<std::size_t>(std::ceil(hz / bin_hz - 1e-9));
}

std::size_t bin_at_or_below(double hz, double bin_hz) {
  return static_cast<std::size_t>(std::floor(hz / bin_hz + 1e-9));
}

}  // namespace

void SpectralLlfs::write_to(LlfVector& v) const {
  v[Feature::kLoudness] = loudness_db;
  v[Feature::kAlphaRatio] = alpha_ratio_db;
  v[Feature::kHammarbergIndex] = hammarberg_db;
  v[Feature::kSlope0To500] = slope_0_500;
  v[Feature::kSlope500To1500] = slope_500_1500;
  v[Feature::kSpectralFlux] = spectral_flux;
  v[Feature::kMfcc1] = mfcc[0];
  v[Feature::kMfcc2] = mfcc[1];
  v[Feature::kMfcc3] = mfcc[2];
  v[Feature::kMfcc4] = mfcc[3];
}

double alpha_ratio_db(std::span<const double> power, double bin_hz) {
  const double floor = frame_floor(power);
  double low = 0.0;
  double high = 0.0;
  for (std::size_t k = 0; k < power.size(); ++k) {
    const double hz = static_cast<double>(k) * bin_hz;
    if (hz >= 50.0 && hz < 1000.0) low += power[k];
    else if (hz >= 1000.0 && hz <= 5000.0) high += power[k];
  }
  return 10.0 * std::log10((low + floor) / (high + floor));
}

double hammarberg_db(std::span<const double> power, double bin_hz) {
  const double floor = frame_floor(power);
  double low_peak = 0.0;
  double high_peak = 0.0;
  for (std::size_t k = 0; k < power.size(); ++k) {
    const double hz = static_cast<double>(k) * bin_hz;
    if (hz <= 2000.0) low_peak = std::max(low_peak, power[k]);
    else if (hz <= 5000.0) high_peak = std::max(high_peak, power[k]);
  }
  return 10.0 * std::log10((low_peak + floor) / (high_peak + floor));
}

double log_spectral_slope(std::span<const double> power, double bin_hz, double lo_hz, double hi_hz) {
  const double floor = frame_floor(power);
  const std::size_t k0 = bin_at_or_above(lo_hz, bin_hz);
  const std::size_t k1 = std::min(bin_at_or_below(hi_hz, bin_hz), power.size() - 1);
  if (k1 <= k0) return 0.0;

  const double n = static_cast<double>(k1 - k0 + 1);
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = k0; k <= k1; ++k) {
    sx += static_cast<double>(k) * bin_hz;
    sy += 10.0 * std::log10(power[k] + floor);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = k0; k <= k1; ++k) {
    const double dx = static_cast<double>(k) * bin_hz - mx;
    sxy += dx * (10.0 * std::log10(power[k] + floor) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<std::vector<double>> mel_filterbank(std::size_t bins, double bin_hz, std::size_t bands, double low_hz,
                                                double high_hz) {
  const double mel_lo = hz_to_mel(low_hz);
  const double mel_hi = hz_to_mel(high_hz);
  std::vector<double> edges(bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / static_cast<double>(bands + 1));
  }
  std::vector<std::vector<double>> fb(bands, std::vector<double>(bins, 0.0));
  for (std::size_t b = 0; b < bands; ++b) {
    const double left = edges[b];
    const double center = edges[b + 1];
    const double right = edges[b + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double hz = static_cast<double>(k) * bin_hz;
      if (hz > left && hz <= center) fb[b][k] = (hz - left) / (center - left);
      else if (hz > center && hz < right) fb[b][k] = (right - hz) / (right - center);
    }
  }
  return fb;
}

SpectralLlfs compute_spectral_llfs(const FrameSequence& frames) {
  return compute_spectral_llfs(frames, power_spectrogram(frames, kSpectralFftSize));
}

SpectralLlfs compute_spectral_llfs(const FrameSequence& frames, const Spectrogram& spectrum) {
  SpectralLlfs out;
  const double bin_hz = spectrum.bin_hz();
  const auto fb = mel_filterbank(spectrum.bins, bin_hz);

  double loudness = 0.0;
  for (std::size_t f = 0; f < frames.count(); ++f) {
    double e = 0.0;
    for (double x : frames.raw(f)) e += x * x;
    const double rms = std::sqrt(e / static_cast<double>(frames.frame_length()));
    loudness += 20.0 * std::log10(std::max(rms, kRmsFloor));
  }
  out.loudness_db = loudness / static_cast<double>(frames.count());

  std::size_t active = 0;
  std::size_t flux_pairs = 0;
  double flux = 0.0;
  std::vector<double> prev_norm;
  std::vector<double> norm(spectrum.bins);
  for (std::size_t f = 0; f < spectrum.frames; ++f) {
    const auto p = spectrum.row(f);
    const double peak = *std::max_element(p.begin(), p.end());
    if (peak <= 0.0) {
      prev_norm.clear();
      continue;
    }
    ++active;
    out.alpha_ratio_db += alpha_ratio_db(p, bin_hz);
    out.hammarberg_db += hammarberg_db(p, bin_hz);
    out.slope_0_500 += log_spectral_slope(p, bin_hz, 0.0, 500.0);
    out.slope_500_1500 += log_spectral_slope(p, bin_hz, 500.0, 1500.0);

    std::array<double, kMelBands> log_mel{};
    const double floor = kRelativePowerFloor * peak;
    for (std::size_t b = 0; b < kMelBands; ++b) {
      double e = 0.0;
      for (std::size_t k = 0; k < spectrum.bins; ++k) e += fb[b][k] * p[k];
      log_mel[b] = std::log(e + floor);
    }
    for (std::size_t c = 1; c <= 4; ++c) {
      double acc = 0.0;
      for (std::size_t b = 0; b < kMelBands; ++b) {
        acc += log_mel[b] * std::cos(std::numbers::pi * static_cast<double>(c) * (static_cast<double>(b) + 0.5) /
                                     static_cast<double>(kMelBands));
      }
      out.mfcc[c - 1] += std::sqrt(2.0 / kMelBands) * acc;
    }

    double total = 0.0;
    for (std::size_t k = 0; k < spectrum.bins; ++k) {
      norm[k] = std::sqrt(p[k]);
      total += norm[k];
    }
    for (double& m : norm) m /= total;
    if (!prev_norm.empty()) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < spectrum.bins; ++k) {
        const double d = norm[k] - prev_norm[k];
        d2 += d * d;
      }
      flux += std::sqrt(d2);
      ++flux_pairs;
    }
    prev_norm = norm;
  }

  if (active > 0) {
    const double inv = 1.0 / static_cast<double>(active);
    out.alpha_ratio_db *= inv;
    out.hammarberg_db *= inv;
    out.slope_0_500 *= inv;
    out.slope_500_1500 *= inv;
    for (double& m : out.mfcc) m *= inv;
  }
  if (flux_pairs > 0) out.spectral_flux = flux / static_cast<double>(flux_pairs);
  return out;
}

}  // namespace vq
