#pragma once

// Signal builders for tests. These are deliberately written without the
// library's synthesizer so they can serve as independent oracles.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "vq/audio.h"
#include "vq/llf.h"

namespace vq::test {

inline constexpr int kRate = 16000;

inline std::vector<double> sine(double hz, double seconds, double amplitude = 0.5, int rate = kRate) {
  const auto n = static_cast<std::size_t>(std::lround(seconds * rate));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = amplitude * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / rate);
  }
  return x;
}

inline std::vector<double> white_noise(double seconds, std::uint32_t seed, double amplitude = 0.3) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  std::vector<double> x(static_cast<std::size_t>(std::lround(seconds * kRate)));
  for (auto& v : x) v = u(rng);
  return x;
}

/// Sum of random-phase sinusoids on a 5 Hz grid covering [lo, hi], scaled to
/// the requested RMS.
inline std::vector<double> band_noise(double lo_hz, double hi_hz, double seconds, double rms, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> x(static_cast<std::size_t>(std::lround(seconds * kRate)), 0.0);
  for (double f = lo_hz; f <= hi_hz; f += 5.0) {
    const double p = phase(rng);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / kRate + p);
    }
  }
  double e = 0.0;
  for (double v : x) e += v * v;
  const double scale = rms / std::sqrt(e / static_cast<double>(x.size()));
  for (auto& v : x) v *= scale;
  return x;
}

/// Narrow Gaussian pulses (0.3 ms) centered at the given sample positions.
inline std::vector<double> pulse_train(const std::vector<double>& positions, std::size_t n, double amplitude = 0.8) {
  std::vector<double> x(n, 0.0);
  const double width = 0.0003 * kRate;
  for (double p : positions) {
    const auto lo = static_cast<long>(std::floor(p - 6 * width));
    const auto hi = static_cast<long>(std::ceil(p + 6 * width));
    for (long i = std::max(0L, lo); i <= hi && i < static_cast<long>(n); ++i) {
      const double d = (static_cast<double>(i) - p) / width;
      x[static_cast<std::size_t>(i)] += amplitude * std::exp(-0.5 * d * d);
    }
  }
  return x;
}

/// Harmonic series sum_k a_k sin(2 pi k f0 t).
inline std::vector<double> harmonic_series(double f0, const std::vector<double>& amplitudes, double seconds) {
  std::vector<double> x(static_cast<std::size_t>(std::lround(seconds * kRate)), 0.0);
  for (std::size_t k = 0; k < amplitudes.size(); ++k) {
    const double f = f0 * static_cast<double>(k + 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += amplitudes[k] * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / kRate);
    }
  }
  return x;
}

inline AudioSignal signal_of(std::vector<double> x, std::string id = "test") {
  return AudioSignal(std::move(x), kRate, std::move(id));
}

/// Jitter straight from a list of periods: mean |T_i - T_{i+1}| / mean T.
inline double periods_jitter(const std::vector<double>& periods) {
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    sum += periods[i];
    if (i + 1 < periods.size()) diff += std::abs(periods[i] - periods[i + 1]);
  }
  return (diff / static_cast<double>(periods.size() - 1)) / (sum / static_cast<double>(periods.size()));
}

/// Random LLF vectors with per-feature scale spread across orders of magnitude.
inline std::vector<LlfVector> random_vectors(std::size_t n, std::uint32_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<LlfVector> out(n);
  for (auto& v : out) {
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      const double scale = std::pow(10.0, static_cast<double>(j % 7) - 3.0);
      v.values[j] = static_cast<double>(j) * scale + scale * g(rng);
    }
  }
  return out;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("vq-test-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace vq::test
