#include "vq/formants.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Eigenvalues>

#include "vq/error.h"

namespace vq {

namespace {

constexpr double kRelativePowerFloor = 1e-12;

}  // namespace

std::size_t lpc_order(int sample_rate_hz) noexcept {
  return 2 + static_cast<std::size_t>(sample_rate_hz / 1000);
}

std::vector<double> lpc(std::span<const double> frame, std::size_t order) {
  if (order == 0 || order >= frame.size()) {
    throw Error(ErrorCode::kInvalidArgument, "LPC order must be in [1, frame length)");
  }
  std::vector<double> r(order + 1, 0.0);
  for (std::size_t lag = 0; lag <= order; ++lag) {
    for (std::size_t i = 0; i + lag < frame.size(); ++i) r[lag] += frame[i] * frame[i + lag];
  }

  std::vector<double> a(order + 1, 0.0);
  a[0] = 1.0;
  if (r[0] <= 0.0) return a;

  double err = r[0];
  std::vector<double> prev(order + 1);
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = -acc / err;
    prev = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    err *= 1.0 - k * k;
    if (err <= 0.0) break;
  }
  return a;
}

std::vector<std::complex<double>> lpc_roots(std::span<const double> coefficients) {
  const std::size_t p = coefficients.size() - 1;
  if (p == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t j = 0; j < p; ++j) {
    companion(0, static_cast<Eigen::Index>(j)) = -coefficients[j + 1] / coefficients[0];
  }
  for (std::size_t i = 1; i < p; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  roots.reserve(p);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

std::vector<Resonance> formant_candidates(std::span<const std::complex<double>> roots, int sample_rate_hz) {
  const double sr = sample_rate_hz;
  std::vector<Resonance> out;
  for (const auto& z : roots) {
    if (z.imag() <= 0.0) continue;
    const double radius = std::abs(z);
    if (radius <= 0.0 || radius >= 1.0) continue;
    const double hz = std::arg(z) * sr / (2.0 * std::numbers::pi);
    const double bw = -(sr / std::numbers::pi) * std::log(radius);
    if (hz >= kMinFormantHz && hz <= kMaxFormantHz && bw < kMaxFormantBandwidthHz) {
      out.push_back({hz, bw});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Resonance& a, const Resonance& b) { return a.frequency_hz < b.frequency_hz; });
  return out;
}

std::vector<Resonance> analyze_frame_formants(std::span<const double> raw_frame, int sample_rate_hz) {
  const std::size_t n = raw_frame.size();
  const auto window = hamming(n);
  std::vector<double> y(n);
  y[0] = raw_frame[0] * window[0];
  for (std::size_t i = 1; i < n; ++i) y[i] = (raw_frame[i] - kPreEmphasis * raw_frame[i - 1]) * window[i];
  const auto a = lpc(y, lpc_order(sample_rate_hz));
  return formant_candidates(lpc_roots(a), sample_rate_hz);
}

double level_db_at(std::span<const double> power, double bin_hz, double hz) {
  const auto k = std::min(static_cast<std::size_t>(std::lround(hz / bin_hz)), power.size() - 1);
  const double peak = *std::max_element(power.begin(), power.end());
  return 10.0 * std::log10(power[k] + kRelativePowerFloor * peak + 1e-300);
}

FormantTrack estimate_formants(const FrameSequence& frames, const PitchTrack& pitch) {
  return estimate_formants(frames, pitch, power_spectrogram(frames, kHarmonicFftSize));
}

FormantTrack estimate_formants(const FrameSequence& frames, const PitchTrack& pitch,
                               const Spectrogram& harmonic_spectrum) {
  if (pitch.size() != frames.count()) {
    throw Error(ErrorCode::kInvalidArgument, "pitch track length does not match frame count");
  }
  if (pitch.voiced_count() == 0) {
    throw Error(ErrorCode::kInsufficientVoicing, "insufficient voicing: no voiced frames for formant analysis");
  }
  const int sr = frames.sample_rate_hz();
  const double bin_hz = harmonic_spectrum.bin_hz();
  std::vector<std::optional<FormantFrame>> per_frame(frames.count());
  const auto n = static_cast<long long>(frames.count());
#pragma omp parallel for schedule(dynamic, 4)
  for (long long fi = 0; fi < n; ++fi) {
    const auto f = static_cast<std::size_t>(fi);
    if (!pitch.voiced[f] || pitch.f0_hz[f] <= 0.0) continue;
    const auto candidates = analyze_frame_formants(frames.raw(f), sr);
    if (candidates.size() < 3) continue;

    const auto power = harmonic_spectrum.row(f);
    const double f0 = pitch.f0_hz[f];
    const double h1 = level_db_at(power, bin_hz, f0);
    FormantFrame ff;
    ff.frame = f;
    for (std::size_t k = 0; k < 3; ++k) {
      ff.frequency_hz[k] = candidates[k].frequency_hz;
      ff.bandwidth_hz[k] = candidates[k].bandwidth_hz;
      const double harmonic = std::max(1.0, std::round(candidates[k].frequency_hz / f0));
      ff.amplitude_db_rel_f0[k] = level_db_at(power, bin_hz, harmonic * f0) - h1;
    }
    per_frame[f] = ff;
  }

  FormantTrack track;
  for (auto& ff : per_frame) {
    if (ff) track.frames.push_back(*ff);
  }
  return track;
}

void FormantLlfs::write_to(LlfVector& v) const {
  v[Feature::kF1Frequency] = frequency_hz[0];
  v[Feature::kF1Bandwidth] = bandwidth_hz[0];
  v[Feature::kF1Amplitude] = amplitude_db[0];
  v[Feature::kF2Frequency] = frequency_hz[1];
  v[Feature::kF2Bandwidth] = bandwidth_hz[1];
  v[Feature::kF2Amplitude] = amplitude_db[1];
  v[Feature::kF3Frequency] = frequency_hz[2];
  v[Feature::kF3Bandwidth] = bandwidth_hz[2];
  v[Feature::kF3Amplitude] = amplitude_db[2];
}

FormantLlfs summarize_formants(const FormantTrack& track) {
  if (track.frames.empty()) {
    throw Error(ErrorCode::kInsufficientVoicing, "insufficient voicing: no frame yielded three formants");
  }
  FormantLlfs out;
  for (const auto& ff : track.frames) {
    for (std::size_t k = 0; k < 3; ++k) {
      out.frequency_hz[k] += ff.frequency_hz[k];
      out.bandwidth_hz[k] += ff.bandwidth_hz[k];
      out.amplitude_db[k] += ff.amplitude_db_rel_f0[k];
    }
  }
  const double inv = 1.0 / static_cast<double>(track.frames.size());
  for (std::size_t k = 0; k < 3; ++k) {
    out.frequency_hz[k] *= inv;
    out.bandwidth_hz[k] *= inv;
    out.amplitude_db[k] *= inv;
  }
  return out;
}

}  // namespace vq
