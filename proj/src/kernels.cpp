#include "vq/kernels.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "vq/error.h"
#include "vq/fft.h"

namespace vq {

namespace {

constexpr double kOctaveTolerance = 0.9;
// Mild preference for shorter lags: candidates are ranked by
// r * (1 - kLagPenalty * lag / window).
constexpr double kLagPenalty = 0.5;

double mean_of(std::span<const double> x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  return mean / static_cast<double>(x.size());
}

double frame_rms(std::span<const double> frame) {
  double e = 0.0;
  for (double x : frame) e += x * x;
  return std::sqrt(e / static_cast<double>(frame.size()));
}

double safe_ratio(double num, double e0, double e1) {
  const double den = std::sqrt(e0 * e1);
  return den > 0.0 ? num / den : 0.0;
}

void check_lags(std::size_t segment, std::size_t window, std::size_t min_lag, std::size_t max_lag) {
  if (window < 2 || window > segment) {
    throw Error(ErrorCode::kInvalidArgument, "nccf window must fit in the segment");
  }
  if (min_lag < 1 || max_lag <= min_lag + 1 || max_lag >= segment) {
    throw Error(ErrorCode::kInvalidArgument, "lag range must satisfy 1 <= min < max - 1 < segment length");
  }
}

// Samples compared at lag t: the window, cut short by the segment end.
std::size_t span_at(std::size_t segment, std::size_t window, std::size_t lag) {
  return std::min(window, segment - lag);
}

Spectrogram make_spectrogram(const FrameSequence& frames, std::size_t fft_size) {
  if (fft_size < frames.frame_length() || (fft_size & (fft_size - 1)) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "fft size must be a power of two >= frame length");
  }
  Spectrogram s;
  s.frames = frames.count();
  s.fft_size = fft_size;
  s.bins = fft_size / 2 + 1;
  s.sample_rate_hz = frames.sample_rate_hz();
  s.power.assign(s.frames * s.bins, 0.0);
  return s;
}

}  // namespace

Spectrogram power_spectrogram(const FrameSequence& frames, std::size_t fft_size) {
  Spectrogram s = make_spectrogram(frames, fft_size);
  const RealFft fft(fft_size);
  const auto n = static_cast<long long>(s.frames);
#pragma omp parallel for schedule(static)
  for (long long f = 0; f < n; ++f) {
    const auto i = static_cast<std::size_t>(f);
    fft.power(frames.windowed(i), std::span<double>(s.power).subspan(i * s.bins, s.bins));
  }
  return s;
}

Spectrogram power_spectrogram_reference(const FrameSequence& frames, std::size_t fft_size) {
  Spectrogram s = make_spectrogram(frames, fft_size);
  const std::size_t len = frames.frame_length();
  for (std::size_t f = 0; f < s.frames; ++f) {
    const auto x = frames.windowed(f);
    for (std::size_t k = 0; k < s.bins; ++k) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t t = 0; t < len; ++t) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * t) % fft_size) /
                             static_cast<double>(fft_size);
        re += x[t] * std::cos(angle);
        im += x[t] * std::sin(angle);
      }
      s.power[f * s.bins + k] = re * re + im * im;
    }
  }
  return s;
}

std::vector<double> nccf(std::span<const double> segment, std::size_t window, std::size_t min_lag,
                         std::size_t max_lag) {
  const std::size_t n = segment.size();
  check_lags(n, window, min_lag, max_lag);
  const double mean = mean_of(segment);
  std::vector<double> x(n);
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = segment[i] - mean;
    prefix[i + 1] = prefix[i] + x[i] * x[i];
  }

  std::vector<double> r(max_lag - min_lag + 1);
  for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
    const std::size_t m = span_at(n, window, lag);
    double num = 0.0;
    for (std::size_t i = 0; i < m; ++i) num += x[i] * x[i + lag];
    r[lag - min_lag] = safe_ratio(num, prefix[m], prefix[lag + m] - prefix[lag]);
  }
  return r;
}

FramePeriodicity pick_period(std::span<const double> correlation, std::size_t min_lag, std::size_t window) {
  FramePeriodicity out;
  const std::size_t m = correlation.size();
  double best = 0.0;
  std::vector<double> rank;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double a = correlation[i - 1];
    const double c = correlation[i];
    const double b = correlation[i + 1];
    if (!(c > a && c >= b) || c <= 0.0) continue;
    const double denom = a - 2.0 * c + b;
    LagPeak peak{static_cast<double>(min_lag + i), c};
    if (denom < 0.0) {
      const double delta = std::clamp(0.5 * (a - b) / denom, -0.5, 0.5);
      peak.lag += delta;
      peak.value = c - 0.25 * (a - b) * delta;
    }
    peak.value = std::clamp(peak.value, -1.0, 1.0);
    out.candidates.push_back(peak);
    const double lag = static_cast<double>(min_lag + i);
    rank.push_back(c * (1.0 - kLagPenalty * lag / static_cast<double>(window)));
    best = std::max(best, rank.back());
  }
  for (std::size_t k = 0; k < rank.size(); ++k) {
    if (rank[k] >= kOctaveTolerance * best) {
      out.lag = out.candidates[k].lag;
      out.peak = out.candidates[k].value;
      break;
    }
  }
  return out;
}

std::vector<FramePeriodicity> frame_periodicity(const FrameSequence& frames, std::size_t min_lag,
                                                std::size_t max_lag) {
  const std::size_t len = frames.frame_length();
  check_lags(len, len, min_lag, max_lag);
  std::vector<FramePeriodicity> out(frames.count());
  const auto n = static_cast<long long>(frames.count());
#pragma omp parallel for schedule(static)
  for (long long f = 0; f < n; ++f) {
    const auto i = static_cast<std::size_t>(f);
    FramePeriodicity p = pick_period(nccf(frames.extended(i, max_lag), len, min_lag, max_lag), min_lag, len);
    p.rms = frame_rms(frames.raw(i));
    out[i] = p;
  }
  return out;
}

std::vector<FramePeriodicity> frame_periodicity_reference(const FrameSequence& frames, std::size_t min_lag,
                                                          std::size_t max_lag) {
  const std::size_t len = frames.frame_length();
  check_lags(len, len, min_lag, max_lag);
  std::vector<FramePeriodicity> out(frames.count());
  for (std::size_t f = 0; f < frames.count(); ++f) {
    const auto seg = frames.extended(f, max_lag);
    const double mean = mean_of(seg);

    std::vector<double> r;
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
      double num = 0.0;
      double e0 = 0.0;
      double e1 = 0.0;
      for (std::size_t i = 0; i < len && i + lag < seg.size(); ++i) {
        const double a = seg[i] - mean;
        const double b = seg[i + lag] - mean;
        num += a * b;
        e0 += a * a;
        e1 += b * b;
      }
      r.push_back(safe_ratio(num, e0, e1));
    }
    out[f] = pick_period(r, min_lag, len);
    out[f].rms = frame_rms(frames.raw(f));
  }
  return out;
}

double nccf_near_lag(std::span<const double> segment, std::size_t window, double lag) {
  const auto center = static_cast<std::size_t>(std::lround(lag));
  if (center < 2 || center + 2 >= segment.size()) {
    throw Error(ErrorCode::kInvalidArgument, "lag outside the segment");
  }
  const auto r = nccf(segment, window, center - 1, center + 1);
  const double a = r[0];
  const double c = r[1];
  const double b = r[2];
  const double denom = a - 2.0 * c + b;
  double value = std::max({a, b, c});
  if (c >= a && c >= b && denom < 0.0) {
    const double delta = std::clamp(0.5 * (a - b) / denom, -0.5, 0.5);
    value = c - 0.25 * (a - b) * delta;
  }
  return std::clamp(value, -1.0, 1.0);
}

}  // namespace vq
