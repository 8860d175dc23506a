#include "vq/period.h"

#include <algorithm>
#include <cmath>

#include "vq/error.h"
#include "vq/framing.h"
#include "vq/kernels.h"

namespace vq {

namespace {

constexpr double kSearchLow = 0.75;
constexpr double kSearchHigh = 1.25;
constexpr double kSemitoneReferenceHz = 27.5;

struct VoicedRun {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};

std::vector<VoicedRun> voiced_runs(const PitchTrack& pitch) {
  std::vector<VoicedRun> runs;
  std::size_t i = 0;
  while (i < pitch.size()) {
    if (!pitch.voiced[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < pitch.size() && pitch.voiced[j + 1]) ++j;
    runs.push_back({i, j});
    i = j + 1;
  }
  return runs;
}

// Index of the largest value in y[lo, hi], lo <= hi.
std::size_t argmax(const std::vector<double>& y, std::size_t lo, std::size_t hi) {
  std::size_t best = lo;
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    if (y[i] > y[best]) best = i;
  }
  return best;
}

PeriodMark refine(const std::vector<double>& y, std::size_t i) {
  if (i == 0 || i + 1 >= y.size()) return {static_cast<double>(i), y[i]};
  const double a = y[i - 1];
  const double c = y[i];
  const double b = y[i + 1];
  const double denom = a - 2.0 * c + b;
  if (denom >= 0.0) return {static_cast<double>(i), c};
  const double delta = std::clamp(0.5 * (a - b) / denom, -0.5, 0.5);
  return {static_cast<double>(i) + delta, c - 0.25 * (a - b) * delta};
}

void check_track(const AudioSignal& signal, const PitchTrack& pitch, std::size_t frame_length, std::size_t hop) {
  if (pitch.size() != frame_count(signal.size(), frame_length, hop) || pitch.voiced.size() != pitch.size()) {
    throw Error(ErrorCode::kInvalidArgument, "pitch track length does not match the signal's frame count");
  }
  if (pitch.longest_voiced_run() < 3) {
    throw Error(ErrorCode::kInsufficientVoicing, "insufficient voicing: fewer than 3 consecutive voiced frames");
  }
}

}  // namespace

void PeriodLlfs::write_to(LlfVector& v) const {
  v[Feature::kJitterLocal] = jitter_local;
  v[Feature::kShimmerLocalDb] = shimmer_local_db;
  v[Feature::kHnrDbAcf] = hnr_db;
  v[Feature::kF0Semitone] = f0_semitone;
}

double hnr_from_correlation(double r) noexcept {
  const double c = std::clamp(r, 1e-5, 1.0 - 1e-6);
  return 10.0 * std::log10(c / (1.0 - c));
}

PeriodMarks find_period_marks(const AudioSignal& signal, const PitchTrack& pitch) {
  const int sr = signal.sample_rate_hz();
  const auto frame_length = static_cast<std::size_t>(std::lround(kFrameLengthS * sr));
  const auto hop = static_cast<std::size_t>(std::lround(kHopS * sr));
  const auto x = signal.samples();

  PeriodMarks marks;
  for (const VoicedRun& run : voiced_runs(pitch)) {
    const std::size_t s0 = run.first * hop;
    const std::size_t s1 = std::min(run.last * hop + frame_length, x.size());  // exclusive

    // Track the dominant polarity of the run so every mark sits on the same
    // kind of extremum.
    double pos_peak = 0.0;
    double neg_peak = 0.0;
    for (std::size_t i = s0; i < s1; ++i) {
      pos_peak = std::max(pos_peak, x[i]);
      neg_peak = std::max(neg_peak, -x[i]);
    }
    const double polarity = pos_peak >= neg_peak ? 1.0 : -1.0;
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t i = s0; i < s1; ++i) y[i] = polarity * x[i];

    auto period_at = [&](double t) {
      const double center_offset = 0.5 * static_cast<double>(frame_length);
      const double fi = (t - center_offset) / static_cast<double>(hop);
      const auto idx = static_cast<std::size_t>(
          std::clamp(std::lround(fi), static_cast<long>(run.first), static_cast<long>(run.last)));
      return static_cast<double>(sr) / pitch.f0_hz[idx];
    };

    std::vector<PeriodMark> run_marks;
    const double first_period = period_at(static_cast<double>(s0));
    const auto first_hi = std::min(s1 - 1, s0 + static_cast<std::size_t>(std::ceil(first_period)));
    PeriodMark mark = refine(y, argmax(y, s0, first_hi));
    run_marks.push_back(mark);
    for (;;) {
      const double period = period_at(mark.position);
      const auto lo = static_cast<std::size_t>(std::ceil(mark.position + kSearchLow * period));
      const auto hi = static_cast<std::size_t>(std::floor(mark.position + kSearchHigh * period));
      if (hi + 1 >= s1 || lo > hi) break;
      mark = refine(y, argmax(y, lo, hi));
      run_marks.push_back(mark);
    }
    marks.push_back(std::move(run_marks));
  }
  return marks;
}

double local_jitter(const PeriodMarks& marks) {
  double diff_sum = 0.0;
  std::size_t diff_count = 0;
  double period_sum = 0.0;
  std::size_t period_count = 0;
  for (const auto& run : marks) {
    std::vector<double> periods;
    for (std::size_t i = 1; i < run.size(); ++i) periods.push_back(run[i].position - run[i - 1].position);
    for (std::size_t i = 0; i < periods.size(); ++i) {
      period_sum += periods[i];
      ++period_count;
      if (i + 1 < periods.size()) {
        diff_sum += std::abs(periods[i] - periods[i + 1]);
        ++diff_count;
      }
    }
  }
  if (diff_count == 0 || period_sum <= 0.0) {
    throw Error(ErrorCode::kInsufficientVoicing, "insufficient voicing: fewer than two consecutive periods");
  }
  return (diff_sum / static_cast<double>(diff_count)) / (period_sum / static_cast<double>(period_count));
}

double local_shimmer_db(const PeriodMarks& marks) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& run : marks) {
    for (std::size_t i = 1; i < run.size(); ++i) {
      const double a0 = run[i - 1].amplitude;
      const double a1 = run[i].amplitude;
      if (a0 <= 0.0 || a1 <= 0.0) continue;
      sum += std::abs(20.0 * std::log10(a1 / a0));
      ++count;
    }
  }
  if (count == 0) {
    throw Error(ErrorCode::kInsufficientVoicing, "insufficient voicing: no consecutive period peaks");
  }
  return sum / static_cast<double>(count);
}

PeriodLlfs compute_period_llfs(const AudioSignal& signal, const PitchTrack& pitch) {
  const int sr = signal.sample_rate_hz();
  const auto frame_length = static_cast<std::size_t>(std::lround(kFrameLengthS * sr));
  const auto hop = static_cast<std::size_t>(std::lround(kHopS * sr));
  check_track(signal, pitch, frame_length, hop);

  PeriodLlfs out;
  const PeriodMarks marks = find_period_marks(signal, pitch);
  out.jitter_local = local_jitter(marks);
  out.shimmer_local_db = local_shimmer_db(marks);

  const auto x = signal.samples();
  double hnr = 0.0;
  double semitones = 0.0;
  std::size_t voiced = 0;
  for (std::size_t f = 0; f < pitch.size(); ++f) {
    if (!pitch.voiced[f] || pitch.f0_hz[f] <= 0.0) continue;
    const double lag = sr / pitch.f0_hz[f];
    const auto start = f * hop;
    const auto extra = static_cast<std::size_t>(std::ceil(lag)) + 2;
    const auto segment = x.subspan(start, std::min(frame_length + extra, x.size() - start));
    hnr += hnr_from_correlation(nccf_near_lag(segment, frame_length, lag));
    semitones += 12.0 * std::log2(pitch.f0_hz[f] / kSemitoneReferenceHz);
    ++voiced;
  }
  out.hnr_db = hnr / static_cast<double>(voiced);
  out.f0_semitone = semitones / static_cast<double>(voiced);
  return out;
}

}  // namespace vq
