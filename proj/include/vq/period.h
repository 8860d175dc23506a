#pragma once

#include <vector>

#include "vq/audio.h"
#include "vq/llf.h"
#include "vq/pitch.h"

namespace vq {

/// One glottal cycle marker: interpolated peak position (samples) and the
/// interpolated peak amplitude.
struct PeriodMark {
  double position = 0.0;
  double amplitude = 0.0;
};

/// Marks grouped by voiced run; periods are only formed within a run.
using PeriodMarks = std::vector<std::vector<PeriodMark>>;

/// Peak-picks one mark per cycle inside each voiced run, searching
/// [0.75 T, 1.25 T] past the previous mark with T taken from the pitch track.
PeriodMarks find_period_marks(const AudioSignal& signal, const PitchTrack& pitch);

struct PeriodLlfs {
  double jitter_local = 0.0;
  double shimmer_local_db = 0.0;
  double hnr_db = 0.0;
  double f0_semitone = 0.0;

  void write_to(LlfVector& v) const;
};

/// mean|T_i - T_{i+1}| / mean T_i.
double local_jitter(const PeriodMarks& marks);
/// mean |20 log10(A_{i+1} / A_i)|.
double local_shimmer_db(const PeriodMarks& marks);

/// Jitter, shimmer, ACF-based HNR and mean F0 in semitones re 27.5 Hz.
/// `pitch` must have one entry per 25 ms / 10 ms frame of `signal`; it may be
/// hand-built (e.g. to force frames voiced). Throws kInsufficientVoicing when
/// there are not 3 consecutive voiced frames.
PeriodLlfs compute_period_llfs(const AudioSignal& signal, const PitchTrack& pitch);

/// 10*log10(r / (1 - r)) with r clamped to keep the result in [-50, 60] dB.
double hnr_from_correlation(double r) noexcept;

}  // namespace vq
