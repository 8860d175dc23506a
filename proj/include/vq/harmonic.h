#pragma once

#include "vq/formants.h"
#include "vq/framing.h"
#include "vq/kernels.h"
#include "vq/llf.h"
#include "vq/pitch.h"

namespace vq {

struct HarmonicLlfs {
  double h1_h2_db = 0.0;  ///< mean over voiced frames
  double h1_a3_db = 0.0;  ///< mean over frames with a formant estimate

  void write_to(LlfVector& v) const;
};

/// H1-H2 from the bins nearest f0 and 2 f0; H1-A3 where A3 is the strongest
/// harmonic inside F3 +/- F3 bandwidth (nearest harmonic to F3 if none falls
/// inside). Throws kInsufficientVoicing without voiced frames.
HarmonicLlfs compute_harmonic_llfs(const FrameSequence& frames, const PitchTrack& pitch,
                                   const FormantTrack& formants);
HarmonicLlfs compute_harmonic_llfs(const FrameSequence& frames, const PitchTrack& pitch,
                                   const FormantTrack& formants, const Spectrogram& harmonic_spectrum);

/// H1-H2 only, for callers without a formant track.
double h1_minus_h2_db(const Spectrogram& harmonic_spectrum, const PitchTrack& pitch);

}  // namespace vq
