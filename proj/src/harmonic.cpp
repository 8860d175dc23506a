#include "vq/harmonic.h"

#include <algorithm>
#include <cmath>

#include "vq/error.h"

namespace vq {

void HarmonicLlfs::write_to(LlfVector& v) const {
  v[Feature::kH1MinusH2] = h1_h2_db;
  v[Feature::kH1MinusA3] = h1_a3_db;
}

double h1_minus_h2_db(const Spectrogram& harmonic_spectrum, const PitchTrack& pitch) {
  if (pitch.size() != harmonic_spectrum.frames) {
    throw Error(ErrorCode::kInvalidArgument, "pitch track length does not match frame count");
  }
  const double bin_hz = harmonic_spectrum.bin_hz();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t f = 0; f < pitch.size(); ++f) {
    if (!pitch.voiced[f] || pitch.f0_hz[f] <= 0.0) continue;
    const auto p = harmonic_spectrum.row(f);
    sum += level_db_at(p, bin_hz, pitch.f0_hz[f]) - level_db_at(p, bin_hz, 2.0 * pitch.f0_hz[f]);
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorCode::kInsufficientVoicing, "insufficient voicing: no voiced frames for harmonic analysis");
  }
  return sum / static_cast<double>(count);
}

HarmonicLlfs compute_harmonic_llfs(const FrameSequence& frames, const PitchTrack& pitch,
                                   const FormantTrack& formants) {
  return compute_harmonic_llfs(frames, pitch, formants, power_spectrogram(frames, kHarmonicFftSize));
}

HarmonicLlfs compute_harmonic_llfs(const FrameSequence& frames, const PitchTrack& pitch,
                                   const FormantTrack& formants, const Spectrogram& harmonic_spectrum) {
  if (pitch.size() != frames.count()) {
    throw Error(ErrorCode::kInvalidArgument, "pitch track length does not match frame count");
  }
  HarmonicLlfs out;
  out.h1_h2_db = h1_minus_h2_db(harmonic_spectrum, pitch);

  if (formants.frames.empty()) {
    throw Error(ErrorCode::kInsufficientVoicing, "insufficient voicing: no formant estimates for H1-A3");
  }
  const double bin_hz = harmonic_spectrum.bin_hz();
  double sum = 0.0;
  for (const FormantFrame& ff : formants.frames) {
    const double f0 = pitch.f0_hz[ff.frame];
    const auto p = harmonic_spectrum.row(ff.frame);
    const double f3 = ff.frequency_hz[2];
    const double b3 = ff.bandwidth_hz[2];
    const double h1 = level_db_at(p, bin_hz, f0);

    const double first = std::max(1.0, std::ceil((f3 - b3) / f0));
    const double last = std::floor((f3 + b3) / f0);
    double a3 = -1e300;
    for (double h = first; h <= last; h += 1.0) a3 = std::max(a3, level_db_at(p, bin_hz, h * f0));
    if (last < first) a3 = level_db_at(p, bin_hz, std::max(1.0, std::round(f3 / f0)) * f0);
    sum += h1 - a3;
  }
  out.h1_a3_db = sum / static_cast<double>(formants.frames.size());
  return out;
}

}  // namespace vq
