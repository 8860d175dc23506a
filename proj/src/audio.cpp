#include "vq/audio.h"

#include <algorithm>
#include <cmath>

#include "vq/error.h"

namespace vq {

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kIo: return 3;
    case ErrorCode::kUnsupportedFormat: return 4;
    case ErrorCode::kSilentInput: return 5;
    case ErrorCode::kTooShort: return 6;
    case ErrorCode::kInsufficientVoicing: return 7;
    case ErrorCode::kTooFewVectors: return 8;
    case ErrorCode::kDegenerateFeature: return 9;
    case ErrorCode::kMalformedStats: return 10;
    case ErrorCode::kMalformedTable: return 11;
    case ErrorCode::kEmptyQuality: return 12;
    case ErrorCode::kMissingFeature: return 13;
    case ErrorCode::kBadManifest: return 14;
    case ErrorCode::kNoPositives: return 15;
    case ErrorCode::kNoNegatives: return 16;
    case ErrorCode::kInvalidArgument: return 17;
  }
  return 1;
}

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUnsupportedFormat: return "unsupported-format";
    case ErrorCode::kSilentInput: return "silent-input";
    case ErrorCode::kTooShort: return "too-short";
    case ErrorCode::kInsufficientVoicing: return "insufficient-voicing";
    case ErrorCode::kTooFewVectors: return "too-few-vectors";
    case ErrorCode::kDegenerateFeature: return "degenerate-feature";
    case ErrorCode::kMalformedStats: return "malformed-stats";
    case ErrorCode::kMalformedTable: return "malformed-table";
    case ErrorCode::kEmptyQuality: return "empty-quality";
    case ErrorCode::kMissingFeature: return "missing-feature";
    case ErrorCode::kBadManifest: return "bad-manifest";
    case ErrorCode::kNoPositives: return "no-positives";
    case ErrorCode::kNoNegatives: return "no-negatives";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

AudioSignal::AudioSignal(std::vector<double> samples, int sample_rate_hz, std::string source_id)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz), source_id_(std::move(source_id)) {
  if (sample_rate_hz_ <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  }
  if (samples_.empty()) {
    throw Error(ErrorCode::kTooShort, "zero-length audio");
  }
  for (double x : samples_) {
    if (!std::isfinite(x) || std::abs(x) > 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "sample outside [-1, 1] or not finite");
    }
  }
}

AudioSignal AudioSignal::scaled(double gain) const {
  std::vector<double> out(samples_);
  for (double& x : out) x *= gain;
  return AudioSignal(std::move(out), sample_rate_hz_, source_id_);
}

AudioSignal AudioSignal::reversed() const {
  std::vector<double> out(samples_.rbegin(), samples_.rend());
  return AudioSignal(std::move(out), sample_rate_hz_, source_id_);
}

AudioSignal load_audio(const std::filesystem::path& path, int target_rate) {
  if (target_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "target rate must be positive");
  }
  WavData wav = read_wav(path);
  const std::size_t n = wav.channel_samples.front().size();
  if (n == 0) {
    throw Error(ErrorCode::kTooShort, "zero-length audio: " + path.string());
  }

  std::vector<double> mono(n, 0.0);
  if (wav.channels == 1) {
    mono = std::move(wav.channel_samples.front());
  } else {
    const double inv = 1.0 / wav.channels;
    for (const auto& ch : wav.channel_samples) {
      for (std::size_t i = 0; i < n; ++i) mono[i] += ch[i];
    }
    for (double& x : mono) x *= inv;
  }

  if (wav.sample_rate_hz != target_rate) {
    mono = resample(mono, wav.sample_rate_hz, target_rate);
  }

  double peak = 0.0;
  for (double x : mono) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kUnsupportedFormat, "non-finite sample in " + path.string());
    }
    peak = std::max(peak, std::abs(x));
  }
  if (peak == 0.0) {
    throw Error(ErrorCode::kSilentInput, "silent input: " + path.string());
  }
  if (peak > 1.0) {
    const double inv = 1.0 / peak;
    for (double& x : mono) x = std::clamp(x * inv, -1.0, 1.0);
  }
  return AudioSignal(std::move(mono), target_rate, path.string());
}

}  // namespace vq
