#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "vq/audio.h"

namespace vq {

/// The 25 utterance-level low-level features, in canonical order.
enum class Feature : std::size_t {
  kLoudness,
  kAlphaRatio,
  kHammarbergIndex,
  kSlope0To500,
  kSlope500To1500,
  kSpectralFlux,
  kMfcc1,
  kMfcc2,
  kMfcc3,
  kMfcc4,
  kF0Semitone,
  kJitterLocal,
  kShimmerLocalDb,
  kHnrDbAcf,
  kH1MinusH2,
  kH1MinusA3,
  kF1Frequency,
  kF1Bandwidth,
  kF1Amplitude,
  kF2Frequency,
  kF2Bandwidth,
  kF2Amplitude,
  kF3Frequency,
  kF3Bandwidth,
  kF3Amplitude,
};

inline constexpr std::size_t kFeatureCount = 25;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureKeys = {
    "Loudness",          "alphaRatio",          "hammarbergIndex",     "slope0-500",
    "slope500-1500",     "spectralFlux",        "mfcc1",               "mfcc2",
    "mfcc3",             "mfcc4",               "F0semitoneFrom27.5Hz", "jitterLocal",
    "shimmerLocaldB",    "HNRdBACF",            "logRelF0-H1-H2",      "logRelF0-H1-A3",
    "F1frequency",       "F1bandwidth",         "F1amplitudeLogRelF0", "F2frequency",
    "F2bandwidth",       "F2amplitudeLogRelF0", "F3frequency",         "F3bandwidth",
    "F3amplitudeLogRelF0",
};

constexpr std::size_t index_of(Feature f) noexcept { return static_cast<std::size_t>(f); }
constexpr std::string_view feature_key(Feature f) noexcept { return kFeatureKeys[index_of(f)]; }
constexpr Feature feature_at(std::size_t i) noexcept { return static_cast<Feature>(i); }
std::optional<Feature> parse_feature(std::string_view key) noexcept;

/// One value per canonical feature.
struct LlfVector {
  std::array<double, kFeatureCount> values{};

  double& operator[](Feature f) noexcept { return values[index_of(f)]; }
  double operator[](Feature f) const noexcept { return values[index_of(f)]; }

  bool operator==(const LlfVector&) const = default;
};

/// Full pipeline: framing, pitch, spectral, period, formant and harmonic
/// features. Needs >= 300 ms of audio and >= 3 voiced frames.
LlfVector extract_llf_vector(const AudioSignal& signal);

inline constexpr double kMinUtteranceS = 0.3;
inline constexpr std::size_t kMinVoicedFrames = 3;

}  // namespace vq
