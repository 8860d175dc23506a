#pragma once

// The published breathiness expansion, transcribed term by term. A term
// written (mu - v) has coefficient -w, a term written (v - mu) has +w.

#include <array>

#include "vq/llf.h"

namespace vq::test {

struct GoldenTerm {
  Feature feature;
  double coefficient;
};

inline constexpr std::array<GoldenTerm, 21> kBreathinessExpansion = {{
    {Feature::kLoudness, -0.25},
    {Feature::kAlphaRatio, -0.75},
    {Feature::kHammarbergIndex, -1.0},
    {Feature::kSlope0To500, -0.75},
    {Feature::kSlope500To1500, -0.75},
    {Feature::kSpectralFlux, +1.0},
    {Feature::kF0Semitone, -0.25},
    {Feature::kJitterLocal, +0.75},
    {Feature::kShimmerLocalDb, +0.75},
    {Feature::kHnrDbAcf, -0.75},
    {Feature::kH1MinusH2, -0.75},
    {Feature::kH1MinusA3, -0.75},
    {Feature::kF1Frequency, +1.0},
    {Feature::kF1Bandwidth, +0.75},
    {Feature::kF1Amplitude, -0.75},
    {Feature::kF2Frequency, -1.0},
    {Feature::kF2Bandwidth, +1.0},
    {Feature::kF2Amplitude, -0.75},
    {Feature::kF3Frequency, -1.0},
    {Feature::kF3Bandwidth, +0.75},
    {Feature::kF3Amplitude, -1.0},
}};

inline constexpr std::size_t kBreathinessZ = 21;

}  // namespace vq::test
