#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>

#include "vq/llf.h"

namespace vq {

inline constexpr int kStatsSchemaVersion = 1;
inline constexpr double kDegenerateSigma = 1e-9;

/// Per-feature reference mean and sample standard deviation.
struct FeatureStats {
  std::array<double, kFeatureCount> mu{};
  std::array<double, kFeatureCount> sigma{};
  std::string corpus;
  std::size_t utterance_count = 0;
  std::string created;  ///< ISO-8601 UTC

  double mean(Feature f) const noexcept { return mu[index_of(f)]; }
  double stddev(Feature f) const noexcept { return sigma[index_of(f)]; }

  /// Throws kMalformedStats unless every sigma is finite and > 0, every mu is
  /// finite and utterance_count >= 2.
  void validate() const;
};

/// Mean and (n - 1) standard deviation per feature, single pass (Welford).
/// Throws kTooFewVectors for n < 2 and kDegenerateFeature when a sigma falls
/// below 1e-9.
FeatureStats fit_stats(std::span<const LlfVector> vectors, std::string corpus = {});

/// Key/value text; doubles written with 17 significant digits.
void save_stats(const FeatureStats& stats, const std::filesystem::path& path);
std::string format_stats(const FeatureStats& stats);

FeatureStats load_stats(const std::filesystem::path& path);
FeatureStats parse_stats(const std::string& text);

/// Current time as ISO-8601 UTC, or SOURCE_DATE_EPOCH when that is set.
std::string utc_timestamp();

}  // namespace vq
