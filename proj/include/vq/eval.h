#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vq/llf.h"
#include "vq/quality.h"
#include "vq/stats.h"

namespace vq {

inline constexpr std::string_view kNeutralVoiceLabel = "NEUTRAL-VOICE";

struct LabeledSample {
  std::string source_id;
  std::optional<Quality> dominant;  ///< nullopt = neutral voice
  LlfVector llf;
};

struct EvalPair {
  Quality quality{};
  LabeledSample positive;
  LabeledSample negative;
};

/// Every sample dominant in q crossed with every other sample, both sides in
/// source_id order. Throws kNoPositives / kNoNegatives.
std::vector<EvalPair> form_pairs(std::span<const LabeledSample> samples, Quality q);

/// How a pair side is scored.
enum class ScoreMode {
  kFormula,        ///< the weighted z-score formula for the pair's quality
  kDirectFeature,  ///< Jit, Shim and Lou compare their own LLF directly; others use the formula
};

/// The one LLF a quality maps to under kDirectFeature, if any.
std::optional<Feature> direct_feature(Quality q) noexcept;

/// Strict ranking rule: correct iff s1 > s2, ties are wrong.
constexpr bool judge(double positive_score, double negative_score) noexcept {
  return positive_score > negative_score;
}

struct QualityResult {
  Quality quality{};
  std::size_t total_pairs = 0;
  std::size_t correct = 0;
  std::size_t ties = 0;
  double accuracy_percent = 0.0;
};

struct PairwiseEvalReport {
  std::vector<QualityResult> rows;

  /// Unweighted mean of per-quality accuracies (0 when empty).
  double mean_accuracy() const noexcept;
  const QualityResult* find(Quality q) const noexcept;
};

/// Tallies judged (s1, s2) score pairs for one quality.
QualityResult tally(Quality q, std::span<const std::pair<double, double>> scored_pairs);

/// Scores both sides of every pair on the pair's quality. Rows appear in
/// quality order. Scoring failures are rethrown naming the source_id.
PairwiseEvalReport evaluate_pairs(std::span<const EvalPair> pairs, const FeatureStats& stats,
                                  const CorrelationTable& table, ScoreMode mode = ScoreMode::kFormula);

/// form_pairs + evaluate_pairs for every quality that has at least one
/// positive and one negative sample.
PairwiseEvalReport evaluate_samples(std::span<const LabeledSample> samples, const FeatureStats& stats,
                                    const CorrelationTable& table, ScoreMode mode = ScoreMode::kFormula);

/// Table-style text: quality, total pairs, accuracy %, then the mean.
std::string format_report(const PairwiseEvalReport& report);
/// One-line JSON record of the same data.
std::string report_json(const PairwiseEvalReport& report);

struct ManifestLoad {
  std::vector<LabeledSample> samples;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

struct ManifestRow {
  std::filesystem::path path;
  std::optional<Quality> label;
};

/// Rows of `path,label`; '#' comments and blank lines ignored; relative paths
/// resolve against the manifest's directory; the label is a quality id, full
/// name, or NEUTRAL-VOICE. Throws kBadManifest on an unknown label.
std::vector<ManifestRow> parse_manifest(const std::filesystem::path& manifest);

/// parse_manifest + load_audio + extract_llf_vector, parallel over rows with
/// up to `jobs` threads. A missing file throws kIo; rows whose extraction
/// fails (silent, too short, unvoiced...) are skipped and counted.
ManifestLoad load_manifest(const std::filesystem::path& manifest, int jobs = 1);

/// Synthetic pairwise suites with known ordering.
enum class SuiteKind { kJitter, kShimmer, kBreathy };

struct SuiteSpec {
  SuiteKind kind = SuiteKind::kJitter;
  std::size_t per_side = 8;  ///< positives and clean negatives each; pairs = per_side^2
  std::uint64_t seed = 1;
};

/// Quality a suite's positives are labeled with (Jit, Shim, Brea).
Quality suite_quality(SuiteKind kind) noexcept;
std::string to_string(SuiteKind kind);
SuiteKind parse_suite_kind(const std::string& text);

/// Positives perturbed per the suite kind, negatives clean and labeled
/// neutral; f0 and seed vary per sample, the vowel is fixed.
std::vector<LabeledSample> build_synthetic_suite(const SuiteSpec& spec, int jobs = 1);

/// LLF vectors of a mixed synthetic corpus (clean, jittered, shimmered and
/// breathy vowels over several f0 values and vowel shapes), used as the
/// reference for scoring the synthetic suites.
std::vector<LlfVector> synthetic_reference_corpus(std::uint64_t seed = 7, int jobs = 1);

}  // namespace vq
