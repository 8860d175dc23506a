#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "vq/llf.h"
#include "vq/stats.h"

namespace vq {

/// The 24 voice qualities, in the column order of the correlation table.
enum class Quality : std::size_t {
  kCov, kAph, kBiph, kBrea, kCrea, kDip, kFlu, kGlo, kHoa, kRou, kNas, kJit,
  kPre, kPul, kRes, kShim, kStra, kStro, kTre, kTwa, kVen, kWob, kYaw, kLou,
};

inline constexpr std::size_t kQualityCount = 24;

inline constexpr std::array<std::string_view, kQualityCount> kQualityIds = {
    "Cov", "Aph", "Biph", "Brea", "Crea", "Dip", "Flu", "Glo", "Hoa", "Rou", "Nas", "Jit",
    "Pre", "Pul", "Res", "Shim", "Stra", "Stro", "Tre", "Twa", "Ven", "Wob", "Yaw", "Lou",
};

inline constexpr std::array<std::string_view, kQualityCount> kQualityNames = {
    "Coveredness",   "Aphonicity",  "Biphonicity",    "Breathiness", "Creakiness", "Diplophonicity",
    "Flutter",       "Glottalization", "Hoarseness",  "Roughness",   "Nasality",   "Jitter",
    "Pressed",       "Pulsed",      "Resonant",       "Shimmer",     "Strained",   "Strohbassness",
    "Tremor",        "Twanginess",  "Ventricular",    "Wobble",      "Yawniness",  "Loudness",
};

constexpr std::size_t index_of(Quality q) noexcept { return static_cast<std::size_t>(q); }
constexpr std::string_view quality_id(Quality q) noexcept { return kQualityIds[index_of(q)]; }
constexpr std::string_view quality_name(Quality q) noexcept { return kQualityNames[index_of(q)]; }
constexpr Quality quality_at(std::size_t i) noexcept { return static_cast<Quality>(i); }

/// Accepts the abbreviation or the full name, case-insensitively.
std::optional<Quality> parse_quality(std::string_view text) noexcept;

/// Correlation strength between a feature and a quality.
enum class Category { kStrongNegative, kNegative, kWeakNegative, kNeutral, kWeakPositive, kPositive,
                      kStrongPositive, kInconclusive };

inline constexpr std::array<Category, 8> kAllCategories = {
    Category::kStrongNegative, Category::kNegative,      Category::kWeakNegative,
    Category::kNeutral,        Category::kWeakPositive,  Category::kPositive,
    Category::kStrongPositive, Category::kInconclusive,
};

/// Cell codes: SN N WN - WP P SP IC. An empty string parses as neutral.
std::optional<Category> parse_category(std::string_view code) noexcept;
std::string_view category_code(Category c) noexcept;

/// |weight|: SN/SP 1, N/P 0.75, WN/WP 0.25, neutral/IC 0.
double category_weight(Category c) noexcept;
/// -1 for negatives, +1 for positives, 0 for neutral and IC.
int category_sign(Category c) noexcept;
/// sign * weight.
double effective_coefficient(Category c) noexcept;

/// 24 x 25 category matrix plus a version label.
class CorrelationTable {
 public:
  CorrelationTable();

  Category at(Quality q, Feature f) const noexcept { return cells_[index_of(q)][index_of(f)]; }
  void set(Quality q, Feature f, Category c) noexcept { cells_[index_of(q)][index_of(f)] = c; }

  double coefficient(Quality q, Feature f) const noexcept { return effective_coefficient(at(q, f)); }
  /// Number of features with a nonzero coefficient for q.
  std::size_t active_count(Quality q) const noexcept;

  const std::string& version() const noexcept { return version_; }
  void set_version(std::string v) { version_ = std::move(v); }

 private:
  std::array<std::array<Category, kFeatureCount>, kQualityCount> cells_;
  std::string version_;
};

/// CSV: optional '#' comments (a "# version=..." comment sets the version),
/// a header "feature,<quality ids...>", then one row per feature. Columns and
/// rows may come in any order but each must appear exactly once.
CorrelationTable parse_table(std::string_view text);
CorrelationTable load_table(const std::filesystem::path& path);

/// Contents of data/correlation_table.csv, compiled in.
std::string_view default_table_text();
const CorrelationTable& default_table();

struct QualityScore {
  Quality quality{};
  double score = 0.0;
  std::size_t z = 0;  ///< normalizer: features with nonzero coefficient
  std::array<double, kFeatureCount> contributions{};  ///< c * w * (v - mu) / sigma
};

/// score = (1/Z) * sum_j c_j w_j (v_j - mu_j) / sigma_j. Throws kEmptyQuality
/// when no feature is active for q.
QualityScore score_quality(const LlfVector& v, const FeatureStats& stats, const CorrelationTable& table,
                           Quality q);

struct QualityScores {
  std::array<QualityScore, kQualityCount> scores{};

  double operator[](Quality q) const noexcept { return scores[index_of(q)].score; }
};

QualityScores score_all(const LlfVector& v, const FeatureStats& stats, const CorrelationTable& table);

}  // namespace vq
