#include "vq/eval.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "vq/audio.h"
#include "vq/error.h"
#include "vq/synth.h"

namespace vq {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool by_source(const LabeledSample* a, const LabeledSample* b) { return a->source_id < b->source_id; }

double side_score(const LabeledSample& s, Quality q, const FeatureStats& stats, const CorrelationTable& table,
                  ScoreMode mode) {
  if (mode == ScoreMode::kDirectFeature) {
    if (auto f = direct_feature(q)) return s.llf[*f];
  }
  try {
    return score_quality(s.llf, stats, table, q).score;
  } catch (const Error& e) {
    throw Error(e.code(), s.source_id + ": " + e.what());
  }
}

// Run `work(i)` for i in [0, n) on up to `jobs` threads, collecting per-row
// exceptions so a failure never escapes an OpenMP region.
template <typename Work>
std::vector<std::optional<Error>> parallel_rows(std::size_t n, int jobs, Work&& work) {
  std::vector<std::optional<Error>> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
  for (long long i = 0; i < count; ++i) {
    try {
      work(static_cast<std::size_t>(i));
    } catch (const Error& e) {
      errors[static_cast<std::size_t>(i)] = e;
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = Error(ErrorCode::kIo, e.what());
    }
  }
  return errors;
}

}  // namespace

std::optional<Feature> direct_feature(Quality q) noexcept {
  switch (q) {
    case Quality::kJit: return Feature::kJitterLocal;
    case Quality::kShim: return Feature::kShimmerLocalDb;
    case Quality::kLou: return Feature::kLoudness;
    default: return std::nullopt;
  }
}

std::vector<EvalPair> form_pairs(std::span<const LabeledSample> samples, Quality q) {
  std::vector<const LabeledSample*> positives;
  std::vector<const LabeledSample*> negatives;
  for (const auto& s : samples) {
    (s.dominant == q ? positives : negatives).push_back(&s);
  }
  const std::string id(quality_id(q));
  if (positives.empty()) throw Error(ErrorCode::kNoPositives, "no positive samples for " + id);
  if (negatives.empty()) throw Error(ErrorCode::kNoNegatives, "no negative samples for " + id);
  std::stable_sort(positives.begin(), positives.end(), by_source);
  std::stable_sort(negatives.begin(), negatives.end(), by_source);

  std::vector<EvalPair> pairs;
  pairs.reserve(positives.size() * negatives.size());
  for (const auto* p : positives) {
    for (const auto* n : negatives) pairs.push_back({q, *p, *n});
  }
  return pairs;
}

double PairwiseEvalReport::mean_accuracy() const noexcept {
  if (rows.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : rows) sum += r.accuracy_percent;
  return sum / static_cast<double>(rows.size());
}

const QualityResult* PairwiseEvalReport::find(Quality q) const noexcept {
  for (const auto& r : rows) {
    if (r.quality == q) return &r;
  }
  return nullptr;
}

QualityResult tally(Quality q, std::span<const std::pair<double, double>> scored_pairs) {
  QualityResult r;
  r.quality = q;
  r.total_pairs = scored_pairs.size();
  for (const auto& [s1, s2] : scored_pairs) {
    if (judge(s1, s2)) ++r.correct;
    else if (s1 == s2) ++r.ties;
  }
  r.accuracy_percent = r.total_pairs ? 100.0 * static_cast<double>(r.correct) / static_cast<double>(r.total_pairs)
                                     : 0.0;
  return r;
}

PairwiseEvalReport evaluate_pairs(std::span<const EvalPair> pairs, const FeatureStats& stats,
                                  const CorrelationTable& table, ScoreMode mode) {
  if (pairs.empty()) throw Error(ErrorCode::kInvalidArgument, "no pairs to evaluate");
  std::array<std::vector<std::pair<double, double>>, kQualityCount> scored;
  for (const auto& pair : pairs) {
    if (pair.positive.dominant != pair.quality || pair.negative.dominant == pair.quality) {
      throw Error(ErrorCode::kInvalidArgument, "pair labels inconsistent with its quality: " +
                                                   pair.positive.source_id + " / " + pair.negative.source_id);
    }
    scored[index_of(pair.quality)].emplace_back(side_score(pair.positive, pair.quality, stats, table, mode),
                                                side_score(pair.negative, pair.quality, stats, table, mode));
  }
  PairwiseEvalReport report;
  for (std::size_t i = 0; i < kQualityCount; ++i) {
    if (!scored[i].empty()) report.rows.push_back(tally(quality_at(i), scored[i]));
  }
  return report;
}

PairwiseEvalReport evaluate_samples(std::span<const LabeledSample> samples, const FeatureStats& stats,
                                    const CorrelationTable& table, ScoreMode mode) {
  std::vector<EvalPair> all;
  for (std::size_t i = 0; i < kQualityCount; ++i) {
    const Quality q = quality_at(i);
    const bool has_pos = std::any_of(samples.begin(), samples.end(), [&](const auto& s) { return s.dominant == q; });
    const bool has_neg = std::any_of(samples.begin(), samples.end(), [&](const auto& s) { return s.dominant != q; });
    if (!has_pos || !has_neg) continue;
    auto pairs = form_pairs(samples, q);
    all.insert(all.end(), std::make_move_iterator(pairs.begin()), std::make_move_iterator(pairs.end()));
  }
  if (all.empty()) throw Error(ErrorCode::kNoPositives, "no quality has both positive and negative samples");
  return evaluate_pairs(all, stats, table, mode);
}

std::string format_report(const PairwiseEvalReport& report) {
  std::ostringstream out;
  char line[96];
  std::snprintf(line, sizeof line, "%-16s %12s %9s\n", "Voice Quality", "Total Pairs", "Acc (%)");
  out << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-16s %12zu %9.2f\n", std::string(quality_name(r.quality)).c_str(),
                  r.total_pairs, r.accuracy_percent);
    out << line;
  }
  std::snprintf(line, sizeof line, "%-16s %12s %9.2f\n", "Mean", "", report.mean_accuracy());
  out << line;
  return out.str();
}

std::string report_json(const PairwiseEvalReport& report) {
  nlohmann::ordered_json j;
  j["qualities"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["quality"] = std::string(quality_id(r.quality));
    row["total_pairs"] = r.total_pairs;
    row["correct"] = r.correct;
    row["ties"] = r.ties;
    row["accuracy_percent"] = r.accuracy_percent;
    j["qualities"].push_back(row);
  }
  j["mean_accuracy_percent"] = report.mean_accuracy();
  return j.dump();
}

std::vector<ManifestRow> parse_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::kIo, "cannot open manifest " + manifest.string());
  const auto base = manifest.parent_path();
  std::vector<ManifestRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto comma = t.rfind(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::kBadManifest, "manifest line " + std::to_string(line_no) + ": expected path,label");
    }
    const std::string path = trim(t.substr(0, comma));
    const std::string label = trim(t.substr(comma + 1));
    if (path == "path" && label == "label") continue;  // header
    ManifestRow row;
    row.path = std::filesystem::path(path).is_absolute() ? std::filesystem::path(path) : base / path;
    if (label != kNeutralVoiceLabel) {
      auto q = parse_quality(label);
      if (!q) {
        throw Error(ErrorCode::kBadManifest,
                    "manifest line " + std::to_string(line_no) + ": unknown quality label '" + label + "'");
      }
      row.label = q;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ManifestLoad load_manifest(const std::filesystem::path& manifest, int jobs) {
  const auto rows = parse_manifest(manifest);
  for (const auto& r : rows) {
    if (!std::filesystem::exists(r.path)) throw Error(ErrorCode::kIo, "missing file " + r.path.string());
  }
  std::vector<std::optional<LabeledSample>> loaded(rows.size());
  const auto errors = parallel_rows(rows.size(), jobs, [&](std::size_t i) {
    const AudioSignal signal = load_audio(rows[i].path);
    loaded[i] = LabeledSample{rows[i].path.string(), rows[i].label, extract_llf_vector(signal)};
  });

  ManifestLoad out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (errors[i]) {
      ++out.skipped;
      out.warnings.push_back(rows[i].path.string() + ": " + errors[i]->what());
    } else {
      out.samples.push_back(std::move(*loaded[i]));
    }
  }
  return out;
}

Quality suite_quality(SuiteKind kind) noexcept {
  switch (kind) {
    case SuiteKind::kJitter: return Quality::kJit;
    case SuiteKind::kShimmer: return Quality::kShim;
    case SuiteKind::kBreathy: return Quality::kBrea;
  }
  return Quality::kJit;
}

std::string to_string(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::kJitter: return "jitter";
    case SuiteKind::kShimmer: return "shimmer";
    case SuiteKind::kBreathy: return "breathy";
  }
  return "jitter";
}

SuiteKind parse_suite_kind(const std::string& text) {
  for (SuiteKind k : {SuiteKind::kJitter, SuiteKind::kShimmer, SuiteKind::kBreathy}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown synthetic suite '" + text + "'");
}

namespace {

constexpr double kSuiteJitterPercent = 3.0;
constexpr double kSuiteShimmerDb = 1.5;
constexpr double kSuiteBreathyRatio = 0.3;
constexpr double kSuiteBaseF0 = 110.0;
constexpr double kSuiteF0Step = 4.0;
constexpr double kSuiteDurationS = 0.8;

std::vector<LlfVector> extract_all(const std::vector<SynthParams>& specs, int jobs) {
  std::vector<LlfVector> out(specs.size());
  const auto errors = parallel_rows(specs.size(), jobs, [&](std::size_t i) {
    out[i] = extract_llf_vector(generate_synthetic(specs[i]));
  });
  for (const auto& e : errors) {
    if (e) throw *e;
  }
  return out;
}

}  // namespace

std::vector<LabeledSample> build_synthetic_suite(const SuiteSpec& spec, int jobs) {
  if (spec.per_side == 0) throw Error(ErrorCode::kInvalidArgument, "suite needs at least one sample per side");
  std::vector<SynthParams> params;
  std::vector<LabeledSample> samples;
  for (int side = 0; side < 2; ++side) {
    for (std::size_t i = 0; i < spec.per_side; ++i) {
      SynthParams p;
      p.duration_s = kSuiteDurationS;
      p.f0_hz = kSuiteBaseF0 + kSuiteF0Step * static_cast<double>(i);
      p.seed = spec.seed * 1000 + static_cast<std::uint64_t>(side) * 100 + i;
      LabeledSample s;
      if (side == 0) {
        switch (spec.kind) {
          case SuiteKind::kJitter: p.kind = SynthKind::kJittered; p.amount = kSuiteJitterPercent; break;
          case SuiteKind::kShimmer: p.kind = SynthKind::kShimmered; p.amount = kSuiteShimmerDb; break;
          case SuiteKind::kBreathy: p.kind = SynthKind::kBreathy; p.amount = kSuiteBreathyRatio; break;
        }
        s.dominant = suite_quality(spec.kind);
      }
      char id[64];
      std::snprintf(id, sizeof id, "%s-%s-%02zu", to_string(spec.kind).c_str(), side == 0 ? "pos" : "neg", i);
      s.source_id = id;
      params.push_back(p);
      samples.push_back(std::move(s));
    }
  }
  const auto vectors = extract_all(params, jobs);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i].llf = vectors[i];
  return samples;
}

std::vector<LlfVector> synthetic_reference_corpus(std::uint64_t seed, int jobs) {
  struct Vowel {
    std::array<double, 3> formants;
    std::array<double, 3> bandwidths;
  };
  const std::array<Vowel, 3> vowels = {{
      {{700.0, 1220.0, 2600.0}, {80.0, 100.0, 120.0}},
      {{300.0, 2300.0, 3000.0}, {60.0, 90.0, 150.0}},
      {{500.0, 900.0, 2400.0}, {70.0, 90.0, 130.0}},
  }};
  const std::array<double, 4> f0s = {100.0, 125.0, 160.0, 210.0};
  std::vector<SynthParams> specs;
  std::uint64_t n = 0;
  for (const auto& vowel : vowels) {
    for (double f0 : f0s) {
      for (SynthKind kind : {SynthKind::kClean, SynthKind::kJittered, SynthKind::kShimmered, SynthKind::kBreathy}) {
        SynthParams p;
        p.kind = kind;
        p.f0_hz = f0;
        p.duration_s = kSuiteDurationS;
        p.formants_hz = vowel.formants;
        p.bandwidths_hz = vowel.bandwidths;
        p.seed = seed * 100000 + n++;
        switch (kind) {
          case SynthKind::kClean: break;
          case SynthKind::kJittered: p.amount = 1.0 + static_cast<double>(n % 4); break;
          case SynthKind::kShimmered: p.amount = 0.5 + 0.5 * static_cast<double>(n % 4); break;
          case SynthKind::kBreathy: p.amount = 0.1 + 0.1 * static_cast<double>(n % 4); break;
        }
        specs.push_back(p);
      }
    }
  }
  return extract_all(specs, jobs);
}

}  // namespace vq
