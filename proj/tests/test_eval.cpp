#include <doctest.h>

#include <fstream>
#include <random>

#include "test_support.h"
#include "vq/error.h"
#include "vq/eval.h"
#include "vq/synth.h"

using namespace vq;

namespace {

LabeledSample sample(const std::string& id, std::optional<Quality> q, double jitter = 0.0) {
  LabeledSample s;
  s.source_id = id;
  s.dominant = q;
  s.llf[Feature::kJitterLocal] = jitter;
  return s;
}

FeatureStats flat_stats() {
  FeatureStats s;
  s.mu.fill(0.0);
  s.sigma.fill(1.0);
  s.utterance_count = 2;
  return s;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("pairs are the cross product of positives and the rest") {
  std::vector<LabeledSample> samples;
  for (int i = 0; i < 3; ++i) samples.push_back(sample("p" + std::to_string(i), Quality::kJit));
  for (int i = 0; i < 3; ++i) samples.push_back(sample("n" + std::to_string(i), std::nullopt));
  samples.push_back(sample("s0", Quality::kShim));
  samples.push_back(sample("b0", Quality::kBrea));
  const auto pairs = form_pairs(samples, Quality::kJit);
  CHECK(pairs.size() == 3 * 5);
  for (const auto& p : pairs) {
    CHECK(p.positive.dominant == Quality::kJit);
    CHECK(p.negative.dominant != Quality::kJit);
  }
  // Ordered by source id on both sides.
  CHECK(pairs.front().positive.source_id == "p0");
  CHECK(pairs.front().negative.source_id == "b0");

  const std::vector<LabeledSample> two = {sample("a", Quality::kJit), sample("b", std::nullopt)};
  CHECK(form_pairs(two, Quality::kJit).size() == 1);
  CHECK(code_of([&] { (void)form_pairs(two, Quality::kBrea); }) == ErrorCode::kNoPositives);
  const std::vector<LabeledSample> lonely = {sample("a", Quality::kJit)};
  CHECK(code_of([&] { (void)form_pairs(lonely, Quality::kJit); }) == ErrorCode::kNoNegatives);
}

TEST_CASE("strict ranking rule") {
  static_assert(judge(1.0, 0.0));
  static_assert(!judge(0.0, 0.0));
  static_assert(!judge(-1.0, 0.0));
  const std::vector<std::pair<double, double>> scored = {{2.0, 1.0}, {1.0, 1.0}, {0.0, 1.0}, {3.0, -3.0}};
  const auto r = tally(Quality::kJit, scored);
  CHECK(r.total_pairs == 4);
  CHECK(r.correct == 2);
  CHECK(r.ties == 1);
  CHECK(r.accuracy_percent == 50.0);
}

TEST_CASE("evaluated pairs follow the formula direction") {
  const auto stats = flat_stats();
  const auto& table = default_table();
  // jitterLocal is strongly positive for Jit; the negative sits at the mean.
  const std::vector<EvalPair> good = {{Quality::kJit, sample("p", Quality::kJit, 1.0), sample("n", std::nullopt)}};
  CHECK(evaluate_pairs(good, stats, table).rows.at(0).correct == 1);
  const std::vector<EvalPair> tie = {{Quality::kJit, sample("p", Quality::kJit), sample("n", std::nullopt)}};
  const auto r = evaluate_pairs(tie, stats, table).rows.at(0);
  CHECK(r.correct == 0);
  CHECK(r.ties == 1);
}

TEST_CASE("accuracy ignores positive affine rescaling and swaps to its complement") {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> level(0, 5);
  std::vector<std::pair<double, double>> pairs(200);
  for (auto& p : pairs) p = {level(rng), level(rng)};
  const auto base = tally(Quality::kShim, pairs);

  auto rescaled = pairs;
  for (auto& p : rescaled) p = {3.5 * p.first - 7.0, 3.5 * p.second - 7.0};
  CHECK(tally(Quality::kShim, rescaled).correct == base.correct);

  auto swapped = pairs;
  for (auto& p : swapped) std::swap(p.first, p.second);
  const auto flip = tally(Quality::kShim, swapped);
  CHECK(flip.correct == base.total_pairs - base.correct - base.ties);
  CHECK(flip.ties == base.ties);
}

TEST_CASE("report mean is unweighted across qualities") {
  PairwiseEvalReport report;
  report.rows.push_back({Quality::kJit, 10, 10, 0, 100.0});
  report.rows.push_back({Quality::kBrea, 1000, 500, 0, 50.0});
  CHECK(report.mean_accuracy() == 75.0);
  CHECK(report.find(Quality::kBrea)->total_pairs == 1000);
  CHECK(report.find(Quality::kShim) == nullptr);
  const auto text = format_report(report);
  CHECK(text.find("Breathiness") != std::string::npos);
  CHECK(text.find("75.00") != std::string::npos);
  CHECK(report_json(report).find("\"mean_accuracy_percent\"") != std::string::npos);
}

TEST_CASE("direct-feature mode compares the raw feature") {
  CHECK(direct_feature(Quality::kJit) == Feature::kJitterLocal);
  CHECK(direct_feature(Quality::kShim) == Feature::kShimmerLocalDb);
  CHECK(direct_feature(Quality::kLou) == Feature::kLoudness);
  CHECK_FALSE(direct_feature(Quality::kBrea).has_value());
}

TEST_CASE("manifest loading") {
  test::TempDir dir;
  SynthParams p;
  p.f0_hz = 140.0;
  write_wav(dir / "clean.wav", generate_synthetic(p).samples(), 16000);
  p.kind = SynthKind::kJittered;
  p.amount = 3.0;
  write_wav(dir / "jit.wav", generate_synthetic(p).samples(), 16000);
  write_wav(dir / "silent.wav", std::vector<double>(16000, 0.0), 16000, WavEncoding::kPcm16);

  SUBCASE("two valid rows") {
    std::ofstream(dir / "m.csv") << "# comment\nclean.wav,NEUTRAL-VOICE\n\njit.wav,Jitter\n";
    const auto loaded = load_manifest(dir / "m.csv");
    REQUIRE(loaded.samples.size() == 2);
    CHECK(loaded.skipped == 0);
    CHECK(loaded.samples[1].dominant == Quality::kJit);
    CHECK_FALSE(loaded.samples[0].dominant.has_value());
  }
  SUBCASE("unknown label names the label") {
    std::ofstream(dir / "m.csv") << "clean.wav,Sparkly\n";
    try {
      (void)parse_manifest(dir / "m.csv");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kBadManifest);
      CHECK(std::string(e.what()).find("Sparkly") != std::string::npos);
    }
  }
  SUBCASE("silent file is skipped with a warning") {
    std::ofstream(dir / "m.csv") << "clean.wav,NEUTRAL-VOICE\nsilent.wav,Brea\njit.wav,Jit\n";
    const auto loaded = load_manifest(dir / "m.csv", 2);
    CHECK(loaded.samples.size() == 2);
    CHECK(loaded.skipped == 1);
    REQUIRE(loaded.warnings.size() == 1);
    CHECK(loaded.warnings[0].find("silent.wav") != std::string::npos);
  }
  SUBCASE("missing file") {
    std::ofstream(dir / "m.csv") << "nope.wav,Jit\n";
    CHECK(code_of([&] { (void)load_manifest(dir / "m.csv"); }) == ErrorCode::kIo);
  }
}

TEST_CASE("synthetic jitter suite ranks perfectly") {
  const auto stats = fit_stats(synthetic_reference_corpus(), "synthetic");
  const auto suite = build_synthetic_suite({SuiteKind::kJitter, 8, 1});
  CHECK(suite.size() == 16);
  const auto pairs = form_pairs(suite, Quality::kJit);
  CHECK(pairs.size() == 64);
  for (auto mode : {ScoreMode::kFormula, ScoreMode::kDirectFeature}) {
    const auto report = evaluate_pairs(pairs, stats, default_table(), mode);
    CHECK(report.find(Quality::kJit)->accuracy_percent == 100.0);
  }
}
