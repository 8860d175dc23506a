// vqscore: batch front end for feature extraction, reference statistics,
// voice quality scoring, pairwise evaluation and synthetic test audio.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vq/audio.h"
#include "vq/error.h"
#include "vq/eval.h"
#include "vq/llf.h"
#include "vq/quality.h"
#include "vq/stats.h"
#include "vq/synth.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kStatsEnv = "VQ_STATS";

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0 success            1 usage error          3 i/o error\n"
    "  4 unsupported audio  5 silent input         6 too short\n"
    "  7 insufficient voicing                      8 fewer than 2 vectors\n"
    "  9 degenerate feature 10 malformed stats     11 malformed table\n"
    "  12 empty quality     13 missing feature     14 bad manifest\n"
    "  15 no positives      16 no negatives        17 invalid argument\n";

struct Options {
  std::vector<std::string> inputs;
  std::string manifest;
  std::string stats_path;
  std::string table_path;
  std::string output;
  std::string corpus;
  int jobs = 1;
  bool with_contributions = false;
  bool direct_starred = false;
  int verbosity = 0;
  bool quiet = false;

  std::vector<std::string> suites;
  std::size_t per_side = 8;
  std::uint64_t seed = 1;

  std::string kind = "clean";
  double amount = 0.0;
  double f0 = 150.0;
  double duration = 1.0;
  std::string encoding = "float32";
  std::string spec_file;
};

// Collects per-item failures; the first failure decides the exit status.
class Diagnostics {
 public:
  explicit Diagnostics(const Options& opt) : quiet_(opt.quiet) {}

  void fail(const vq::Error& e) {
    if (!quiet_) std::cerr << "vqscore: " << vq::error_name(e.code()) << ": " << e.what() << "\n";
    if (status_ == 0) status_ = vq::exit_code(e.code());
  }
  void warn(const std::string& msg) const {
    if (!quiet_) std::cerr << "vqscore: warning: " << msg << "\n";
  }
  int status() const { return status_; }

 private:
  bool quiet_;
  int status_ = 0;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw vq::Error(vq::ErrorCode::kIo, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct Input {
  std::string source;
  std::optional<vq::Quality> label;
};

std::vector<Input> collect_inputs(const Options& opt) {
  std::vector<Input> inputs;
  if (!opt.manifest.empty()) {
    for (auto& row : vq::parse_manifest(opt.manifest)) inputs.push_back({row.path.string(), row.label});
  }
  for (const auto& in : opt.inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::recursive_directory_iterator(in)) {
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (entry.is_regular_file() && ext == ".wav") found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      for (auto& f : found) inputs.push_back({std::move(f), std::nullopt});
    } else {
      inputs.push_back({in, std::nullopt});
    }
  }
  for (const auto& in : inputs) {
    if (!fs::exists(in.source)) throw vq::Error(vq::ErrorCode::kIo, "missing input " + in.source);
  }
  if (inputs.empty()) throw vq::Error(vq::ErrorCode::kInvalidArgument, "no input files");
  return inputs;
}

// Extraction in input order; `jobs` threads pull files dynamically.
std::vector<std::optional<vq::LlfVector>> extract_inputs(const std::vector<Input>& inputs, int jobs,
                                                         Diagnostics& diag) {
  std::vector<std::optional<vq::LlfVector>> out(inputs.size());
  std::vector<std::optional<vq::Error>> errors(inputs.size());
  const auto n = static_cast<long long>(inputs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = vq::extract_llf_vector(vq::load_audio(inputs[k].source));
    } catch (const vq::Error& e) {
      errors[k] = vq::Error(e.code(), inputs[k].source + ": " + e.what());
    }
  }
  for (const auto& e : errors) {
    if (e) diag.fail(*e);
  }
  return out;
}

std::string require_stats_path(const Options& opt) {
  if (!opt.stats_path.empty()) return opt.stats_path;
  if (const char* env = std::getenv(kStatsEnv); env && *env) return env;
  throw vq::Error(vq::ErrorCode::kInvalidArgument, std::string("--stats is required (or set ") + kStatsEnv + ")");
}

vq::CorrelationTable table_for(const Options& opt) {
  return opt.table_path.empty() ? vq::default_table() : vq::load_table(opt.table_path);
}

ordered_json llf_record(const std::string& source, const vq::LlfVector& v) {
  ordered_json j;
  j["source"] = source;
  for (std::size_t i = 0; i < vq::kFeatureCount; ++i) j[std::string(vq::kFeatureKeys[i])] = v.values[i];
  return j;
}

int run_extract(const Options& opt) {
  Diagnostics diag(opt);
  const auto inputs = collect_inputs(opt);
  Output out(opt.output);
  const auto vectors = extract_inputs(inputs, opt.jobs, diag);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (vectors[i]) out.stream() << llf_record(inputs[i].source, *vectors[i]).dump() << "\n";
  }
  return diag.status();
}

int run_fit_stats(const Options& opt) {
  if (opt.output.empty()) throw vq::Error(vq::ErrorCode::kInvalidArgument, "--output is required");
  Diagnostics diag(opt);
  const auto inputs = collect_inputs(opt);
  Diagnostics extraction(opt);
  const auto vectors = extract_inputs(inputs, opt.jobs, extraction);
  std::vector<vq::LlfVector> usable;
  for (const auto& v : vectors) {
    if (v) usable.push_back(*v);
  }
  if (usable.size() != vectors.size()) {
    diag.warn(std::to_string(vectors.size() - usable.size()) + " file(s) skipped");
  }
  const auto stats = vq::fit_stats(usable, opt.corpus.empty() ? opt.inputs.empty() ? opt.manifest : opt.inputs.front()
                                                              : opt.corpus);
  vq::save_stats(stats, opt.output);
  if (opt.verbosity > 0) std::cerr << "fitted " << stats.utterance_count << " utterances -> " << opt.output << "\n";
  return diag.status();
}

int run_score(const Options& opt) {
  Diagnostics diag(opt);
  const auto stats = vq::load_stats(require_stats_path(opt));
  const auto table = table_for(opt);
  const auto inputs = collect_inputs(opt);
  Output out(opt.output);
  const auto vectors = extract_inputs(inputs, opt.jobs, diag);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!vectors[i]) continue;
    const auto scores = vq::score_all(*vectors[i], stats, table);
    ordered_json j;
    j["source"] = inputs[i].source;
    ordered_json s;
    for (const auto& qs : scores.scores) s[std::string(vq::quality_id(qs.quality))] = qs.score;
    j["scores"] = s;
    if (opt.with_contributions) {
      ordered_json c;
      for (const auto& qs : scores.scores) {
        ordered_json terms;
        for (std::size_t f = 0; f < vq::kFeatureCount; ++f) {
          if (table.coefficient(qs.quality, vq::feature_at(f)) != 0.0) {
            terms[std::string(vq::kFeatureKeys[f])] = qs.contributions[f];
          }
        }
        c[std::string(vq::quality_id(qs.quality))] = terms;
      }
      j["contributions"] = c;
    }
    out.stream() << j.dump() << "\n";
  }
  return diag.status();
}

int run_evaluate(const Options& opt) {
  Diagnostics diag(opt);
  const auto table = table_for(opt);
  const auto mode = opt.direct_starred ? vq::ScoreMode::kDirectFeature : vq::ScoreMode::kFormula;
  if (opt.manifest.empty() == opt.suites.empty()) {
    throw vq::Error(vq::ErrorCode::kInvalidArgument, "give exactly one of --manifest or --synthetic");
  }

  std::vector<vq::LabeledSample> samples;
  std::optional<vq::FeatureStats> stats;
  if (!opt.manifest.empty()) {
    stats = vq::load_stats(require_stats_path(opt));
    auto loaded = vq::load_manifest(opt.manifest, opt.jobs);
    for (const auto& w : loaded.warnings) diag.warn("skipped " + w);
    samples = std::move(loaded.samples);
  } else {
    std::vector<vq::SuiteKind> kinds;
    for (const auto& s : opt.suites) {
      if (s == "all") {
        kinds = {vq::SuiteKind::kJitter, vq::SuiteKind::kShimmer, vq::SuiteKind::kBreathy};
        break;
      }
      kinds.push_back(vq::parse_suite_kind(s));
    }
    if (!opt.stats_path.empty() || std::getenv(kStatsEnv)) {
      stats = vq::load_stats(require_stats_path(opt));
    } else {
      stats = vq::fit_stats(vq::synthetic_reference_corpus(7, opt.jobs), "synthetic-reference");
    }
    vq::PairwiseEvalReport combined;
    for (auto kind : kinds) {
      vq::SuiteSpec spec{kind, opt.per_side, opt.seed};
      const auto suite = vq::build_synthetic_suite(spec, opt.jobs);
      auto report = vq::evaluate_pairs(vq::form_pairs(suite, vq::suite_quality(kind)), *stats, table, mode);
      combined.rows.insert(combined.rows.end(), report.rows.begin(), report.rows.end());
    }
    std::cout << vq::format_report(combined);
    if (!opt.output.empty()) Output(opt.output).stream() << vq::report_json(combined) << "\n";
    return diag.status();
  }

  const auto report = vq::evaluate_samples(samples, *stats, table, mode);
  std::cout << vq::format_report(report);
  if (!opt.output.empty()) Output(opt.output).stream() << vq::report_json(report) << "\n";
  return diag.status();
}

vq::WavEncoding parse_encoding(const std::string& s) {
  if (s == "float32") return vq::WavEncoding::kFloat32;
  if (s == "pcm16") return vq::WavEncoding::kPcm16;
  if (s == "pcm24") return vq::WavEncoding::kPcm24;
  throw vq::Error(vq::ErrorCode::kInvalidArgument, "unknown encoding '" + s + "'");
}

int run_synth(const Options& opt) {
  struct Job {
    vq::SynthParams params;
    std::string output;
  };
  std::vector<Job> jobs;
  if (!opt.spec_file.empty()) {
    // kind,amount,f0,duration,seed,output per line
    std::ifstream in(opt.spec_file);
    if (!in) throw vq::Error(vq::ErrorCode::kIo, "cannot open " + opt.spec_file);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      std::stringstream ss(line);
      std::vector<std::string> cells;
      for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
      if (cells.size() != 6) {
        throw vq::Error(vq::ErrorCode::kInvalidArgument,
                        opt.spec_file + ":" + std::to_string(line_no) + ": expected kind,amount,f0,duration,seed,output");
      }
      Job job;
      try {
        job.params.kind = vq::parse_synth_kind(cells[0]);
        job.params.amount = std::stod(cells[1]);
        job.params.f0_hz = std::stod(cells[2]);
        job.params.duration_s = std::stod(cells[3]);
        job.params.seed = std::stoull(cells[4]);
      } catch (const std::logic_error&) {
        throw vq::Error(vq::ErrorCode::kInvalidArgument, opt.spec_file + ":" + std::to_string(line_no) + ": bad number");
      }
      fs::path out = cells[5];
      job.output = out.is_absolute() ? out.string() : (fs::path(opt.spec_file).parent_path() / out).string();
      jobs.push_back(std::move(job));
    }
  } else {
    if (opt.output.empty()) throw vq::Error(vq::ErrorCode::kInvalidArgument, "--output is required");
    Job job;
    job.params.kind = vq::parse_synth_kind(opt.kind);
    job.params.amount = opt.amount;
    job.params.f0_hz = opt.f0;
    job.params.duration_s = opt.duration;
    job.params.seed = opt.seed;
    job.output = opt.output;
    jobs.push_back(std::move(job));
  }
  const auto encoding = parse_encoding(opt.encoding);
  for (const auto& job : jobs) {
    const auto signal = vq::generate_synthetic(job.params);
    vq::write_wav(job.output, signal.samples(), signal.sample_rate_hz(), encoding);
    if (opt.verbosity > 0) std::cerr << "wrote " << job.output << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Objective voice quality scores from speech audio"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", opt.output, "Output path (default: stdout)");
    sub->add_option("--jobs,-j", opt.jobs, "Files processed in parallel")->check(CLI::PositiveNumber);
    sub->add_flag("--verbose,-v", opt.verbosity, "More diagnostics");
    sub->add_flag("--quiet,-q", opt.quiet, "No diagnostics on stderr");
  };

  auto* extract = app.add_subcommand("extract", "Print the 25 low-level features per file as JSON lines");
  extract->add_option("inputs", opt.inputs, "WAV files or directories");
  extract->add_option("--manifest", opt.manifest, "CSV manifest (path,label)");
  common(extract);

  auto* fit = app.add_subcommand("fit-stats", "Fit per-feature mean and standard deviation over a corpus");
  fit->add_option("inputs", opt.inputs, "WAV files or directories");
  fit->add_option("--manifest", opt.manifest, "CSV manifest (path,label)");
  fit->add_option("--corpus", opt.corpus, "Corpus label stored in the stats file");
  common(fit);

  auto* score = app.add_subcommand("score", "Print the 24 voice quality scores per file as JSON lines");
  score->add_option("inputs", opt.inputs, "WAV files or directories");
  score->add_option("--manifest", opt.manifest, "CSV manifest (path,label)");
  score->add_option("--stats", opt.stats_path, std::string("Reference statistics file (default: $") + kStatsEnv + ")");
  score->add_option("--table", opt.table_path, "Correlation table CSV (default: bundled)");
  score->add_flag("--with-contributions", opt.with_contributions, "Include per-feature weighted z terms");
  common(score);

  auto* evaluate = app.add_subcommand("evaluate", "Pairwise ranking accuracy per voice quality");
  evaluate->add_option("--manifest", opt.manifest, "CSV manifest (path,label); label NEUTRAL-VOICE for neutral");
  evaluate->add_option("--synthetic", opt.suites, "Synthetic suite(s): jitter, shimmer, breathy, all");
  evaluate->add_option("--stats", opt.stats_path, "Reference statistics (synthetic default: fitted on a synthetic corpus)");
  evaluate->add_option("--table", opt.table_path, "Correlation table CSV (default: bundled)");
  evaluate->add_option("--per-side", opt.per_side, "Synthetic samples per side")->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", opt.seed, "Synthetic suite seed");
  evaluate->add_flag("--direct-starred", opt.direct_starred, "Compare Jit/Shim/Lou by their own feature");
  common(evaluate);

  auto* synth = app.add_subcommand("synth", "Write synthetic vowels as WAV");
  synth->add_option("--kind", opt.kind, "clean, jittered, shimmered, breathy");
  synth->add_option("--amount", opt.amount, "jitter %, shimmer dB or breathy noise ratio");
  synth->add_option("--f0", opt.f0, "Fundamental frequency (Hz)");
  synth->add_option("--duration", opt.duration, "Seconds");
  synth->add_option("--seed", opt.seed, "Random seed");
  synth->add_option("--encoding", opt.encoding, "float32, pcm16, pcm24");
  synth->add_option("--spec", opt.spec_file, "Batch file: kind,amount,f0,duration,seed,output per line");
  common(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*extract) return run_extract(opt);
    if (*fit) return run_fit_stats(opt);
    if (*score) return run_score(opt);
    if (*evaluate) return run_evaluate(opt);
    if (*synth) return run_synth(opt);
  } catch (const vq::Error& e) {
    if (!opt.quiet) std::cerr << "vqscore: " << vq::error_name(e.code()) << ": " << e.what() << "\n";
    return vq::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "vqscore: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
