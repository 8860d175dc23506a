#include "vq/stats.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "vq/error.h"

namespace vq {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::kMalformedStats, "stats: bad number for " + key + ": '" + text + "'");
  }
  return v;
}

}  // namespace

void FeatureStats::validate() const {
  if (utterance_count < 2) {
    throw Error(ErrorCode::kMalformedStats, "stats: utterance count must be >= 2");
  }
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const std::string key(kFeatureKeys[i]);
    if (!std::isfinite(mu[i])) {
      throw Error(ErrorCode::kMalformedStats, "stats: non-finite mean for " + key);
    }
    if (!std::isfinite(sigma[i]) || sigma[i] <= 0.0) {
      throw Error(ErrorCode::kMalformedStats, "stats: sigma for " + key + " must be positive");
    }
  }
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

FeatureStats fit_stats(std::span<const LlfVector> vectors, std::string corpus) {
  if (vectors.size() < 2) {
    throw Error(ErrorCode::kTooFewVectors, "fewer than 2 vectors");
  }
  FeatureStats stats;
  std::array<double, kFeatureCount> m2{};
  std::size_t n = 0;
  for (const LlfVector& v : vectors) {
    ++n;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      const double delta = v.values[i] - stats.mu[i];
      stats.mu[i] += delta / static_cast<double>(n);
      m2[i] += delta * (v.values[i] - stats.mu[i]);
    }
  }
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    stats.sigma[i] = std::sqrt(m2[i] / static_cast<double>(n - 1));
    if (!(stats.sigma[i] >= kDegenerateSigma)) {
      throw Error(ErrorCode::kDegenerateFeature,
                  "degenerate feature " + std::string(kFeatureKeys[i]) + ": zero variance in reference corpus");
    }
  }
  stats.corpus = std::move(corpus);
  stats.utterance_count = n;
  stats.created = utc_timestamp();
  return stats;
}

std::string format_stats(const FeatureStats& stats) {
  std::ostringstream out;
  out << "# voice quality reference statistics\n";
  out << "schema_version = " << kStatsSchemaVersion << "\n";
  out << "corpus = " << stats.corpus << "\n";
  out << "utterance_count = " << stats.utterance_count << "\n";
  out << "created = " << stats.created << "\n";
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    out << "mu." << kFeatureKeys[i] << " = " << format_double(stats.mu[i]) << "\n";
    out << "sigma." << kFeatureKeys[i] << " = " << format_double(stats.sigma[i]) << "\n";
  }
  return out.str();
}

void save_stats(const FeatureStats& stats, const std::filesystem::path& path) {
  stats.validate();
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << format_stats(stats);
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

FeatureStats parse_stats(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kMalformedStats, "stats: line " + std::to_string(line_no) + " is not key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (!kv.emplace(key, trim(t.substr(eq + 1))).second) {
      throw Error(ErrorCode::kMalformedStats, "stats: duplicate key " + key);
    }
  }

  auto require = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorCode::kMalformedStats, "stats: missing key " + key);
    return it->second;
  };

  if (require("schema_version") != std::to_string(kStatsSchemaVersion)) {
    throw Error(ErrorCode::kMalformedStats, "stats: unsupported schema_version " + kv["schema_version"]);
  }
  FeatureStats stats;
  stats.corpus = kv.count("corpus") ? kv["corpus"] : std::string();
  stats.created = kv.count("created") ? kv["created"] : std::string();
  const std::string& count = require("utterance_count");
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
  if (ec != std::errc() || ptr != count.data() + count.size()) {
    throw Error(ErrorCode::kMalformedStats, "stats: bad utterance_count '" + count + "'");
  }
  stats.utterance_count = n;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const std::string key(kFeatureKeys[i]);
    if (!kv.count("mu." + key) || !kv.count("sigma." + key)) {
      throw Error(ErrorCode::kMalformedStats, "stats: missing key " + key);
    }
    stats.mu[i] = parse_double("mu." + key, kv["mu." + key]);
    stats.sigma[i] = parse_double("sigma." + key, kv["sigma." + key]);
  }
  stats.validate();
  return stats;
}

FeatureStats load_stats(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open stats file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stats(buf.str());
}

}  // namespace vq
