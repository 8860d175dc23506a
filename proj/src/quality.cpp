#include "vq/quality.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vq/error.h"

namespace vq {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

[[noreturn]] void table_error(const std::string& msg) { throw Error(ErrorCode::kMalformedTable, "table: " + msg); }

}  // namespace

std::optional<Quality> parse_quality(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kQualityCount; ++i) {
    if (iequals(text, kQualityIds[i]) || iequals(text, kQualityNames[i])) return quality_at(i);
  }
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view code) noexcept {
  code = trim(code);
  if (code.empty() || code == "-") return Category::kNeutral;
  for (Category c : kAllCategories) {
    if (code == category_code(c)) return c;
  }
  return std::nullopt;
}

std::string_view category_code(Category c) noexcept {
  switch (c) {
    case Category::kStrongNegative: return "SN";
    case Category::kNegative: return "N";
    case Category::kWeakNegative: return "WN";
    case Category::kNeutral: return "-";
    case Category::kWeakPositive: return "WP";
    case Category::kPositive: return "P";
    case Category::kStrongPositive: return "SP";
    case Category::kInconclusive: return "IC";
  }
  return "?";
}

double category_weight(Category c) noexcept {
  switch (c) {
    case Category::kStrongNegative:
    case Category::kStrongPositive: return 1.0;
    case Category::kNegative:
    case Category::kPositive: return 0.75;
    case Category::kWeakNegative:
    case Category::kWeakPositive: return 0.25;
    case Category::kNeutral:
    case Category::kInconclusive: return 0.0;
  }
  return 0.0;
}

int category_sign(Category c) noexcept {
  switch (c) {
    case Category::kStrongNegative:
    case Category::kNegative:
    case Category::kWeakNegative: return -1;
    case Category::kWeakPositive:
    case Category::kPositive:
    case Category::kStrongPositive: return 1;
    case Category::kNeutral:
    case Category::kInconclusive: return 0;
  }
  return 0;
}

double effective_coefficient(Category c) noexcept { return category_sign(c) * category_weight(c); }

CorrelationTable::CorrelationTable() {
  for (auto& row : cells_) row.fill(Category::kNeutral);
}

std::size_t CorrelationTable::active_count(Quality q) const noexcept {
  std::size_t z = 0;
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    if (effective_coefficient(cells_[index_of(q)][j]) != 0.0) ++z;
  }
  return z;
}

CorrelationTable parse_table(std::string_view text) {
  CorrelationTable table;
  std::vector<std::optional<Quality>> columns;
  std::array<bool, kFeatureCount> seen_row{};
  bool have_header = false;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (body.starts_with("version=")) table.set_version(std::string(trim(body.substr(8))));
      continue;
    }

    const auto cells = split_csv(line);
    if (!have_header) {
      if (cells.size() != kQualityCount + 1) {
        table_error("header must list exactly 24 quality columns");
      }
      std::array<bool, kQualityCount> seen_col{};
      for (std::size_t c = 1; c < cells.size(); ++c) {
        auto q = parse_quality(cells[c]);
        if (!q) table_error("unknown quality column '" + std::string(cells[c]) + "'");
        if (seen_col[index_of(*q)]) table_error("duplicate column '" + std::string(cells[c]) + "'");
        seen_col[index_of(*q)] = true;
        columns.push_back(q);
      }
      have_header = true;
      continue;
    }

    const std::string row_name(cells.front());
    auto feature = parse_feature(cells.front());
    if (!feature) table_error("line " + std::to_string(line_no) + ": unknown feature row '" + row_name + "'");
    if (seen_row[index_of(*feature)]) table_error("duplicate row '" + row_name + "'");
    seen_row[index_of(*feature)] = true;
    if (cells.size() != columns.size() + 1) {
      table_error("row '" + row_name + "' has " + std::to_string(cells.size() - 1) + " cells, expected 24");
    }
    for (std::size_t c = 1; c < cells.size(); ++c) {
      auto cat = parse_category(cells[c]);
      const Quality q = *columns[c - 1];
      if (!cat) {
        table_error("row '" + row_name + "', column '" + std::string(quality_id(q)) + "': unknown code '" +
                    std::string(cells[c]) + "'");
      }
      table.set(q, *feature, *cat);
    }
  }

  if (!have_header) table_error("missing header row");
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    if (!seen_row[j]) table_error("missing row '" + std::string(kFeatureKeys[j]) + "'");
  }
  return table;
}

CorrelationTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str());
}

const CorrelationTable& default_table() {
  static const CorrelationTable table = parse_table(default_table_text());
  return table;
}

QualityScore score_quality(const LlfVector& v, const FeatureStats& stats, const CorrelationTable& table,
                           Quality q) {
  QualityScore out;
  out.quality = q;
  double sum = 0.0;
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    const double coef = table.coefficient(q, feature_at(j));
    if (coef == 0.0) continue;
    ++out.z;
    // + 0.0 folds a negative zero into +0.
    out.contributions[j] = coef * (v.values[j] - stats.mu[j]) / stats.sigma[j] + 0.0;
    sum += out.contributions[j];
  }
  if (out.z == 0) {
    throw Error(ErrorCode::kEmptyQuality, "quality " + std::string(quality_id(q)) + " has no active features");
  }
  out.score = sum / static_cast<double>(out.z);
  return out;
}

QualityScores score_all(const LlfVector& v, const FeatureStats& stats, const CorrelationTable& table) {
  QualityScores out;
  for (std::size_t i = 0; i < kQualityCount; ++i) out.scores[i] = score_quality(v, stats, table, quality_at(i));
  return out;
}

}  // namespace vq
