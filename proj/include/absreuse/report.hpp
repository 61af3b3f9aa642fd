#pragma once

// CSV and JSON rendering of a finished corpus aggregate.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "absreuse/analytics.hpp"

namespace absreuse {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Everything needed to reproduce a run. Worker count and output paths are
/// not recorded.
struct ReportMetadata {
  std::string stopword_tag;
  std::string title_map_hash;
  std::string journal_source = "meta";
  std::size_t min_sentence_tokens = 2;
  std::size_t zone_window = 5;
  PositionalMode positional_mode = PositionalMode::Pooled;
  bool jaccard_empty_is_one = false;
};

struct SkippedFile {
  std::string path;  // relative to the input root
  std::string reason;
};

struct Report {
  ReportMetadata meta;
  CorpusAggregate aggregate;
  std::vector<SkippedFile> skipped;
  std::uint64_t files_seen = 0;
};

/// Fixed-point with four decimals; the format used for every CSV percentage.
std::string format_fixed(double value);

std::string render_table1(const Report& report);
std::string render_table2(const Report& report);
std::string render_table3(const Report& report);
std::string render_table4(const Report& report);
std::string render_table5(const Report& report);
std::string render_table6(const Report& report);
std::string render_fig1(const Report& report);
std::string render_fig2(const Report& report);
std::string render_fig3(const Report& report);
std::string render_fig3_boundaries(const Report& report);
std::string render_zones(const Report& report);
std::string render_json(const Report& report);

/// File name -> contents for every output, report.json included.
std::map<std::string, std::string> render_all(const Report& report);

/// Writes render_all() into `dir`, creating it when needed.
void write_report(const Report& report, const std::filesystem::path& dir);

}  // namespace absreuse
