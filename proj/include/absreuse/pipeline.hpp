#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "absreuse/analytics.hpp"
#include "absreuse/report.hpp"

namespace absreuse {

enum class JournalSource : std::uint8_t { Meta, Directory };

std::string_view to_string(JournalSource source);

/// Invalid configuration or arguments; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoInput = 2;

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path output = "absreuse-out";
  AnalysisConfig analysis;
  PositionalMode positional_mode = PositionalMode::Pooled;
  std::size_t zone_window = 5;
  std::size_t min_sentence_tokens = 2;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> title_map;
  JournalSource journal_source = JournalSource::Meta;
  int workers = 0;  // 0 lets OpenMP decide
  std::size_t batch_size = 256;

  /// Throws UsageError.
  void validate() const;
};

/// Parses, structures and analyzes every file under cfg.input. Skip and
/// progress lines go to `log`. Nothing is written to disk.
Report analyze_corpus(const RunConfig& cfg, std::ostream& log);

/// analyze_corpus followed by write_report. Returns an exit code.
int run_analyze(const RunConfig& cfg, std::ostream& log);

/// Structured view of one article with per-sentence SIM_max, as JSON.
std::string inspect_article(const std::filesystem::path& file, const RunConfig& cfg);

/// All enabled measures for two free-text sentences, as JSON.
std::string score_pair_json(std::string_view a, std::string_view b, const RunConfig& cfg);

}  // namespace absreuse
