#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "absreuse/jats.hpp"
#include "absreuse/text.hpp"

namespace absreuse {

enum class SectionLabel : std::uint8_t { Introduction = 0, Methods = 1, Results = 2, Discussion = 3, Other = 4 };

inline constexpr std::array<SectionLabel, 4> kImradOrder = {
    SectionLabel::Introduction, SectionLabel::Methods, SectionLabel::Results, SectionLabel::Discussion};

std::string_view to_string(SectionLabel label);
std::string_view short_name(SectionLabel label);  // I, M, R, D, O
std::optional<SectionLabel> parse_label(std::string_view text);

/// Thrown when an operation's documented precondition is violated.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Keyword dictionary mapping section titles onto IMRaD labels. A keyword
/// matches case-insensitively at a word start; when several keywords match,
/// the one occurring earliest in the title wins (longer keyword on ties).
class TitleClassifier {
 public:
  TitleClassifier();  // built-in dictionary

  /// Built-in dictionary plus `keyword<TAB>label` overrides from a file.
  static TitleClassifier with_overrides(const std::filesystem::path& path);

  void set(std::string keyword, SectionLabel label);
  SectionLabel classify(std::string_view title) const;

  const std::map<std::string, SectionLabel>& entries() const { return keywords_; }
  /// Hex fingerprint of the effective dictionary.
  std::string fingerprint() const;

  static const TitleClassifier& builtin();

 private:
  std::map<std::string, SectionLabel> keywords_;
};

SectionLabel classify_section(std::string_view title);

struct Section {
  SectionLabel label = SectionLabel::Other;
  std::string title;
  std::vector<Sentence> sentences;

  bool operator==(const Section&) const = default;
};

struct StructuredArticle {
  std::string article_id;
  std::string journal;
  std::vector<Sentence> abstract;
  std::optional<std::vector<Sentence>> author_summary;
  std::vector<Section> sections;
  bool has_full_imrad = false;

  std::size_t body_sentence_count() const;
  bool operator==(const StructuredArticle&) const = default;
};

bool contains_full_imrad(std::span<const Section> sections);

/// Segments every paragraph of a raw article and labels its sections.
StructuredArticle structure_article(const RawArticle& raw, const TitleClassifier& classifier,
                                    const StopWordList& stops,
                                    const SegmenterOptions& seg = {});

/// Stable reorder into Introduction, Methods, Results, Discussion; Other
/// sections are dropped. Throws ContractError unless has_full_imrad.
StructuredArticle canonicalize(const StructuredArticle& article);

/// As canonicalize, but accepts articles missing some IMRaD labels.
StructuredArticle canonicalize_partial(const StructuredArticle& article);

/// (index + 0.5) / total. Throws ContractError on index >= total.
double normalized_position(std::size_t sentence_index, std::size_t total_sentences);

/// Sentence counts before the I/M, M/R and R/D boundaries of a canonical
/// article, plus the total labelled sentence count.
struct BoundaryCounts {
  std::array<std::size_t, 3> cumulative{};
  std::size_t total = 0;

  bool operator==(const BoundaryCounts&) const = default;
};

BoundaryCounts section_boundary_counts(const StructuredArticle& canonical);

/// Cumulative sentence fractions at the I/M, M/R and R/D boundaries.
std::array<double, 3> section_boundaries(const StructuredArticle& canonical);

}  // namespace absreuse
