#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "absreuse/imrad.hpp"
#include "absreuse/similarity.hpp"

namespace absreuse {

/// Which articles feed the positional curve.
enum class PositionalScope : std::uint8_t { FullImradOnly, AllArticles };
/// Per-bin rate over pooled sentences, or mean of per-article rates.
enum class PositionalMode : std::uint8_t { Pooled, ArticleMean };
enum class KernelChoice : std::uint8_t { Reference, Parallel };

std::string_view to_string(PositionalScope scope);
std::string_view to_string(PositionalMode mode);

struct AnalysisConfig {
  MatchConfig match;
  std::size_t bins = 100;
  PositionalScope scope = PositionalScope::FullImradOnly;
  KernelChoice kernel = KernelChoice::Parallel;

  void validate() const;
};

struct MatchRecord {
  std::size_t abstract_sentence_index = 0;
  std::size_t body_sentence_index = 0;  // document order across all sections
  SectionLabel section_label = SectionLabel::Other;
  std::optional<double> body_normalized_position;  // set when the article enters the positional curve
  SimilarityScore score;

  bool operator==(const MatchRecord&) const = default;
};

struct ArticleResult {
  std::string article_id;
  std::string journal;
  std::size_t abstract_len = 0;
  std::optional<std::size_t> summary_len;
  std::vector<SimilarityScore> abstract_max;
  std::vector<SimilarityScore> summary_max;
  std::vector<MatchRecord> matches;
  std::size_t matched_abstract_sentences = 0;
  std::size_t matched_summary_sentences = 0;
  std::size_t body_sentences = 0;
  std::size_t matched_body_sentences = 0;
  std::size_t abstract_words = 0;
  std::size_t summary_words = 0;

  bool full_imrad = false;
  // Indexed by I, M, R, D. Filled for full-IMRaD articles only.
  std::array<std::size_t, 4> section_total{};
  std::array<std::size_t, 4> section_matched{};

  bool positional = false;
  std::size_t positional_total = 0;               // labelled sentences after reordering
  std::vector<std::size_t> positional_matched;    // canonical indices of matched sentences
  std::vector<double> matched_positions;
  BoundaryCounts boundaries;

  bool operator==(const ArticleResult&) const = default;
};

/// The article cannot be analyzed (empty abstract or body).
class ArticleSkipped : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ArticleResult analyze_article(const StructuredArticle& article, const AnalysisConfig& cfg);

/// Bin of sentence `index` among `total` for `bins` bins, computed exactly on
/// the midpoint position (index + 0.5) / total.
std::size_t position_bin(std::size_t index, std::size_t total, std::size_t bins);

struct BandCounts {
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
  bool operator==(const BandCounts&) const = default;
};

/// Index kMeasureCount holds SIM_max.
using BandTable = std::array<BandCounts, kMeasureCount + 1>;
inline constexpr std::size_t kMaxRow = kMeasureCount;

using RatioKey = std::pair<std::uint64_t, std::uint64_t>;  // numerator, denominator
using RatioMultiset = std::map<RatioKey, std::uint64_t>;

/// All counters for one journal. Every field is an integer count or an
/// integer-keyed multiset, so merging is exact and order-independent.
struct JournalAggregate {
  std::uint64_t articles = 0;
  std::uint64_t articles_with_summary = 0;
  std::uint64_t full_imrad_articles = 0;
  std::uint64_t body_sentences = 0;
  std::uint64_t abstract_sentences = 0;
  std::uint64_t summary_sentences = 0;
  std::uint64_t abstract_words = 0;
  std::uint64_t summary_words = 0;
  std::uint64_t matched_abstract_sentences = 0;
  std::uint64_t matched_summary_sentences = 0;

  BandTable abstract_bands{};
  BandTable summary_bands{};
  std::array<std::uint64_t, 4> match_count_bands{};     // 0, 1, 2-3, >3
  std::array<std::uint64_t, 5> reuse_fraction_bands{};  // none, (0,25], (25,50], (50,75], (75,100]

  std::array<std::uint64_t, 4> section_matched{};
  std::array<std::uint64_t, 4> section_total{};

  std::uint64_t positional_articles = 0;
  std::vector<std::uint64_t> bin_matched;
  std::vector<std::uint64_t> bin_total;
  std::vector<RatioMultiset> bin_article_rates;
  std::array<RatioMultiset, 3> boundaries;

  std::map<std::uint64_t, std::uint64_t> abstract_length_hist;
  std::map<std::uint64_t, std::uint64_t> summary_length_hist;

  explicit JournalAggregate(std::size_t bins = 0);
  void merge(const JournalAggregate& other);
  bool operator==(const JournalAggregate&) const = default;
};

struct AggregateConfig {
  std::size_t bins = 100;
  double threshold = 0.6;
  MeasureSet measures = MeasureSet::standard();
  PositionalScope scope = PositionalScope::FullImradOnly;

  static AggregateConfig from(const AnalysisConfig& cfg);
  bool operator==(const AggregateConfig&) const = default;
};

class CorpusAggregate {
 public:
  explicit CorpusAggregate(AggregateConfig cfg = {});

  void add(const ArticleResult& result);
  /// Throws std::invalid_argument when configurations differ.
  void merge(const CorpusAggregate& other);

  const AggregateConfig& config() const { return cfg_; }
  const std::map<std::string, JournalAggregate>& journals() const { return journals_; }
  JournalAggregate total() const;
  std::uint64_t article_count() const;
  bool empty() const { return article_count() == 0; }

  bool operator==(const CorpusAggregate&) const = default;

 private:
  AggregateConfig cfg_;
  std::map<std::string, JournalAggregate> journals_;
};

CorpusAggregate merge(const CorpusAggregate& a, const CorpusAggregate& b);

inline constexpr std::string_view kTotalRow = "Total";

// ---- Derived tables -------------------------------------------------------

struct BandRow {
  std::size_t measure_index = 0;  // Measure value, or kMaxRow
  std::array<double, 4> percent{};
  std::uint64_t sentences = 0;
};

struct BandDistribution {
  std::vector<BandRow> abstracts;
  std::vector<BandRow> summaries;  // empty when the corpus has no author summaries
};

/// Percentages of abstract / author-summary sentences per similarity band,
/// pooled over journals. Throws std::invalid_argument on an empty aggregate.
BandDistribution band_distribution(const CorpusAggregate& agg);

template <std::size_t N>
struct JournalRow {
  std::string journal;
  std::array<double, N> percent{};
  std::uint64_t units = 0;
};

/// Percentage of abstract sentences with SIM_max >= 0.8 and >= 0.6, per journal.
std::vector<JournalRow<2>> journal_match_percentages(const CorpusAggregate& agg);
std::vector<JournalRow<4>> match_count_bands(const CorpusAggregate& agg);
std::vector<JournalRow<5>> reuse_fraction_bands(const CorpusAggregate& agg);
/// I, M, R, D, Total. Journals without full-IMRaD sentences are omitted.
std::vector<JournalRow<5>> section_match_rates(const CorpusAggregate& agg);

struct PositionalCurve {
  std::string journal;
  std::vector<std::optional<double>> percent;  // nullopt where no sentence falls in the bin
  std::vector<std::uint64_t> matched;
  std::vector<std::uint64_t> total;
  std::optional<std::array<double, 3>> mean_boundaries;
  std::uint64_t articles = 0;
};

/// Per-journal curves followed by the Total curve.
std::vector<PositionalCurve> positional_distribution(const CorpusAggregate& agg, PositionalMode mode);

struct Zones {
  bool defined = false;
  std::string reason;                   // why zones are undefined
  std::array<std::size_t, 3> bins{};    // boundary bins: first min, first max, terminal rise
  std::array<double, 3> boundaries{};   // bin lower edges as fractions
};

/// Zone boundaries on a positional curve after centred moving-average
/// smoothing. Null bins are linearly interpolated first.
Zones detect_zones(std::span<const std::optional<double>> curve, std::size_t window = 5);

struct LengthStats {
  std::string journal;
  std::uint64_t articles = 0;
  std::uint64_t summaries = 0;
  std::map<std::uint64_t, std::uint64_t> abstract_hist;
  std::map<std::uint64_t, std::uint64_t> summary_hist;
  std::optional<double> mean_abstract_sentences;
  std::optional<double> mean_summary_sentences;
  std::optional<double> mean_abstract_sentence_words;
  std::optional<double> mean_summary_sentence_words;
  std::optional<double> mean_body_sentences;
};

std::vector<LengthStats> length_distributions(const CorpusAggregate& agg);

}  // namespace absreuse
