#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absreuse/text.hpp"

namespace absreuse {

enum class Measure : std::uint8_t { Exact = 0, Cosine = 1, Levenshtein = 2, Dice = 3, Jaccard = 4 };

inline constexpr std::size_t kMeasureCount = 5;

std::string_view measure_code(Measure m);  // E, C, L, Dice, Jaccard
std::string_view measure_row_label(Measure m);  // SIM_E, SIM_C, ...

/// Bit set over Measure.
class MeasureSet {
 public:
  constexpr MeasureSet() = default;
  static constexpr MeasureSet standard() {
    return MeasureSet().with(Measure::Exact).with(Measure::Cosine).with(Measure::Levenshtein);
  }
  static constexpr MeasureSet all() {
    return standard().with(Measure::Dice).with(Measure::Jaccard);
  }
  /// Comma-separated codes, e.g. "E,C,L,Dice". Throws std::invalid_argument.
  static MeasureSet parse(std::string_view text);

  constexpr MeasureSet with(Measure m) const {
    MeasureSet s = *this;
    s.bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(m));
    return s;
  }
  constexpr bool contains(Measure m) const {
    return (bits_ >> static_cast<unsigned>(m)) & 1u;
  }
  constexpr bool empty() const { return bits_ == 0; }
  std::vector<Measure> members() const;
  std::string to_string() const;

  constexpr bool operator==(const MeasureSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

struct MatchConfig {
  double threshold = 0.6;
  MeasureSet measures = MeasureSet::standard();
  // Jaccard of two empty term sets: 1 when set, 0 otherwise.
  bool jaccard_empty_is_one = false;

  /// Throws std::invalid_argument unless 0 < threshold <= 1 and measures is non-empty.
  void validate() const;
  bool operator==(const MatchConfig&) const = default;
};

/// Per-measure similarity scores; only enabled measures are populated.
/// `max` is the maximum over populated measures.
struct SimilarityScore {
  std::optional<double> exact;
  std::optional<double> cosine;
  std::optional<double> levenshtein;
  std::optional<double> dice;
  std::optional<double> jaccard;
  double max = 0.0;

  std::optional<double> get(Measure m) const;
  void set(Measure m, double value);
  void recompute_max();

  bool operator==(const SimilarityScore&) const = default;
};

/// Lowest band edge below which every score lands in the same band.
inline constexpr double kBandFloor = 0.6;

// Term-level edit distance with unit-cost insert/delete/substitute. Two-row DP.
template <typename T>
std::size_t edit_distance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// 1 - edit / max(|a|, |b|); both empty -> 1, exactly one empty -> 0.
inline double levenshtein_similarity(std::size_t distance, std::size_t len_a, std::size_t len_b) {
  const std::size_t longest = std::max(len_a, len_b);
  if (longest == 0) return 1.0;
  if (len_a == 0 || len_b == 0) return 0.0;
  return 1.0 - static_cast<double>(distance) / static_cast<double>(longest);
}

double sim_exact(const Sentence& a, const Sentence& b);
double sim_cosine(const Sentence& a, const Sentence& b);
double sim_levenshtein(const Sentence& a, const Sentence& b);
double sim_dice(const Sentence& a, const Sentence& b);
double sim_jaccard(const Sentence& a, const Sentence& b, bool empty_is_one = false);

SimilarityScore score_pair(const Sentence& a, const Sentence& b, const MatchConfig& cfg);

/// Maximal similarity of one abstract sentence against a body. Each measure
/// field is that measure's maximum over the body; `body_index` is the
/// smallest index attaining the overall max.
struct SentenceMax {
  SimilarityScore score;
  std::size_t body_index = 0;
};

/// Throws std::invalid_argument when `body` is empty.
SentenceMax abstract_sentence_max(const Sentence& abstract_sentence, std::span<const Sentence> body,
                                  const MatchConfig& cfg);

/// score.max >= cfg.threshold.
bool is_match(const SimilarityScore& score, const MatchConfig& cfg);

/// Band index used by the similarity tables: 0 for 1, 1 for [0.8, 1),
/// 2 for [0.6, 0.8), 3 for below 0.6.
int similarity_band(double value);

}  // namespace absreuse
