#pragma once

// Abstract-vs-body scoring kernels.
//
// match_article_reference() is the plain serial implementation built on the
// string-level measures in similarity.hpp; it is kept as the oracle for the
// optimized path. match_article_parallel() interns tokens to integer ids,
// prunes pairs whose upper bounds fall below the band floor, and spreads
// abstract rows over OpenMP threads.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absreuse/similarity.hpp"
#include "absreuse/text.hpp"

namespace absreuse {

class TokenInterner {
 public:
  std::uint32_t intern(const std::string& token);
  std::size_t size() const { return ids_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
};

/// Integer-id view of a sentence used by the optimized kernel.
struct SentenceFeatures {
  std::string normalized;
  std::vector<std::uint32_t> tokens;
  std::vector<std::uint32_t> sorted_tokens;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;  // sorted by id
  std::uint64_t term_norm2 = 0;
};

SentenceFeatures make_features(const Sentence& sentence, TokenInterner& interner);

/// Unpruned score on features; equal to score_pair() on the source sentences.
SimilarityScore score_features(const SentenceFeatures& a, const SentenceFeatures& b, const MatchConfig& cfg);

/// Returns nullopt only when every enabled measure is provably below
/// `floor`; otherwise the exact score.
std::optional<SimilarityScore> score_features_pruned(const SentenceFeatures& a, const SentenceFeatures& b,
                                                     const MatchConfig& cfg, double floor);

/// Scores below this value never change a band or a match decision.
double pruning_floor(const MatchConfig& cfg);

struct SentenceMatch {
  SimilarityScore score;
  std::size_t body_index = 0;

  bool operator==(const SentenceMatch&) const = default;
};

struct PairMatch {
  std::size_t abstract_index = 0;
  std::size_t body_index = 0;
  SimilarityScore score;

  bool operator==(const PairMatch&) const = default;
};

struct ArticleMatches {
  std::vector<SentenceMatch> abstract;
  std::vector<SentenceMatch> summary;
  std::vector<std::uint8_t> body_matched;  // matched by any abstract sentence
  std::vector<PairMatch> pairs;            // abstract/body pairs at threshold, row-major
};

/// Serial, unpruned. Every score is exact.
ArticleMatches match_article_reference(std::span<const Sentence> abstract, std::span<const Sentence> summary,
                                       std::span<const Sentence> body, const MatchConfig& cfg);

/// OpenMP over abstract and summary rows with pruning. Scores at or above
/// pruning_floor(cfg) are exact; lower per-measure maxima are lower bounds
/// and `body_index` is only meaningful when score.max >= the floor.
/// Runs serially when called from inside an active parallel region.
ArticleMatches match_article_parallel(std::span<const Sentence> abstract, std::span<const Sentence> summary,
                                      std::span<const Sentence> body, const MatchConfig& cfg);

}  // namespace absreuse
