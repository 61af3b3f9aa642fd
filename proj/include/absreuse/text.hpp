#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace absreuse {

/// Sparse bag of stop-word-filtered terms (term -> count).
using TermVector = std::map<std::string, std::uint32_t>;

/// One segmented sentence together with its token and term representations.
struct Sentence {
  std::string text;
  std::vector<std::string> tokens;  // lowercase, stop-words kept
  TermVector terms;                 // stop-words removed
  std::size_t char_len = 0;
  std::size_t word_len = 0;         // == tokens.size()

  bool operator==(const Sentence&) const = default;
};

/// Immutable, case-insensitive stop-word set carrying a version tag that is
/// echoed into every report.
class StopWordList {
 public:
  StopWordList() = default;
  StopWordList(std::vector<std::string> words, std::string version_tag);

  /// The embedded English list.
  static const StopWordList& builtin();

  /// One word per line; `#` starts a comment. Throws std::runtime_error when
  /// the file cannot be read.
  static StopWordList from_file(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  const std::string& version_tag() const { return version_tag_; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
  std::string version_tag_ = "empty";
};

struct SegmenterOptions {
  // Segments with fewer tokens than this are folded into a neighbour.
  std::size_t min_tokens = 2;
};

/// Lowercased alphanumeric tokens. Punctuation and hyphens separate tokens;
/// numbers are kept.
std::vector<std::string> tokenize(std::string_view text);

TermVector term_vector(std::span<const std::string> tokens, const StopWordList& stops);

Sentence make_sentence(std::string text, const StopWordList& stops);

/// Sentence text spans, in order, before token/term construction.
std::vector<std::string> split_sentence_texts(std::string_view text,
                                              const SegmenterOptions& opts = {});

std::vector<Sentence> split_sentences(std::string_view text,
                                      const StopWordList& stops = StopWordList::builtin(),
                                      const SegmenterOptions& opts = {});

/// ASCII case-fold plus whitespace collapse; used by the exact-substring measure.
std::string normalize_for_matching(std::string_view text);

/// Collapses runs of ASCII whitespace into one space and trims both ends.
std::string collapse_whitespace(std::string_view text);

}  // namespace absreuse
