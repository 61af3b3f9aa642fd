#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace absreuse {

struct RawSection {
  std::string title;
  std::vector<std::string> paragraphs;

  bool operator==(const RawSection&) const = default;
};

/// Text content of one JATS article, split into abstract, author summary and
/// top-level body sections. Paragraph text is whitespace-normalized.
struct RawArticle {
  std::string article_id;
  std::string journal;
  std::string abstract_text;                       // paragraphs joined by '\n'
  std::optional<std::string> author_summary_text;  // paragraphs joined by '\n'
  std::vector<RawSection> sections;

  bool operator==(const RawArticle&) const = default;
};

/// Malformed XML. Carries the byte offset reported by the parser.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : std::runtime_error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Well-formed XML that is not a usable JATS article (wrong root, no body).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Token substituted for display formulas in running text.
inline constexpr std::string_view kFormulaPlaceholder = "FORMULA";

RawArticle parse_article(std::string_view xml_bytes);

/// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);
bool is_valid_utf8(std::string_view bytes);

struct ScanEntry {
  std::filesystem::path path;
  std::variant<RawArticle, std::string> result;  // article or error message

  bool ok() const { return std::holds_alternative<RawArticle>(result); }
  const RawArticle& article() const { return std::get<RawArticle>(result); }
  const std::string& error() const { return std::get<std::string>(result); }
};

/// Single-consumer stream over the `.xml` files below a root directory,
/// in lexicographic path order. Per-file failures are yielded as entries.
class CorpusScanner {
 public:
  /// Throws std::runtime_error when `root` is missing or unreadable.
  explicit CorpusScanner(const std::filesystem::path& root, std::string extension = ".xml");

  const std::vector<std::filesystem::path>& paths() const { return paths_; }
  std::size_t size() const { return paths_.size(); }

  std::optional<ScanEntry> next();

  /// Reads one file; empty optional carries the I/O error in `error`.
  static std::optional<std::string> read_file(const std::filesystem::path& path, std::string& error);

 private:
  std::vector<std::filesystem::path> paths_;
  std::size_t cursor_ = 0;
};

/// Parses `bytes` into a scan entry without throwing.
ScanEntry parse_entry(const std::filesystem::path& path, std::string_view bytes);

}  // namespace absreuse
