#include "absreuse/jats.hpp"

#include <expat.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>
#include <set>
#include <sstream>
#include <system_error>

#include "absreuse/text.hpp"

namespace absreuse {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

const char* attr(const XML_Char** attrs, std::string_view key) {
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    if (key == attrs[i]) return attrs[i + 1];
  }
  return nullptr;
}

// Non-running-text elements whose content is dropped.
bool is_excluded(std::string_view name) {
  static const std::set<std::string, std::less<>> kExcluded = {
      "fig",     "fig-group",  "table-wrap", "table-wrap-group", "table",
      "caption", "label",      "graphic",    "media",            "supplementary-material",
      "fn-group", "fn",        "ref-list",   "object-id",        "alternatives-text",
      "ack",     "app-group",  "glossary",   "notes",            "array",
  };
  return kExcluded.count(name) > 0;
}

// Elements that start a new paragraph when not nested in a <p>.
bool is_block(std::string_view name) {
  static const std::set<std::string, std::less<>> kBlocks = {
      "list", "list-item", "def-list", "def-item", "disp-quote", "boxed-text", "statement",
      "speech", "verse-group",
  };
  return kBlocks.count(name) > 0;
}

class JatsHandler {
 public:
  void start(const XML_Char* name_c, const XML_Char** attrs) {
    const std::string_view name(name_c);
    stack_.emplace_back(name);
    const std::size_t depth = stack_.size();

    if (depth == 1 && name != "article") {
      structural_error_ = "root element is <" + std::string(name) + ">, expected <article>";
      stop();
      return;
    }
    if (name == "sub-article" || name == "response") ++nested_article_depth_;
    if (nested_article_depth_ > 0) return;

    if (excluded_depth_ > 0) {
      ++excluded_depth_;
      return;
    }

    if (region_ == Region::None) {
      start_metadata(name, attrs, depth);
      return;
    }

    if (name == "title") {
      if (p_depth_ == 0) flush();
      if (region_ == Region::Abstract && depth == region_depth_ + 1 && !abstract_title_seen_) {
        begin_capture(Capture::AbstractTitle, depth);
        abstract_title_seen_ = true;
      } else if (region_ == Region::Body && top_sec_depth_ != 0 && depth == top_sec_depth_ + 1 &&
                 !section_title_seen_) {
        begin_capture(Capture::SectionTitle, depth);
        section_title_seen_ = true;
      }
      excluded_depth_ = 1;
      return;
    }
    if (is_excluded(name)) {
      if (p_depth_ == 0) flush();
      excluded_depth_ = 1;
      return;
    }
    if (name == "disp-formula") {
      para_ += ' ';
      para_ += kFormulaPlaceholder;
      para_ += ' ';
      excluded_depth_ = 1;
      return;
    }
    if (name == "break") {
      para_ += ' ';
      return;
    }
    if (name == "sec") {
      if (region_ == Region::Body && top_sec_depth_ == 0 && depth == region_depth_ + 1) {
        flush();
        article_.sections.emplace_back();
        top_sec_depth_ = depth;
        section_title_seen_ = false;
        loose_section_open_ = false;
      } else if (p_depth_ == 0) {
        flush();
      }
      return;
    }
    if (name == "p") {
      if (p_depth_ == 0) flush();
      ++p_depth_;
      return;
    }
    if (is_block(name) && p_depth_ == 0) flush();
  }

  void end(const XML_Char* name_c) {
    const std::string_view name(name_c);
    const std::size_t depth = stack_.size();

    if (capture_ != Capture::None && depth == capture_depth_) end_capture();

    if (nested_article_depth_ > 0) {
      if (name == "sub-article" || name == "response") --nested_article_depth_;
      stack_.pop_back();
      return;
    }
    if (excluded_depth_ > 0) {
      --excluded_depth_;
      stack_.pop_back();
      return;
    }

    if (region_ != Region::None && depth == region_depth_) {
      flush();
      finish_region();
    } else if (region_ != Region::None) {
      if (name == "p") {
        if (p_depth_ > 0) --p_depth_;
        if (p_depth_ == 0) flush();
      } else if (name == "sec") {
        if (depth == top_sec_depth_) {
          flush();
          top_sec_depth_ = 0;
        } else if (p_depth_ == 0) {
          flush();
        }
      } else if (is_block(name) && p_depth_ == 0) {
        flush();
      }
    }
    stack_.pop_back();
  }

  void text(const XML_Char* s, int len) {
    if (nested_article_depth_ > 0) return;
    if (capture_ != Capture::None) {
      capture_buf_.append(s, static_cast<std::size_t>(len));
      return;
    }
    if (region_ != Region::None && excluded_depth_ == 0) para_.append(s, static_cast<std::size_t>(len));
  }

  void set_parser(XML_Parser p) { parser_ = p; }
  const std::string& structural_error() const { return structural_error_; }

  RawArticle finish() {
    if (!saw_body_) throw StructuralError("missing <body> element");
    if (article_.journal.empty()) article_.journal = journal_id_;
    if (article_.article_id.empty()) article_.article_id = fallback_article_id_;
    return std::move(article_);
  }

 private:
  enum class Region { None, Abstract, Body };
  enum class Capture { None, JournalTitle, JournalId, ArticleId, AbstractTitle, SectionTitle };

  bool inside(std::string_view ancestor) const {
    return std::find(stack_.begin(), stack_.end(), ancestor) != stack_.end();
  }

  void start_metadata(std::string_view name, const XML_Char** attrs, std::size_t depth) {
    if (name == "journal-title" && inside("journal-meta") && article_.journal.empty()) {
      begin_capture(Capture::JournalTitle, depth);
    } else if (name == "journal-id" && journal_id_.empty()) {
      const char* type = attr(attrs, "journal-id-type");
      if (type != nullptr && (std::string_view(type) == "nlm-ta" ||
                              std::string_view(type) == "publisher-id")) {
        begin_capture(Capture::JournalId, depth);
      }
    } else if (name == "article-id" && inside("article-meta")) {
      const char* type = attr(attrs, "pub-id-type");
      article_id_is_doi_ = type != nullptr && std::string_view(type) == "doi";
      if (article_id_is_doi_ || fallback_article_id_.empty()) begin_capture(Capture::ArticleId, depth);
    } else if (name == "abstract" && inside("article-meta")) {
      region_ = Region::Abstract;
      region_depth_ = depth;
      const char* type = attr(attrs, "abstract-type");
      abstract_type_ = type != nullptr ? lower(type) : std::string();
      abstract_title_.clear();
      abstract_title_seen_ = false;
      abstract_paragraphs_.clear();
      p_depth_ = 0;
    } else if (name == "body" && depth == 2) {
      region_ = Region::Body;
      region_depth_ = depth;
      saw_body_ = true;
      p_depth_ = 0;
      top_sec_depth_ = 0;
      loose_section_open_ = false;
    }
  }

  void begin_capture(Capture c, std::size_t depth) {
    capture_ = c;
    capture_depth_ = depth;
    capture_buf_.clear();
  }

  void end_capture() {
    std::string value = collapse_whitespace(capture_buf_);
    switch (capture_) {
      case Capture::JournalTitle:
        article_.journal = value;
        break;
      case Capture::JournalId:
        journal_id_ = value;
        break;
      case Capture::ArticleId:
        if (article_id_is_doi_ && article_.article_id.empty()) article_.article_id = value;
        if (fallback_article_id_.empty()) fallback_article_id_ = value;
        break;
      case Capture::AbstractTitle:
        abstract_title_ = value;
        break;
      case Capture::SectionTitle:
        if (!article_.sections.empty()) article_.sections.back().title = value;
        break;
      case Capture::None:
        break;
    }
    capture_ = Capture::None;
    capture_depth_ = 0;
  }

  void flush() {
    std::string text = collapse_whitespace(para_);
    para_.clear();
    if (text.empty()) return;
    if (region_ == Region::Abstract) {
      abstract_paragraphs_.push_back(std::move(text));
    } else if (region_ == Region::Body) {
      if (top_sec_depth_ == 0 && !loose_section_open_) {
        article_.sections.emplace_back();
        loose_section_open_ = true;
      }
      article_.sections.back().paragraphs.push_back(std::move(text));
    }
  }

  static std::string join(const std::vector<std::string>& paragraphs) {
    std::string out;
    for (const auto& p : paragraphs) {
      if (!out.empty()) out += '\n';
      out += p;
    }
    return out;
  }

  void finish_region() {
    if (region_ == Region::Abstract) {
      const std::string title = lower(abstract_title_);
      bool summary = false;
      if (!title.empty()) {
        summary = title.find("author summary") != std::string::npos || title == "summary";
      } else {
        summary = abstract_type_.find("summary") != std::string::npos;
      }
      if (summary) {
        if (!article_.author_summary_text) article_.author_summary_text = join(abstract_paragraphs_);
      } else if (abstract_type_.empty() && !abstract_seen_) {
        article_.abstract_text = join(abstract_paragraphs_);
        abstract_seen_ = true;
      }
    }
    region_ = Region::None;
    region_depth_ = 0;
    p_depth_ = 0;
  }

  void stop() {
    if (parser_ != nullptr) XML_StopParser(parser_, XML_FALSE);
  }

  XML_Parser parser_ = nullptr;
  RawArticle article_;
  std::vector<std::string> stack_;
  std::string structural_error_;

  std::size_t nested_article_depth_ = 0;
  std::size_t excluded_depth_ = 0;
  std::size_t p_depth_ = 0;

  Region region_ = Region::None;
  std::size_t region_depth_ = 0;
  std::string para_;

  Capture capture_ = Capture::None;
  std::size_t capture_depth_ = 0;
  std::string capture_buf_;

  std::string journal_id_;
  std::string fallback_article_id_;
  bool article_id_is_doi_ = false;

  std::string abstract_type_;
  std::string abstract_title_;
  bool abstract_title_seen_ = false;
  bool abstract_seen_ = false;
  std::vector<std::string> abstract_paragraphs_;

  bool saw_body_ = false;
  std::size_t top_sec_depth_ = 0;
  bool section_title_seen_ = false;
  bool loose_section_open_ = false;
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

struct ParseAttempt {
  std::optional<RawArticle> article;
  XML_Error code = XML_ERROR_NONE;
  std::string message;
  std::size_t offset = 0;
};

ParseAttempt parse_once(std::string_view bytes) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate(nullptr));
  if (!parser) throw std::runtime_error("cannot allocate XML parser");
  JatsHandler handler;
  handler.set_parser(parser.get());
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(
      parser.get(),
      [](void* ud, const XML_Char* n, const XML_Char** a) { static_cast<JatsHandler*>(ud)->start(n, a); },
      [](void* ud, const XML_Char* n) { static_cast<JatsHandler*>(ud)->end(n); });
  XML_SetCharacterDataHandler(parser.get(), [](void* ud, const XML_Char* s, int len) {
    static_cast<JatsHandler*>(ud)->text(s, len);
  });

  ParseAttempt attempt;
  const auto status = XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (!handler.structural_error().empty()) throw StructuralError(handler.structural_error());
  if (status != XML_STATUS_OK) {
    attempt.code = XML_GetErrorCode(parser.get());
    attempt.offset = static_cast<std::size_t>(std::max<XML_Index>(0, XML_GetCurrentByteIndex(parser.get())));
    std::ostringstream msg;
    msg << "XML parse error at byte " << attempt.offset << " (line "
        << XML_GetCurrentLineNumber(parser.get()) << "): " << XML_ErrorString(attempt.code);
    attempt.message = msg.str();
    return attempt;
  }
  attempt.article = handler.finish();
  return attempt;
}

}  // namespace

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    std::size_t need = 0;
    if (b0 < 0x80) {
      ++i;
      continue;
    } else if (b0 >= 0xC2 && b0 <= 0xDF) {
      need = 1;
    } else if (b0 >= 0xE0 && b0 <= 0xEF) {
      need = 2;
    } else if (b0 >= 0xF0 && b0 <= 0xF4) {
      need = 3;
    } else {
      return false;
    }
    if (i + need >= bytes.size()) return false;
    for (std::size_t k = 1; k <= need; ++k) {
      if ((static_cast<unsigned char>(bytes[i + k]) & 0xC0) != 0x80) return false;
    }
    i += need + 1;
  }
  return true;
}

std::string sanitize_utf8(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    std::size_t need = 0;
    if (b0 < 0x80) {
      out.push_back(static_cast<char>(b0));
      ++i;
      continue;
    } else if (b0 >= 0xC2 && b0 <= 0xDF) {
      need = 1;
    } else if (b0 >= 0xE0 && b0 <= 0xEF) {
      need = 2;
    } else if (b0 >= 0xF0 && b0 <= 0xF4) {
      need = 3;
    } else {
      out += kReplacement;
      ++i;
      continue;
    }
    bool ok = i + need < bytes.size();
    for (std::size_t k = 1; ok && k <= need; ++k) {
      ok = (static_cast<unsigned char>(bytes[i + k]) & 0xC0) == 0x80;
    }
    if (ok) {
      out.append(bytes.substr(i, need + 1));
      i += need + 1;
    } else {
      out += kReplacement;
      ++i;
    }
  }
  return out;
}

RawArticle parse_article(std::string_view xml_bytes) {
  ParseAttempt attempt = parse_once(xml_bytes);
  if (!attempt.article && attempt.code == XML_ERROR_INVALID_TOKEN && !is_valid_utf8(xml_bytes)) {
    // Lossy fallback: retry once with invalid bytes replaced.
    const std::string cleaned = sanitize_utf8(xml_bytes);
    ParseAttempt retry = parse_once(cleaned);
    if (retry.article) return std::move(*retry.article);
  }
  if (!attempt.article) throw ParseError(attempt.message, attempt.offset);
  return std::move(*attempt.article);
}

ScanEntry parse_entry(const std::filesystem::path& path, std::string_view bytes) {
  try {
    RawArticle article = parse_article(bytes);
    if (article.article_id.empty()) article.article_id = path.stem().string();
    return {path, std::move(article)};
  } catch (const std::exception& e) {
    return {path, std::string(e.what())};
  }
}

CorpusScanner::CorpusScanner(const std::filesystem::path& root, std::string extension) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw std::runtime_error("input root is not a readable directory: " + root.string());
  }
  fs::recursive_directory_iterator it(root, fs::directory_options::none, ec);
  if (ec) throw std::runtime_error("cannot read directory " + root.string() + ": " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw std::runtime_error("cannot read directory " + root.string() + ": " + ec.message());
    std::error_code type_ec;
    if (it->is_regular_file(type_ec) && it->path().extension() == extension) {
      paths_.push_back(it->path());
    }
  }
  std::sort(paths_.begin(), paths_.end());
}

std::optional<std::string> CorpusScanner::read_file(const std::filesystem::path& path,
                                                    std::string& error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    error = "cannot open file";
    return std::nullopt;
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    error = "read failure";
    return std::nullopt;
  }
  return bytes;
}

std::optional<ScanEntry> CorpusScanner::next() {
  if (cursor_ >= paths_.size()) return std::nullopt;
  const auto& path = paths_[cursor_++];
  std::string error;
  auto bytes = read_file(path, error);
  if (!bytes) return ScanEntry{path, error};
  return parse_entry(path, *bytes);
}

}  // namespace absreuse
