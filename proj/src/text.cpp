#include "absreuse/text.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace absreuse {
namespace {

bool is_ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Decodes one UTF-8 code point starting at `pos`. Invalid sequences decode
// to U+FFFD and consume one byte.
char32_t decode_utf8(std::string_view s, std::size_t pos, std::size_t& len) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    len = 1;
    return b0;
  }
  std::size_t need = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3;
    cp = b0 & 0x07;
  } else {
    len = 1;
    return 0xFFFD;
  }
  if (pos + need >= s.size()) {
    len = 1;
    return 0xFFFD;
  }
  for (std::size_t i = 1; i <= need; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      len = 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  len = need + 1;
  return cp;
}

// Non-ASCII code points that act as separators: Latin-1 punctuation,
// general punctuation, arrows/math/technical symbols, CJK punctuation, BOM.
bool is_unicode_separator(char32_t cp) {
  return (cp >= 0x00A0 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
         (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x2190 && cp <= 0x2BFF) ||
         (cp >= 0x3000 && cp <= 0x303F) || cp == 0xFEFF || cp == 0xFFFD;
}

bool is_closing(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool is_opening(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

const std::set<std::string, std::less<>>& abbreviations() {
  static const std::set<std::string, std::less<>> kAbbrev = {
      "al.",     "fig.",  "figs.", "eq.",    "eqs.",   "ref.",  "refs.", "vs.",
      "cf.",     "approx.", "ca.", "dr.",    "prof.",  "mr.",   "mrs.",  "ms.",
      "st.",     "no.",   "nos.",  "vol.",   "pp.",    "sp.",   "spp.",  "var.",
      "subsp.",  "resp.", "incl.", "tab.",   "suppl.", "inc.",  "ltd.",  "co.",
      "jan.",    "feb.",  "mar.",  "apr.",   "jun.",   "jul.",  "aug.",  "sep.",
      "sept.",   "oct.",  "nov.",  "dec.",   "sec.",   "chap.", "ed.",   "eds.",
      "min.",    "max.",  "avg.",  "est.",   "dept.",  "univ.", "viz.",  "sq.",
  };
  return kAbbrev;
}

// Letter-dot runs such as "J.", "e.g." or "U.S.".
bool is_initialism(std::string_view word) {
  if (word.size() < 2 || word.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < word.size(); i += 2) {
    if (!std::isalpha(static_cast<unsigned char>(word[i])) || word[i + 1] != '.') return false;
  }
  return true;
}

bool is_abbreviation(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !is_ascii_space(static_cast<unsigned char>(text[begin - 1]))) --begin;
  while (begin < dot && is_opening(text[begin])) ++begin;
  std::string word(text.substr(begin, dot - begin + 1));
  std::transform(word.begin(), word.end(), word.begin(), ascii_lower);
  return is_initialism(word) || abbreviations().count(word) > 0;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_ascii_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_ascii_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Span {
  std::size_t begin;
  std::size_t end;
};

// Candidate boundaries: [.!?] + optional closers + whitespace + optional
// openers + uppercase letter or digit, minus guarded abbreviations.
std::vector<Span> raw_segments(std::string_view text) {
  std::vector<Span> out;
  std::size_t start = 0;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    while (j < n && is_closing(text[j])) ++j;
    if (j >= n || !is_ascii_space(static_cast<unsigned char>(text[j]))) continue;
    std::size_t k = j;
    while (k < n && is_ascii_space(static_cast<unsigned char>(text[k]))) ++k;
    std::size_t m = k;
    while (m < n && is_opening(text[m])) ++m;
    if (m >= n) continue;
    const auto next = static_cast<unsigned char>(text[m]);
    if (!(std::isupper(next) || std::isdigit(next))) continue;
    if (c == '.' && is_abbreviation(text, i)) continue;
    out.push_back({start, j});
    start = k;
    i = k - 1;
  }
  if (start < n) out.push_back({start, n});
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = 1;
    const char32_t cp = decode_utf8(text, pos, len);
    bool token_char = false;
    if (cp < 0x80) {
      token_char = std::isalnum(static_cast<unsigned char>(cp)) != 0;
    } else {
      token_char = !is_unicode_separator(cp);
    }
    if (token_char) {
      if (cp < 0x80) {
        current.push_back(ascii_lower(static_cast<char>(cp)));
      } else {
        current.append(text.substr(pos, len));
      }
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
    pos += len;
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TermVector term_vector(std::span<const std::string> tokens, const StopWordList& stops) {
  TermVector terms;
  for (const auto& t : tokens) {
    if (!stops.contains(t)) ++terms[t];
  }
  return terms;
}

Sentence make_sentence(std::string text, const StopWordList& stops) {
  Sentence s;
  s.tokens = tokenize(text);
  s.terms = term_vector(s.tokens, stops);
  s.char_len = text.size();
  s.word_len = s.tokens.size();
  s.text = std::move(text);
  return s;
}

std::vector<std::string> split_sentence_texts(std::string_view text, const SegmenterOptions& opts) {
  std::vector<Span> merged;
  std::optional<std::size_t> carry;  // start of a short leading fragment
  for (auto seg : raw_segments(text)) {
    if (carry) {
      seg.begin = *carry;
      carry.reset();
    }
    const std::size_t ntok = tokenize(text.substr(seg.begin, seg.end - seg.begin)).size();
    if (ntok >= opts.min_tokens) {
      merged.push_back(seg);
    } else if (!merged.empty()) {
      merged.back().end = seg.end;
    } else {
      carry = seg.begin;
    }
  }
  // A short fragment with nothing to attach to is kept on its own.
  if (carry) merged.push_back({*carry, text.size()});

  std::vector<std::string> out;
  out.reserve(merged.size());
  for (const auto& seg : merged) {
    auto piece = trim(text.substr(seg.begin, seg.end - seg.begin));
    if (!tokenize(piece).empty()) out.emplace_back(piece);
  }
  return out;
}

std::vector<Sentence> split_sentences(std::string_view text, const StopWordList& stops,
                                      const SegmenterOptions& opts) {
  std::vector<Sentence> out;
  for (auto& piece : split_sentence_texts(text, opts)) {
    out.push_back(make_sentence(std::move(piece), stops));
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_ascii_space(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string normalize_for_matching(std::string_view text) {
  std::string out = collapse_whitespace(text);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

}  // namespace absreuse
