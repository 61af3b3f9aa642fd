#include "absreuse/imrad.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "absreuse/fnv.hpp"

namespace absreuse {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool word_start(std::string_view text, std::size_t pos) {
  return pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1]));
}

std::vector<Sentence> segment_paragraphs(std::string_view text, const StopWordList& stops,
                                         const SegmenterOptions& seg) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    for (auto& s : split_sentences(text.substr(start, nl - start), stops, seg)) {
      out.push_back(std::move(s));
    }
    start = nl + 1;
  }
  return out;
}

StructuredArticle reorder(const StructuredArticle& article) {
  StructuredArticle out = article;
  out.sections.clear();
  for (SectionLabel label : kImradOrder) {
    for (const auto& section : article.sections) {
      if (section.label == label) out.sections.push_back(section);
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(SectionLabel label) {
  switch (label) {
    case SectionLabel::Introduction: return "Introduction";
    case SectionLabel::Methods: return "Methods";
    case SectionLabel::Results: return "Results";
    case SectionLabel::Discussion: return "Discussion";
    case SectionLabel::Other: return "Other";
  }
  return "Other";
}

std::string_view short_name(SectionLabel label) {
  switch (label) {
    case SectionLabel::Introduction: return "I";
    case SectionLabel::Methods: return "M";
    case SectionLabel::Results: return "R";
    case SectionLabel::Discussion: return "D";
    case SectionLabel::Other: return "O";
  }
  return "O";
}

std::optional<SectionLabel> parse_label(std::string_view text) {
  const std::string l = lower(text);
  if (l == "introduction" || l == "i") return SectionLabel::Introduction;
  if (l == "methods" || l == "m") return SectionLabel::Methods;
  if (l == "results" || l == "r") return SectionLabel::Results;
  if (l == "discussion" || l == "d") return SectionLabel::Discussion;
  if (l == "other" || l == "o") return SectionLabel::Other;
  return std::nullopt;
}

TitleClassifier::TitleClassifier() {
  keywords_ = {
      {"introduction", SectionLabel::Introduction},
      {"background", SectionLabel::Introduction},
      {"method", SectionLabel::Methods},
      {"materials", SectionLabel::Methods},
      {"procedure", SectionLabel::Methods},
      {"experimental", SectionLabel::Methods},
      {"result", SectionLabel::Results},
      {"finding", SectionLabel::Results},
      {"discussion", SectionLabel::Discussion},
      {"conclusion", SectionLabel::Discussion},
  };
}

const TitleClassifier& TitleClassifier::builtin() {
  static const TitleClassifier classifier;
  return classifier;
}

TitleClassifier TitleClassifier::with_overrides(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read title map: " + path.string());
  TitleClassifier classifier;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected keyword<TAB>label");
    }
    auto label = parse_label(line.substr(tab + 1));
    if (!label) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": unknown label '" +
                               line.substr(tab + 1) + "'");
    }
    classifier.set(line.substr(0, tab), *label);
  }
  return classifier;
}

void TitleClassifier::set(std::string keyword, SectionLabel label) {
  keywords_[lower(keyword)] = label;
}

SectionLabel TitleClassifier::classify(std::string_view title) const {
  const std::string text = lower(title);
  std::size_t best_pos = std::string::npos;
  std::size_t best_len = 0;
  SectionLabel best = SectionLabel::Other;
  for (const auto& [keyword, label] : keywords_) {
    if (keyword.empty()) continue;
    for (auto pos = text.find(keyword); pos != std::string::npos; pos = text.find(keyword, pos + 1)) {
      if (!word_start(text, pos)) continue;
      if (pos < best_pos || (pos == best_pos && keyword.size() > best_len)) {
        best_pos = pos;
        best_len = keyword.size();
        best = label;
      }
      break;
    }
  }
  return best;
}

std::string TitleClassifier::fingerprint() const {
  std::string joined;
  for (const auto& [keyword, label] : keywords_) {
    joined += keyword;
    joined += '\t';
    joined += to_string(label);
    joined += '\n';
  }
  return hex64(fnv1a64(joined));
}

SectionLabel classify_section(std::string_view title) { return TitleClassifier::builtin().classify(title); }

std::size_t StructuredArticle::body_sentence_count() const {
  std::size_t n = 0;
  for (const auto& s : sections) n += s.sentences.size();
  return n;
}

bool contains_full_imrad(std::span<const Section> sections) {
  for (SectionLabel label : kImradOrder) {
    const bool present = std::any_of(sections.begin(), sections.end(),
                                     [label](const Section& s) { return s.label == label; });
    if (!present) return false;
  }
  return true;
}

StructuredArticle structure_article(const RawArticle& raw, const TitleClassifier& classifier,
                                    const StopWordList& stops, const SegmenterOptions& seg) {
  StructuredArticle out;
  out.article_id = raw.article_id;
  out.journal = raw.journal;
  out.abstract = segment_paragraphs(raw.abstract_text, stops, seg);
  if (raw.author_summary_text) out.author_summary = segment_paragraphs(*raw.author_summary_text, stops, seg);
  for (const auto& rs : raw.sections) {
    Section section;
    section.title = rs.title;
    section.label = classifier.classify(rs.title);
    for (const auto& paragraph : rs.paragraphs) {
      for (auto& s : split_sentences(paragraph, stops, seg)) section.sentences.push_back(std::move(s));
    }
    out.sections.push_back(std::move(section));
  }
  out.has_full_imrad = contains_full_imrad(out.sections);
  return out;
}

StructuredArticle canonicalize(const StructuredArticle& article) {
  if (!article.has_full_imrad) {
    throw ContractError("canonicalize: article '" + article.article_id + "' lacks a full IMRaD structure");
  }
  return reorder(article);
}

StructuredArticle canonicalize_partial(const StructuredArticle& article) { return reorder(article); }

double normalized_position(std::size_t sentence_index, std::size_t total_sentences) {
  if (total_sentences == 0 || sentence_index >= total_sentences) {
    throw ContractError("normalized_position: index " + std::to_string(sentence_index) +
                        " out of range for " + std::to_string(total_sentences) + " sentences");
  }
  return (static_cast<double>(sentence_index) + 0.5) / static_cast<double>(total_sentences);
}

BoundaryCounts section_boundary_counts(const StructuredArticle& canonical) {
  std::array<std::size_t, 4> per_label{};
  SectionLabel previous = SectionLabel::Introduction;
  for (const auto& section : canonical.sections) {
    if (section.label == SectionLabel::Other || section.label < previous) {
      throw ContractError("section_boundaries: article is not in canonical order");
    }
    previous = section.label;
    per_label[static_cast<std::size_t>(section.label)] += section.sentences.size();
  }
  BoundaryCounts counts;
  counts.cumulative[0] = per_label[0];
  counts.cumulative[1] = per_label[0] + per_label[1];
  counts.cumulative[2] = per_label[0] + per_label[1] + per_label[2];
  counts.total = counts.cumulative[2] + per_label[3];
  return counts;
}

std::array<double, 3> section_boundaries(const StructuredArticle& canonical) {
  const BoundaryCounts counts = section_boundary_counts(canonical);
  if (counts.total == 0) throw ContractError("section_boundaries: article has no labelled sentences");
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = static_cast<double>(counts.cumulative[i]) / static_cast<double>(counts.total);
  }
  return out;
}

}  // namespace absreuse
