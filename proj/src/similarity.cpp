#include "absreuse/similarity.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace absreuse {

std::string_view measure_code(Measure m) {
  switch (m) {
    case Measure::Exact: return "E";
    case Measure::Cosine: return "C";
    case Measure::Levenshtein: return "L";
    case Measure::Dice: return "Dice";
    case Measure::Jaccard: return "Jaccard";
  }
  return "?";
}

std::string_view measure_row_label(Measure m) {
  switch (m) {
    case Measure::Exact: return "SIM_E";
    case Measure::Cosine: return "SIM_C";
    case Measure::Levenshtein: return "SIM_L";
    case Measure::Dice: return "SIM_Dice";
    case Measure::Jaccard: return "SIM_Jaccard";
  }
  return "?";
}

MeasureSet MeasureSet::parse(std::string_view text) {
  MeasureSet set;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view raw = text.substr(start, comma - start);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    std::string item(raw);
    for (auto& c : item) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (item == "e" || item == "exact") {
      set = set.with(Measure::Exact);
    } else if (item == "c" || item == "cosine") {
      set = set.with(Measure::Cosine);
    } else if (item == "l" || item == "levenshtein") {
      set = set.with(Measure::Levenshtein);
    } else if (item == "dice" || item == "d") {
      set = set.with(Measure::Dice);
    } else if (item == "jaccard" || item == "j") {
      set = set.with(Measure::Jaccard);
    } else if (!item.empty()) {
      throw std::invalid_argument("unknown similarity measure '" + item + "'");
    }
    start = comma + 1;
  }
  if (set.empty()) throw std::invalid_argument("no similarity measure selected");
  return set;
}

std::vector<Measure> MeasureSet::members() const {
  std::vector<Measure> out;
  for (std::size_t i = 0; i < kMeasureCount; ++i) {
    const auto m = static_cast<Measure>(i);
    if (contains(m)) out.push_back(m);
  }
  return out;
}

std::string MeasureSet::to_string() const {
  std::string out;
  for (Measure m : members()) {
    if (!out.empty()) out += ',';
    out += measure_code(m);
  }
  return out;
}

void MatchConfig::validate() const {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("threshold must satisfy 0 < T <= 1");
  }
  if (measures.empty()) throw std::invalid_argument("at least one similarity measure must be enabled");
}

std::optional<double> SimilarityScore::get(Measure m) const {
  switch (m) {
    case Measure::Exact: return exact;
    case Measure::Cosine: return cosine;
    case Measure::Levenshtein: return levenshtein;
    case Measure::Dice: return dice;
    case Measure::Jaccard: return jaccard;
  }
  return std::nullopt;
}

void SimilarityScore::set(Measure m, double value) {
  switch (m) {
    case Measure::Exact: exact = value; break;
    case Measure::Cosine: cosine = value; break;
    case Measure::Levenshtein: levenshtein = value; break;
    case Measure::Dice: dice = value; break;
    case Measure::Jaccard: jaccard = value; break;
  }
}

void SimilarityScore::recompute_max() {
  max = 0.0;
  for (auto v : {exact, cosine, levenshtein, dice, jaccard}) {
    if (v) max = std::max(max, *v);
  }
}

double sim_exact(const Sentence& a, const Sentence& b) {
  const std::string na = normalize_for_matching(a.text);
  const std::string nb = normalize_for_matching(b.text);
  if (na.empty() || nb.empty()) return 0.0;
  const std::string& shorter = na.size() <= nb.size() ? na : nb;
  const std::string& longer = na.size() <= nb.size() ? nb : na;
  return longer.find(shorter) != std::string::npos ? 1.0 : 0.0;
}

double sim_cosine(const Sentence& a, const Sentence& b) {
  if (a.terms.empty() || b.terms.empty()) return 0.0;
  std::uint64_t dot = 0;
  std::uint64_t na = 0;
  std::uint64_t nb = 0;
  for (const auto& [term, count] : a.terms) {
    na += std::uint64_t{count} * count;
    if (auto it = b.terms.find(term); it != b.terms.end()) dot += std::uint64_t{count} * it->second;
  }
  for (const auto& [term, count] : b.terms) nb += std::uint64_t{count} * count;
  return static_cast<double>(dot) / std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
}

double sim_levenshtein(const Sentence& a, const Sentence& b) {
  const std::size_t d = edit_distance<std::string>(a.tokens, b.tokens);
  return levenshtein_similarity(d, a.tokens.size(), b.tokens.size());
}

namespace {

std::size_t term_set_overlap(const TermVector& a, const TermVector& b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return common;
}

}  // namespace

double sim_dice(const Sentence& a, const Sentence& b) {
  const std::size_t denom = a.terms.size() + b.terms.size();
  if (denom == 0) return 0.0;
  return 2.0 * static_cast<double>(term_set_overlap(a.terms, b.terms)) / static_cast<double>(denom);
}

double sim_jaccard(const Sentence& a, const Sentence& b, bool empty_is_one) {
  const std::size_t common = term_set_overlap(a.terms, b.terms);
  const std::size_t uni = a.terms.size() + b.terms.size() - common;
  if (uni == 0) return empty_is_one ? 1.0 : 0.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

SimilarityScore score_pair(const Sentence& a, const Sentence& b, const MatchConfig& cfg) {
  SimilarityScore s;
  if (cfg.measures.contains(Measure::Exact)) s.exact = sim_exact(a, b);
  if (cfg.measures.contains(Measure::Cosine)) s.cosine = sim_cosine(a, b);
  if (cfg.measures.contains(Measure::Levenshtein)) s.levenshtein = sim_levenshtein(a, b);
  if (cfg.measures.contains(Measure::Dice)) s.dice = sim_dice(a, b);
  if (cfg.measures.contains(Measure::Jaccard)) s.jaccard = sim_jaccard(a, b, cfg.jaccard_empty_is_one);
  s.recompute_max();
  return s;
}

SentenceMax abstract_sentence_max(const Sentence& abstract_sentence, std::span<const Sentence> body,
                                  const MatchConfig& cfg) {
  if (body.empty()) throw std::invalid_argument("abstract_sentence_max: empty body");
  SentenceMax out;
  bool first = true;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const SimilarityScore s = score_pair(abstract_sentence, body[i], cfg);
    for (Measure m : cfg.measures.members()) {
      const double v = *s.get(m);
      const auto cur = out.score.get(m);
      if (!cur || v > *cur) out.score.set(m, v);
    }
    if (first || s.max > out.score.max) {
      out.score.max = s.max;
      out.body_index = i;
      first = false;
    }
  }
  return out;
}

bool is_match(const SimilarityScore& score, const MatchConfig& cfg) { return score.max >= cfg.threshold; }

int similarity_band(double value) {
  if (value >= 1.0) return 0;
  if (value >= 0.8) return 1;
  if (value >= 0.6) return 2;
  return 3;
}

}  // namespace absreuse
