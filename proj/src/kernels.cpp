#include "absreuse/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace absreuse {
namespace {

struct TermOverlap {
  std::uint64_t dot = 0;
  std::size_t shared = 0;
};

TermOverlap term_overlap(const SentenceFeatures& a, const SentenceFeatures& b) {
  TermOverlap out;
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  while (ia != a.terms.end() && ib != b.terms.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      out.dot += std::uint64_t{ia->second} * ib->second;
      ++out.shared;
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::size_t multiset_overlap(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return common;
}

double exact_features(const SentenceFeatures& a, const SentenceFeatures& b) {
  if (a.normalized.empty() || b.normalized.empty()) return 0.0;
  const auto& shorter = a.normalized.size() <= b.normalized.size() ? a.normalized : b.normalized;
  const auto& longer = a.normalized.size() <= b.normalized.size() ? b.normalized : a.normalized;
  return longer.find(shorter) != std::string::npos ? 1.0 : 0.0;
}

double cosine_from(const SentenceFeatures& a, const SentenceFeatures& b, const TermOverlap& ov) {
  if (a.terms.empty() || b.terms.empty()) return 0.0;
  return static_cast<double>(ov.dot) /
         std::sqrt(static_cast<double>(a.term_norm2) * static_cast<double>(b.term_norm2));
}

double dice_from(const SentenceFeatures& a, const SentenceFeatures& b, const TermOverlap& ov) {
  const std::size_t denom = a.terms.size() + b.terms.size();
  if (denom == 0) return 0.0;
  return 2.0 * static_cast<double>(ov.shared) / static_cast<double>(denom);
}

double jaccard_from(const SentenceFeatures& a, const SentenceFeatures& b, const TermOverlap& ov,
                    bool empty_is_one) {
  const std::size_t uni = a.terms.size() + b.terms.size() - ov.shared;
  if (uni == 0) return empty_is_one ? 1.0 : 0.0;
  return static_cast<double>(ov.shared) / static_cast<double>(uni);
}

double levenshtein_features(const SentenceFeatures& a, const SentenceFeatures& b) {
  const std::size_t d = edit_distance<std::uint32_t>(a.tokens, b.tokens);
  return levenshtein_similarity(d, a.tokens.size(), b.tokens.size());
}

// Everything except Levenshtein, which is the only measure needing a DP.
SimilarityScore cheap_measures(const SentenceFeatures& a, const SentenceFeatures& b, const MatchConfig& cfg) {
  SimilarityScore s;
  const TermOverlap ov = term_overlap(a, b);
  if (cfg.measures.contains(Measure::Exact)) s.exact = exact_features(a, b);
  if (cfg.measures.contains(Measure::Cosine)) s.cosine = cosine_from(a, b, ov);
  if (cfg.measures.contains(Measure::Dice)) s.dice = dice_from(a, b, ov);
  if (cfg.measures.contains(Measure::Jaccard)) s.jaccard = jaccard_from(a, b, ov, cfg.jaccard_empty_is_one);
  return s;
}

// Lev >= max(la, lb) - |tokens(a) ∩ tokens(b)| and Lev >= |la - lb|.
double levenshtein_upper_bound(const SentenceFeatures& a, const SentenceFeatures& b) {
  const std::size_t la = a.tokens.size();
  const std::size_t lb = b.tokens.size();
  const std::size_t longest = std::max(la, lb);
  if (longest == 0) return 1.0;
  if (la == 0 || lb == 0) return 0.0;
  const std::size_t common = multiset_overlap(a.sorted_tokens, b.sorted_tokens);
  const std::size_t shortest = std::min(la, lb);
  return static_cast<double>(std::min(common, shortest)) / static_cast<double>(longest);
}

void fold_max(SentenceMatch& acc, const SimilarityScore& s, std::size_t body_index, const MatchConfig& cfg,
              bool& first) {
  for (Measure m : cfg.measures.members()) {
    const double v = *s.get(m);
    const auto cur = acc.score.get(m);
    if (!cur || v > *cur) acc.score.set(m, v);
  }
  if (first || s.max > acc.score.max) {
    acc.score.max = s.max;
    acc.body_index = body_index;
    first = false;
  }
}

SentenceMatch empty_match(const MatchConfig& cfg) {
  SentenceMatch m;
  for (Measure measure : cfg.measures.members()) m.score.set(measure, 0.0);
  m.score.max = 0.0;
  return m;
}

}  // namespace

std::uint32_t TokenInterner::intern(const std::string& token) {
  auto [it, inserted] = ids_.try_emplace(token, static_cast<std::uint32_t>(ids_.size()));
  return it->second;
}

SentenceFeatures make_features(const Sentence& sentence, TokenInterner& interner) {
  SentenceFeatures f;
  f.normalized = normalize_for_matching(sentence.text);
  f.tokens.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens) f.tokens.push_back(interner.intern(t));
  f.sorted_tokens = f.tokens;
  std::sort(f.sorted_tokens.begin(), f.sorted_tokens.end());
  f.terms.reserve(sentence.terms.size());
  for (const auto& [term, count] : sentence.terms) {
    f.terms.emplace_back(interner.intern(term), count);
    f.term_norm2 += std::uint64_t{count} * count;
  }
  std::sort(f.terms.begin(), f.terms.end());
  return f;
}

SimilarityScore score_features(const SentenceFeatures& a, const SentenceFeatures& b, const MatchConfig& cfg) {
  SimilarityScore s = cheap_measures(a, b, cfg);
  if (cfg.measures.contains(Measure::Levenshtein)) s.levenshtein = levenshtein_features(a, b);
  s.recompute_max();
  return s;
}

std::optional<SimilarityScore> score_features_pruned(const SentenceFeatures& a, const SentenceFeatures& b,
                                                     const MatchConfig& cfg, double floor) {
  SimilarityScore s = cheap_measures(a, b, cfg);
  s.recompute_max();
  if (cfg.measures.contains(Measure::Levenshtein)) {
    if (s.max < floor && levenshtein_upper_bound(a, b) < floor) return std::nullopt;
    s.levenshtein = levenshtein_features(a, b);
    s.recompute_max();
  } else if (s.max < floor) {
    return std::nullopt;
  }
  return s;
}

double pruning_floor(const MatchConfig& cfg) { return std::min(cfg.threshold, kBandFloor); }

ArticleMatches match_article_reference(std::span<const Sentence> abstract, std::span<const Sentence> summary,
                                       std::span<const Sentence> body, const MatchConfig& cfg) {
  if (body.empty()) throw std::invalid_argument("match_article: empty body");
  ArticleMatches out;
  out.body_matched.assign(body.size(), 0);
  for (std::size_t i = 0; i < abstract.size(); ++i) {
    const SentenceMax best = abstract_sentence_max(abstract[i], body, cfg);
    out.abstract.push_back({best.score, best.body_index});
    for (std::size_t j = 0; j < body.size(); ++j) {
      const SimilarityScore s = score_pair(abstract[i], body[j], cfg);
      if (is_match(s, cfg)) {
        out.pairs.push_back({i, j, s});
        out.body_matched[j] = 1;
      }
    }
  }
  for (const auto& sentence : summary) {
    const SentenceMax best = abstract_sentence_max(sentence, body, cfg);
    out.summary.push_back({best.score, best.body_index});
  }
  return out;
}

ArticleMatches match_article_parallel(std::span<const Sentence> abstract, std::span<const Sentence> summary,
                                      std::span<const Sentence> body, const MatchConfig& cfg) {
  if (body.empty()) throw std::invalid_argument("match_article: empty body");

  TokenInterner interner;
  std::vector<SentenceFeatures> body_f;
  body_f.reserve(body.size());
  for (const auto& s : body) body_f.push_back(make_features(s, interner));
  std::vector<SentenceFeatures> row_f;
  row_f.reserve(abstract.size() + summary.size());
  for (const auto& s : abstract) row_f.push_back(make_features(s, interner));
  for (const auto& s : summary) row_f.push_back(make_features(s, interner));

  const double floor = pruning_floor(cfg);
  const auto rows = static_cast<std::int64_t>(row_f.size());
  const std::size_t n_abstract = abstract.size();
  std::vector<SentenceMatch> row_best(row_f.size(), empty_match(cfg));
  std::vector<std::vector<PairMatch>> row_pairs(row_f.size());

  const bool go_parallel = !omp_in_parallel() && rows > 1 && body.size() * row_f.size() >= 256;
#pragma omp parallel for schedule(dynamic, 1) if (go_parallel)
  for (std::int64_t r = 0; r < rows; ++r) {
    const auto row = static_cast<std::size_t>(r);
    SentenceMatch best = empty_match(cfg);
    bool first = true;
    for (std::size_t j = 0; j < body_f.size(); ++j) {
      const auto s = score_features_pruned(row_f[row], body_f[j], cfg, floor);
      if (!s) continue;
      fold_max(best, *s, j, cfg, first);
      if (row < n_abstract && is_match(*s, cfg)) row_pairs[row].push_back({row, j, *s});
    }
    row_best[row] = best;
  }

  ArticleMatches out;
  out.body_matched.assign(body.size(), 0);
  out.abstract.assign(row_best.begin(), row_best.begin() + static_cast<std::ptrdiff_t>(n_abstract));
  out.summary.assign(row_best.begin() + static_cast<std::ptrdiff_t>(n_abstract), row_best.end());
  for (std::size_t row = 0; row < n_abstract; ++row) {
    for (auto& p : row_pairs[row]) {
      out.body_matched[p.body_index] = 1;
      out.pairs.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace absreuse
