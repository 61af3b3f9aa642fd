#include "absreuse/analytics.hpp"

#include <algorithm>

#include "absreuse/kernels.hpp"

namespace absreuse {
namespace {

double percent(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return 0.0;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::size_t match_count_band(std::size_t matched) {
  if (matched == 0) return 0;
  if (matched == 1) return 1;
  if (matched <= 3) return 2;
  return 3;
}

// Half-open quarters on matched / length, compared in integers.
std::size_t reuse_fraction_band(std::size_t matched, std::size_t length) {
  if (matched == 0) return 0;
  if (4 * matched <= length) return 1;
  if (4 * matched <= 2 * length) return 2;
  if (4 * matched <= 3 * length) return 3;
  return 4;
}

void add_bands(BandTable& table, const std::vector<SimilarityScore>& scores, MeasureSet measures) {
  for (const auto& s : scores) {
    for (Measure m : measures.members()) {
      const auto v = s.get(m);
      if (v) ++table[static_cast<std::size_t>(m)].counts[static_cast<std::size_t>(similarity_band(*v))];
    }
    ++table[kMaxRow].counts[static_cast<std::size_t>(similarity_band(s.max))];
  }
}

template <typename Map>
void merge_counts(Map& into, const Map& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

template <std::size_t N>
void add_arrays(std::array<std::uint64_t, N>& into, const std::array<std::uint64_t, N>& from) {
  for (std::size_t i = 0; i < N; ++i) into[i] += from[i];
}

// Sum of count * (num / den) in key order, divided by the total count.
std::optional<double> ratio_mean(const RatioMultiset& ms) {
  std::uint64_t n = 0;
  double sum = 0.0;
  for (const auto& [key, count] : ms) {
    sum += static_cast<double>(count) * (static_cast<double>(key.first) / static_cast<double>(key.second));
    n += count;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

std::string_view to_string(PositionalScope scope) {
  return scope == PositionalScope::FullImradOnly ? "full-imrad" : "all";
}

std::string_view to_string(PositionalMode mode) {
  return mode == PositionalMode::Pooled ? "pooled" : "article-mean";
}

void AnalysisConfig::validate() const {
  match.validate();
  if (bins < 20) throw std::invalid_argument("bins must be at least 20");
}

std::size_t position_bin(std::size_t index, std::size_t total, std::size_t bins) {
  if (index >= total) throw ContractError("position_bin: index out of range");
  // floor(((index + 0.5) / total) * bins) without rounding error.
  const std::size_t bin = ((2 * index + 1) * bins) / (2 * total);
  return std::min(bin, bins - 1);
}

ArticleResult analyze_article(const StructuredArticle& article, const AnalysisConfig& cfg) {
  if (article.abstract.empty()) throw ArticleSkipped("empty abstract");

  std::vector<Sentence> body;
  std::vector<SectionLabel> labels;
  body.reserve(article.body_sentence_count());
  for (const auto& section : article.sections) {
    for (const auto& s : section.sentences) {
      body.push_back(s);
      labels.push_back(section.label);
    }
  }
  if (body.empty()) throw ArticleSkipped("empty body");

  std::span<const Sentence> summary;
  if (article.author_summary) summary = *article.author_summary;

  const ArticleMatches matches = cfg.kernel == KernelChoice::Parallel
                                     ? match_article_parallel(article.abstract, summary, body, cfg.match)
                                     : match_article_reference(article.abstract, summary, body, cfg.match);

  ArticleResult r;
  r.article_id = article.article_id;
  r.journal = article.journal;
  r.abstract_len = article.abstract.size();
  r.body_sentences = body.size();
  for (const auto& s : article.abstract) r.abstract_words += s.word_len;
  for (const auto& m : matches.abstract) {
    r.abstract_max.push_back(m.score);
    if (is_match(m.score, cfg.match)) ++r.matched_abstract_sentences;
  }
  if (!summary.empty()) {
    r.summary_len = summary.size();
    for (const auto& s : summary) r.summary_words += s.word_len;
    for (const auto& m : matches.summary) {
      r.summary_max.push_back(m.score);
      if (is_match(m.score, cfg.match)) ++r.matched_summary_sentences;
    }
  }
  r.matched_body_sentences =
      static_cast<std::size_t>(std::count(matches.body_matched.begin(), matches.body_matched.end(), 1));

  r.full_imrad = article.has_full_imrad;
  if (r.full_imrad) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (labels[i] == SectionLabel::Other) continue;
      const auto l = static_cast<std::size_t>(labels[i]);
      ++r.section_total[l];
      if (matches.body_matched[i]) ++r.section_matched[l];
    }
  }

  // Canonical index of each labelled body sentence, stable within a label.
  std::vector<std::optional<std::size_t>> canonical(body.size());
  r.positional = r.full_imrad || cfg.scope == PositionalScope::AllArticles;
  if (r.positional) {
    const StructuredArticle ordered = r.full_imrad ? canonicalize(article) : canonicalize_partial(article);
    r.boundaries = section_boundary_counts(ordered);
    std::size_t next = 0;
    for (SectionLabel label : kImradOrder) {
      for (std::size_t i = 0; i < body.size(); ++i) {
        if (labels[i] == label) canonical[i] = next++;
      }
    }
    r.positional_total = next;
    if (r.positional_total == 0) {
      r.positional = false;
    } else {
      for (std::size_t i = 0; i < body.size(); ++i) {
        if (canonical[i] && matches.body_matched[i]) r.positional_matched.push_back(*canonical[i]);
      }
      std::sort(r.positional_matched.begin(), r.positional_matched.end());
      for (std::size_t idx : r.positional_matched) {
        r.matched_positions.push_back(normalized_position(idx, r.positional_total));
      }
    }
  }

  for (const auto& p : matches.pairs) {
    MatchRecord rec;
    rec.abstract_sentence_index = p.abstract_index;
    rec.body_sentence_index = p.body_index;
    rec.section_label = labels[p.body_index];
    if (r.positional && canonical[p.body_index]) {
      rec.body_normalized_position = normalized_position(*canonical[p.body_index], r.positional_total);
    }
    rec.score = p.score;
    r.matches.push_back(std::move(rec));
  }
  return r;
}

JournalAggregate::JournalAggregate(std::size_t bins)
    : bin_matched(bins, 0), bin_total(bins, 0), bin_article_rates(bins) {}

void JournalAggregate::merge(const JournalAggregate& o) {
  articles += o.articles;
  articles_with_summary += o.articles_with_summary;
  full_imrad_articles += o.full_imrad_articles;
  body_sentences += o.body_sentences;
  abstract_sentences += o.abstract_sentences;
  summary_sentences += o.summary_sentences;
  abstract_words += o.abstract_words;
  summary_words += o.summary_words;
  matched_abstract_sentences += o.matched_abstract_sentences;
  matched_summary_sentences += o.matched_summary_sentences;
  for (std::size_t i = 0; i < abstract_bands.size(); ++i) {
    add_arrays(abstract_bands[i].counts, o.abstract_bands[i].counts);
    add_arrays(summary_bands[i].counts, o.summary_bands[i].counts);
  }
  add_arrays(match_count_bands, o.match_count_bands);
  add_arrays(reuse_fraction_bands, o.reuse_fraction_bands);
  add_arrays(section_matched, o.section_matched);
  add_arrays(section_total, o.section_total);
  positional_articles += o.positional_articles;
  if (bin_total.size() != o.bin_total.size()) throw std::invalid_argument("merge: bin count mismatch");
  for (std::size_t b = 0; b < bin_total.size(); ++b) {
    bin_matched[b] += o.bin_matched[b];
    bin_total[b] += o.bin_total[b];
    merge_counts(bin_article_rates[b], o.bin_article_rates[b]);
  }
  for (std::size_t k = 0; k < boundaries.size(); ++k) merge_counts(boundaries[k], o.boundaries[k]);
  merge_counts(abstract_length_hist, o.abstract_length_hist);
  merge_counts(summary_length_hist, o.summary_length_hist);
}

AggregateConfig AggregateConfig::from(const AnalysisConfig& cfg) {
  return {cfg.bins, cfg.match.threshold, cfg.match.measures, cfg.scope};
}

CorpusAggregate::CorpusAggregate(AggregateConfig cfg) : cfg_(cfg) {}

void CorpusAggregate::add(const ArticleResult& r) {
  auto [it, inserted] = journals_.try_emplace(r.journal, cfg_.bins);
  JournalAggregate& j = it->second;
  ++j.articles;
  j.body_sentences += r.body_sentences;
  j.abstract_sentences += r.abstract_len;
  j.abstract_words += r.abstract_words;
  j.matched_abstract_sentences += r.matched_abstract_sentences;
  ++j.abstract_length_hist[r.abstract_len];
  add_bands(j.abstract_bands, r.abstract_max, cfg_.measures);
  ++j.match_count_bands[match_count_band(r.matched_abstract_sentences)];
  ++j.reuse_fraction_bands[reuse_fraction_band(r.matched_abstract_sentences, r.abstract_len)];

  if (r.summary_len) {
    ++j.articles_with_summary;
    j.summary_sentences += *r.summary_len;
    j.summary_words += r.summary_words;
    j.matched_summary_sentences += r.matched_summary_sentences;
    ++j.summary_length_hist[*r.summary_len];
    add_bands(j.summary_bands, r.summary_max, cfg_.measures);
  }

  if (r.full_imrad) {
    ++j.full_imrad_articles;
    for (std::size_t l = 0; l < 4; ++l) {
      j.section_total[l] += r.section_total[l];
      j.section_matched[l] += r.section_matched[l];
    }
  }

  if (r.positional && r.positional_total > 0) {
    ++j.positional_articles;
    std::vector<std::uint64_t> matched(cfg_.bins, 0);
    std::vector<std::uint64_t> total(cfg_.bins, 0);
    for (std::size_t i = 0; i < r.positional_total; ++i) ++total[position_bin(i, r.positional_total, cfg_.bins)];
    for (std::size_t idx : r.positional_matched) ++matched[position_bin(idx, r.positional_total, cfg_.bins)];
    for (std::size_t b = 0; b < cfg_.bins; ++b) {
      j.bin_matched[b] += matched[b];
      j.bin_total[b] += total[b];
      if (total[b] > 0) ++j.bin_article_rates[b][{matched[b], total[b]}];
    }
    for (std::size_t k = 0; k < 3; ++k) {
      ++j.boundaries[k][{r.boundaries.cumulative[k], r.boundaries.total}];
    }
  }
}

void CorpusAggregate::merge(const CorpusAggregate& other) {
  if (!(cfg_ == other.cfg_)) throw std::invalid_argument("merge: aggregate configurations differ");
  for (const auto& [journal, agg] : other.journals_) {
    auto [it, inserted] = journals_.try_emplace(journal, cfg_.bins);
    it->second.merge(agg);
  }
}

JournalAggregate CorpusAggregate::total() const {
  JournalAggregate out(cfg_.bins);
  for (const auto& [journal, agg] : journals_) out.merge(agg);
  return out;
}

std::uint64_t CorpusAggregate::article_count() const {
  std::uint64_t n = 0;
  for (const auto& [journal, agg] : journals_) n += agg.articles;
  return n;
}

CorpusAggregate merge(const CorpusAggregate& a, const CorpusAggregate& b) {
  CorpusAggregate out = a;
  out.merge(b);
  return out;
}

namespace {

std::vector<BandRow> band_rows(const BandTable& table, std::uint64_t sentences, MeasureSet measures) {
  std::vector<BandRow> rows;
  auto row_for = [&](std::size_t index) {
    BandRow row;
    row.measure_index = index;
    row.sentences = sentences;
    for (std::size_t b = 0; b < 4; ++b) row.percent[b] = percent(table[index].counts[b], sentences);
    rows.push_back(row);
  };
  for (Measure m : measures.members()) row_for(static_cast<std::size_t>(m));
  row_for(kMaxRow);
  return rows;
}

// Per-journal rows followed by a Total row built from the merged aggregate.
template <std::size_t N, typename Fn>
std::vector<JournalRow<N>> per_journal(const CorpusAggregate& agg, Fn&& fn) {
  std::vector<JournalRow<N>> rows;
  for (const auto& [journal, j] : agg.journals()) {
    if (auto row = fn(j)) {
      row->journal = journal;
      rows.push_back(*row);
    }
  }
  if (auto row = fn(agg.total())) {
    row->journal = std::string(kTotalRow);
    rows.push_back(*row);
  }
  return rows;
}

}  // namespace

BandDistribution band_distribution(const CorpusAggregate& agg) {
  if (agg.empty()) throw std::invalid_argument("band_distribution: empty aggregate");
  const JournalAggregate total = agg.total();
  BandDistribution out;
  out.abstracts = band_rows(total.abstract_bands, total.abstract_sentences, agg.config().measures);
  if (total.summary_sentences > 0) {
    out.summaries = band_rows(total.summary_bands, total.summary_sentences, agg.config().measures);
  }
  return out;
}

std::vector<JournalRow<2>> journal_match_percentages(const CorpusAggregate& agg) {
  return per_journal<2>(agg, [](const JournalAggregate& j) -> std::optional<JournalRow<2>> {
    if (j.abstract_sentences == 0) return std::nullopt;
    const auto& max = j.abstract_bands[kMaxRow].counts;
    JournalRow<2> row;
    row.units = j.abstract_sentences;
    row.percent[0] = percent(max[0] + max[1], j.abstract_sentences);
    row.percent[1] = percent(max[0] + max[1] + max[2], j.abstract_sentences);
    return row;
  });
}

std::vector<JournalRow<4>> match_count_bands(const CorpusAggregate& agg) {
  return per_journal<4>(agg, [](const JournalAggregate& j) -> std::optional<JournalRow<4>> {
    if (j.articles == 0) return std::nullopt;
    JournalRow<4> row;
    row.units = j.articles;
    for (std::size_t b = 0; b < 4; ++b) row.percent[b] = percent(j.match_count_bands[b], j.articles);
    return row;
  });
}

std::vector<JournalRow<5>> reuse_fraction_bands(const CorpusAggregate& agg) {
  return per_journal<5>(agg, [](const JournalAggregate& j) -> std::optional<JournalRow<5>> {
    if (j.articles == 0) return std::nullopt;
    JournalRow<5> row;
    row.units = j.articles;
    for (std::size_t b = 0; b < 5; ++b) row.percent[b] = percent(j.reuse_fraction_bands[b], j.articles);
    return row;
  });
}

std::vector<JournalRow<5>> section_match_rates(const CorpusAggregate& agg) {
  return per_journal<5>(agg, [](const JournalAggregate& j) -> std::optional<JournalRow<5>> {
    std::uint64_t matched = 0;
    std::uint64_t total = 0;
    for (std::size_t l = 0; l < 4; ++l) {
      matched += j.section_matched[l];
      total += j.section_total[l];
    }
    if (total == 0) return std::nullopt;
    JournalRow<5> row;
    row.units = total;
    for (std::size_t l = 0; l < 4; ++l) row.percent[l] = percent(j.section_matched[l], j.section_total[l]);
    row.percent[4] = percent(matched, total);
    return row;
  });
}

std::vector<PositionalCurve> positional_distribution(const CorpusAggregate& agg, PositionalMode mode) {
  std::vector<PositionalCurve> curves;
  auto curve_for = [&](const std::string& name, const JournalAggregate& j) {
    PositionalCurve c;
    c.journal = name;
    c.articles = j.positional_articles;
    c.matched = j.bin_matched;
    c.total = j.bin_total;
    c.percent.resize(j.bin_total.size());
    for (std::size_t b = 0; b < j.bin_total.size(); ++b) {
      if (j.bin_total[b] == 0) continue;
      if (mode == PositionalMode::Pooled) {
        c.percent[b] = percent(j.bin_matched[b], j.bin_total[b]);
      } else if (auto mean = ratio_mean(j.bin_article_rates[b])) {
        c.percent[b] = 100.0 * *mean;
      }
    }
    if (j.positional_articles > 0) {
      std::array<double, 3> b{};
      for (std::size_t k = 0; k < 3; ++k) b[k] = ratio_mean(j.boundaries[k]).value_or(0.0);
      c.mean_boundaries = b;
    }
    curves.push_back(std::move(c));
  };
  for (const auto& [journal, j] : agg.journals()) {
    if (j.positional_articles > 0) curve_for(journal, j);
  }
  curve_for(std::string(kTotalRow), agg.total());
  return curves;
}

std::vector<LengthStats> length_distributions(const CorpusAggregate& agg) {
  std::vector<LengthStats> out;
  auto stats_for = [](const std::string& name, const JournalAggregate& j) {
    LengthStats s;
    s.journal = name;
    s.articles = j.articles;
    s.summaries = j.articles_with_summary;
    s.abstract_hist = j.abstract_length_hist;
    s.summary_hist = j.summary_length_hist;
    auto mean = [](std::uint64_t num, std::uint64_t den) -> std::optional<double> {
      if (den == 0) return std::nullopt;
      return static_cast<double>(num) / static_cast<double>(den);
    };
    s.mean_abstract_sentences = mean(j.abstract_sentences, j.articles);
    s.mean_summary_sentences = mean(j.summary_sentences, j.articles_with_summary);
    s.mean_abstract_sentence_words = mean(j.abstract_words, j.abstract_sentences);
    s.mean_summary_sentence_words = mean(j.summary_words, j.summary_sentences);
    s.mean_body_sentences = mean(j.body_sentences, j.articles);
    return s;
  };
  for (const auto& [journal, j] : agg.journals()) out.push_back(stats_for(journal, j));
  out.push_back(stats_for(std::string(kTotalRow), agg.total()));
  return out;
}

}  // namespace absreuse
