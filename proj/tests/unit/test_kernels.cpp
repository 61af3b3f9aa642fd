#include <gtest/gtest.h>
#include <omp.h>

#include <random>

#include "absreuse/kernels.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace absreuse;

namespace {

std::vector<Sentence> flatten(const StructuredArticle& a) {
  std::vector<Sentence> body;
  for (const auto& s : a.sections) body.insert(body.end(), s.sentences.begin(), s.sentences.end());
  return body;
}

std::span<const Sentence> summary_of(const StructuredArticle& a) {
  return a.author_summary ? std::span<const Sentence>(*a.author_summary) : std::span<const Sentence>();
}

// Parallel and reference agree wherever the result can influence a table.
void expect_equivalent(const ArticleMatches& ref, const ArticleMatches& par, const MatchConfig& cfg) {
  const double floor = pruning_floor(cfg);
  ASSERT_EQ(ref.abstract.size(), par.abstract.size());
  ASSERT_EQ(ref.summary.size(), par.summary.size());
  EXPECT_EQ(ref.body_matched, par.body_matched);
  EXPECT_EQ(ref.pairs, par.pairs);
  auto rows = [&](const std::vector<SentenceMatch>& r, const std::vector<SentenceMatch>& p) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      EXPECT_EQ(is_match(r[i].score, cfg), is_match(p[i].score, cfg));
      EXPECT_EQ(similarity_band(r[i].score.max), similarity_band(p[i].score.max));
      for (Measure m : cfg.measures.members()) {
        const double rv = *r[i].score.get(m);
        const double pv = *p[i].score.get(m);
        EXPECT_EQ(similarity_band(rv), similarity_band(pv));
        if (rv >= floor) {
          EXPECT_EQ(rv, pv);
        }
        EXPECT_LE(pv, rv);
      }
      if (r[i].score.max >= floor) {
        EXPECT_EQ(r[i].score.max, p[i].score.max);
        EXPECT_EQ(r[i].body_index, p[i].body_index);
      }
    }
  };
  rows(ref.abstract, par.abstract);
  rows(ref.summary, par.summary);
}

}  // namespace

TEST(Features, ScoreMatchesStringMeasures) {
  std::mt19937_64 rng(3);
  MatchConfig cfg;
  cfg.measures = MeasureSet::all();
  for (int i = 0; i < 1000; ++i) {
    const Sentence a = testsupport::sent(oracle::join(oracle::random_tokens(rng, 12)));
    const Sentence b = testsupport::sent(oracle::join(oracle::random_tokens(rng, 12)));
    TokenInterner interner;
    const auto fa = make_features(a, interner);
    const auto fb = make_features(b, interner);
    EXPECT_EQ(score_features(fa, fb, cfg), score_pair(a, b, cfg));
  }
}

TEST(Pruning, EqualsUnprunedOnEveryFixturePair) {
  const MatchConfig cfg;
  const double floor = pruning_floor(cfg);
  std::size_t pairs = 0;
  std::size_t pruned = 0;
  for (const auto& article : testsupport::fixture_articles()) {
    const auto body = flatten(article);
    TokenInterner interner;
    std::vector<SentenceFeatures> bf;
    for (const auto& s : body) bf.push_back(make_features(s, interner));
    std::vector<Sentence> rows = article.abstract;
    if (article.author_summary) rows.insert(rows.end(), article.author_summary->begin(), article.author_summary->end());
    for (const auto& row : rows) {
      const auto rf = make_features(row, interner);
      for (std::size_t j = 0; j < body.size(); ++j) {
        const SimilarityScore full = score_features(rf, bf[j], cfg);
        EXPECT_EQ(full, score_pair(row, body[j], cfg));
        const auto p = score_features_pruned(rf, bf[j], cfg, floor);
        ++pairs;
        if (p) {
          EXPECT_EQ(*p, full);
        } else {
          ++pruned;
          EXPECT_LT(full.max, floor);
        }
      }
    }
  }
  EXPECT_GT(pairs, 500u);
  EXPECT_GT(pruned, 0u);
}

TEST(Pruning, FloorFollowsThreshold) {
  MatchConfig cfg;
  EXPECT_EQ(pruning_floor(cfg), 0.6);
  cfg.threshold = 0.8;
  EXPECT_EQ(pruning_floor(cfg), 0.6);
  cfg.threshold = 0.3;
  EXPECT_EQ(pruning_floor(cfg), 0.3);
}

TEST(MatchArticle, ParallelEqualsReferenceOnFixtures) {
  for (const auto& article : testsupport::fixture_articles()) {
    const auto body = flatten(article);
    for (const char* measures : {"E,C,L", "E,C,L,Dice,Jaccard", "C"}) {
      MatchConfig cfg;
      cfg.measures = MeasureSet::parse(measures);
      const auto ref = match_article_reference(article.abstract, summary_of(article), body, cfg);
      const auto par = match_article_parallel(article.abstract, summary_of(article), body, cfg);
      SCOPED_TRACE(article.article_id + " " + measures);
      expect_equivalent(ref, par, cfg);
    }
  }
}

TEST(MatchArticle, ParallelEqualsReferenceOnRandomArticles) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Sentence> abstract;
    std::vector<Sentence> body;
    for (int i = 0; i < 40; ++i) body.push_back(testsupport::sent(oracle::join(oracle::random_tokens(rng, 12))));
    for (int i = 0; i < 8; ++i) abstract.push_back(testsupport::sent(oracle::join(oracle::random_tokens(rng, 12))));
    for (double t : {0.6, 0.8, 0.35}) {
      MatchConfig cfg;
      cfg.threshold = t;
      for (int threads : {1, 4}) {
        omp_set_num_threads(threads);
        const auto ref = match_article_reference(abstract, {}, body, cfg);
        const auto par = match_article_parallel(abstract, {}, body, cfg);
        expect_equivalent(ref, par, cfg);
      }
    }
  }
}

TEST(MatchArticle, BodyMatchedCountsOnce) {
  const std::vector<Sentence> body{testsupport::sent("Gene expression rises in mice."),
                                   testsupport::sent("Cells divide slowly here.")};
  const std::vector<Sentence> abstract{testsupport::sent("Gene expression rises in mice."),
                                       testsupport::sent("Gene expression rises.")};
  const MatchConfig cfg;
  for (const auto& m : {match_article_reference(abstract, {}, body, cfg), match_article_parallel(abstract, {}, body, cfg)}) {
    EXPECT_EQ(m.pairs.size(), 2u);
    EXPECT_EQ(m.body_matched, (std::vector<std::uint8_t>{1, 0}));
  }
}

TEST(MatchArticle, EmptyBodyThrows) {
  const std::vector<Sentence> abstract{testsupport::sent("x y")};
  EXPECT_THROW(match_article_reference(abstract, {}, {}, MatchConfig{}), std::invalid_argument);
  EXPECT_THROW(match_article_parallel(abstract, {}, {}, MatchConfig{}), std::invalid_argument);
}
