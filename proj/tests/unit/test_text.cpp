#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "absreuse/text.hpp"

using namespace absreuse;

namespace {

std::vector<std::string> texts(std::string_view s, std::size_t min_tokens = 2) {
  return split_sentence_texts(s, SegmenterOptions{min_tokens});
}

}  // namespace

TEST(Tokenize, SplitsOnHyphenAndPunctuation) {
  EXPECT_EQ(tokenize("Gene-expression analysis, 2013."),
            (std::vector<std::string>{"gene", "expression", "analysis", "2013"}));
}

TEST(Tokenize, Lowercases) { EXPECT_EQ(tokenize("ABC"), std::vector<std::string>{"abc"}); }

TEST(Tokenize, PunctuationOnlyIsEmpty) {
  EXPECT_TRUE(tokenize("...").empty());
  EXPECT_TRUE(tokenize("").empty());
}

TEST(Tokenize, NonAsciiLettersStayInsideTokens) {
  EXPECT_EQ(tokenize("Naïve café"), (std::vector<std::string>{"naïve", "café"}));
  // Em-dash and multiplication sign separate.
  EXPECT_EQ(tokenize("alpha\u2014beta 3\u00d74"), (std::vector<std::string>{"alpha", "beta", "3", "4"}));
}

TEST(Tokenize, InvalidUtf8DoesNotThrow) {
  const std::string bad = std::string("ab") + static_cast<char>(0xC3);
  EXPECT_NO_THROW(tokenize(bad));
}

TEST(TermVector, RemovesStopWords) {
  const StopWordList stops({"the"}, "t");
  const std::vector<std::string> toks{"the", "cat", "sat", "the"};
  EXPECT_EQ(term_vector(toks, stops), (TermVector{{"cat", 1}, {"sat", 1}}));
}

TEST(TermVector, CountsWithEmptyList) {
  const StopWordList none;
  const std::vector<std::string> toks{"gene", "gene", "expression"};
  EXPECT_EQ(term_vector(toks, none), (TermVector{{"gene", 2}, {"expression", 1}}));
}

TEST(TermVector, AllStopWordsGivesEmpty) {
  const std::vector<std::string> toks{"the", "of", "and"};
  EXPECT_TRUE(term_vector(toks, StopWordList::builtin()).empty());
}

TEST(StopWords, BuiltinHasVersionTag) {
  EXPECT_FALSE(StopWordList::builtin().version_tag().empty());
  EXPECT_TRUE(StopWordList::builtin().contains("The"));
  EXPECT_FALSE(StopWordList::builtin().contains("gene"));
}

TEST(StopWords, FromFileIgnoresCommentsAndTagsContent) {
  const auto dir = std::filesystem::temp_directory_path() / "absreuse_stops";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.txt") << "# comment\nfoo\nBar\n\n";
    std::ofstream(dir / "b.txt") << "bar\nfoo\n";
  }
  const auto a = StopWordList::from_file(dir / "a.txt");
  const auto b = StopWordList::from_file(dir / "b.txt");
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.contains("bar"));
  EXPECT_FALSE(a.contains("comment"));
  // Same word set, same hash part of the tag.
  EXPECT_EQ(a.version_tag().substr(a.version_tag().rfind(':')), b.version_tag().substr(b.version_tag().rfind(':')));
  EXPECT_THROW(StopWordList::from_file(dir / "missing.txt"), std::runtime_error);
}

TEST(Split, TwoPlainSentences) {
  EXPECT_EQ(texts("We ran tests. Results follow."),
            (std::vector<std::string>{"We ran tests.", "Results follow."}));
}

TEST(Split, EtAlDoesNotSplit) {
  EXPECT_EQ(texts("See Smith et al. (2010) for details. We extend it."),
            (std::vector<std::string>{"See Smith et al. (2010) for details.", "We extend it."}));
}

TEST(Split, EmptyInput) {
  EXPECT_TRUE(texts("").empty());
  EXPECT_TRUE(split_sentences("").empty());
}

TEST(Split, AbbreviationsAndInitials) {
  EXPECT_EQ(texts("As shown in Fig. 2 the rate rose. It fell later.").size(), 2u);
  EXPECT_EQ(texts("Samples from the U.S. Army were used. They were frozen.").size(), 2u);
  EXPECT_EQ(texts("Work by J. Smith was cited. It helped.").size(), 2u);
  EXPECT_EQ(texts("Several e.g. Mice were used. Then rats.").size(), 2u);
}

TEST(Split, OtherTerminatorsAndClosers) {
  EXPECT_EQ(texts("Does it work? Yes it does! Fine then.").size(), 3u);
  EXPECT_EQ(texts("He said \"stop now.\" Then we left.").size(), 2u);
  EXPECT_EQ(texts("The value (p < 0.05.) Was found.").size(), 2u);
}

TEST(Split, NoSplitBeforeLowercase) {
  EXPECT_EQ(texts("The value was 3. and then some more words here.").size(), 1u);
  EXPECT_EQ(texts("Decimal 3.5 stays whole here. Next one.").size(), 2u);
}

TEST(Split, ShortFragmentsMerge) {
  // "Yes." has one token and folds into the previous segment.
  EXPECT_EQ(texts("The cat sat. Yes. The dog ran."),
            (std::vector<std::string>{"The cat sat. Yes.", "The dog ran."}));
  // A single capital with a period is an initial, not a sentence end.
  EXPECT_EQ(texts("The cat sat. A. The dog ran."),
            (std::vector<std::string>{"The cat sat.", "A. The dog ran."}));
  // A leading short fragment is carried into the next sentence.
  EXPECT_EQ(texts("I. The cat sat on the mat."), (std::vector<std::string>{"I. The cat sat on the mat."}));
  // A lone fragment is kept.
  EXPECT_EQ(texts("A."), (std::vector<std::string>{"A."}));
  // Pure punctuation is dropped.
  EXPECT_TRUE(texts("... !!").empty());
}

TEST(Split, MinTokensThree) {
  EXPECT_EQ(texts("We ran tests. Results follow.", 3), (std::vector<std::string>{"We ran tests. Results follow."}));
}

TEST(Split, SentencesCarryTokensAndTerms) {
  const auto s = split_sentences("The gene is expressed. Gene expression rises.");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].tokens, (std::vector<std::string>{"the", "gene", "is", "expressed"}));
  EXPECT_EQ(s[0].word_len, 4u);
  EXPECT_EQ(s[0].char_len, s[0].text.size());
  EXPECT_EQ(s[0].terms.count("the"), 0u);
  EXPECT_EQ(s[1].terms.at("gene"), 1u);
}

TEST(Split, SentencesConcatenateBackToInput) {
  const std::string text = "Alpha beta gamma. Delta epsilon? Zeta eta theta! Iota kappa.";
  std::string joined;
  for (const auto& t : texts(text)) joined += (joined.empty() ? "" : " ") + t;
  EXPECT_EQ(joined, text);
}

TEST(Normalize, CaseFoldAndCollapse) {
  EXPECT_EQ(normalize_for_matching("  The  Cat\n\tSat "), "the cat sat");
  EXPECT_EQ(collapse_whitespace(" a \n b  "), "a b");
}
