#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "absreuse/jats.hpp"
#include "test_support.hpp"

using namespace absreuse;
namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(<?xml version="1.0"?>
<article><front><article-meta><abstract><p>A.</p></abstract></article-meta></front>
<body><sec><title>Introduction</title><p>B. C.</p></sec></body></article>)";

std::string paragraph_text(const pt::ptree& node) { return collapse_whitespace(node.data()); }

// Descendant <p> texts in document order, skipping figures, tables and titles.
void collect_paragraphs(const pt::ptree& node, std::vector<std::string>& out) {
  for (const auto& [name, child] : node) {
    if (name == "p") {
      out.push_back(paragraph_text(child));
    } else if (name != "fig" && name != "table-wrap" && name != "title" && name != "<xmlattr>") {
      collect_paragraphs(child, out);
    }
  }
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "\n") + s;
  return out;
}

// Independent reading of a fixture article with boost's DOM parser.
RawArticle oracle_read(const fs::path& file) {
  pt::ptree tree;
  pt::read_xml(file.string(), tree);
  const pt::ptree& article = tree.get_child("article");
  RawArticle out;
  out.journal = article.get<std::string>("front.journal-meta.journal-title-group.journal-title");
  for (const auto& [name, child] : article.get_child("front.article-meta")) {
    if (name == "article-id" && child.get<std::string>("<xmlattr>.pub-id-type", "") == "doi") {
      out.article_id = child.data();
    }
    if (name != "abstract") continue;
    std::vector<std::string> paras;
    collect_paragraphs(child, paras);
    if (child.get<std::string>("<xmlattr>.abstract-type", "").empty()) {
      out.abstract_text = join(paras);
    } else {
      out.author_summary_text = join(paras);
    }
  }
  for (const auto& [name, child] : article.get_child("body")) {
    if (name == "p") {
      if (out.sections.empty() || !out.sections.back().title.empty()) out.sections.emplace_back();
      out.sections.back().paragraphs.push_back(paragraph_text(child));
    } else if (name == "sec") {
      RawSection sec;
      sec.title = collapse_whitespace(child.get<std::string>("title", ""));
      collect_paragraphs(child, sec.paragraphs);
      out.sections.push_back(std::move(sec));
    }
  }
  return out;
}

}  // namespace

TEST(ParseArticle, MinimalDocument) {
  const RawArticle a = parse_article(kMinimal);
  EXPECT_EQ(a.abstract_text, "A.");
  ASSERT_EQ(a.sections.size(), 1u);
  EXPECT_EQ(a.sections[0].title, "Introduction");
  EXPECT_EQ(a.sections[0].paragraphs, std::vector<std::string>{"B. C."});
  EXPECT_FALSE(a.author_summary_text.has_value());
}

TEST(ParseArticle, TruncatedInputIsParseError) {
  const std::string full = testsupport::slurp(testsupport::fixtures() / "jats" / "author_summary.xml");
  try {
    parse_article(full.substr(0, 100));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_LE(e.byte_offset(), 100u);
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(ParseArticle, MalformedReportsOffset) {
  try {
    parse_article("<article><body><p>x</q></body></article>");
    FAIL();
  } catch (const ParseError& e) {
    // Expat points into the mismatched end tag "</q>" at bytes 19..22.
    EXPECT_GE(e.byte_offset(), 19u);
    EXPECT_LE(e.byte_offset(), 22u);
  }
}

TEST(ParseArticle, StructuralErrors) {
  EXPECT_THROW(parse_article("<html><body/></html>"), StructuralError);
  EXPECT_THROW(parse_article("<article><front/></article>"), StructuralError);
}

TEST(ParseArticle, AuthorSummaryFixture) {
  const RawArticle a = parse_article(testsupport::slurp(testsupport::fixtures() / "jats" / "author_summary.xml"));
  EXPECT_EQ(a.article_id, "10.5555/example.ppat.0000001");
  EXPECT_EQ(a.journal, "PLoS Pathogens");
  EXPECT_EQ(a.abstract_text.rfind("Intracellular parasites must cross", 0), 0u);
  ASSERT_TRUE(a.author_summary_text.has_value());
  EXPECT_EQ(a.author_summary_text->rfind("Many parasites live inside", 0), 0u);
  // The toc abstract is neither.
  EXPECT_EQ(a.abstract_text.find("gates"), std::string::npos);

  ASSERT_EQ(a.sections.size(), 4u);
  EXPECT_EQ(a.sections[0].title, "Introduction");
  EXPECT_EQ(a.sections[3].title, "Materials and Methods");
  // Figure captions are dropped; citation markers stay as running text.
  EXPECT_EQ(a.sections[0].paragraphs,
            (std::vector<std::string>{
                "Intracellular parasites must cross the host membrane to survive [1]. Entry is fast and tightly regulated."}));
  // Nested section flattened, formula replaced, table dropped.
  const auto& results = a.sections[1].paragraphs;
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0], "Loss of the kinase blocks invasion without affecting attachment. Rates fell by ninety percent.");
  EXPECT_EQ(results[1], "The growth rate follows FORMULA over time.");
  for (const auto& s : a.sections) {
    for (const auto& p : s.paragraphs) {
      EXPECT_EQ(p.find("Reviewer"), std::string::npos);
      EXPECT_EQ(p.find("reviewers"), std::string::npos);
      EXPECT_EQ(p.find("Strain"), std::string::npos);
    }
  }
}

TEST(ParseArticle, StructuredAbstractHeadersStripped) {
  const RawArticle a = parse_article(R"(<article><front><article-meta><abstract>
    <sec><title>Background</title><p>One two three.</p></sec>
    <sec><title>Methods</title><p>Four five six.</p></sec></abstract></article-meta></front>
    <body><p>Loose text here.</p></body></article>)");
  EXPECT_EQ(a.abstract_text, "One two three.\nFour five six.");
  ASSERT_EQ(a.sections.size(), 1u);
  EXPECT_TRUE(a.sections[0].title.empty());
}

TEST(ParseArticle, SummaryDetectedByTypeWithoutTitle) {
  const RawArticle a = parse_article(R"(<article><front><article-meta>
    <abstract abstract-type="summary"><p>Lay words here.</p></abstract>
    <abstract><p>Main text here.</p></abstract></article-meta></front><body><p>x y</p></body></article>)");
  EXPECT_EQ(a.abstract_text, "Main text here.");
  EXPECT_EQ(a.author_summary_text, "Lay words here.");
}

TEST(ParseArticle, EditorsSummaryIsNotAuthorSummary) {
  const RawArticle a = parse_article(R"(<article><front><article-meta>
    <abstract><p>Main text here.</p></abstract>
    <abstract abstract-type="editor"><title>Editors' Summary</title><p>Editor words.</p></abstract>
    </article-meta></front><body><p>x y</p></body></article>)");
  EXPECT_FALSE(a.author_summary_text.has_value());
  EXPECT_EQ(a.abstract_text, "Main text here.");
}

TEST(ParseArticle, InvalidUtf8IsSanitized) {
  std::string xml = "<article><front><article-meta><abstract><p>Bad \xFF byte here.</p></abstract>"
                    "</article-meta></front><body><p>x y</p></body></article>";
  const RawArticle a = parse_article(xml);
  EXPECT_EQ(a.abstract_text, "Bad \xEF\xBF\xBD byte here.");
}

TEST(Utf8, ValidityAndSanitize) {
  EXPECT_TRUE(is_valid_utf8("abc \xC3\xA9"));
  EXPECT_FALSE(is_valid_utf8("abc \xC3"));
  EXPECT_FALSE(is_valid_utf8("\xFF"));
  EXPECT_EQ(sanitize_utf8("a\xFF" "b"), "a\xEF\xBF\xBD" "b");
  EXPECT_EQ(sanitize_utf8("ok \xC3\xA9"), "ok \xC3\xA9");
}

TEST(ParseArticle, AgreesWithDomOracleOnFixtureCorpus) {
  CorpusScanner scanner(testsupport::corpus());
  std::size_t n = 0;
  while (auto entry = scanner.next()) {
    ASSERT_TRUE(entry->ok()) << entry->path;
    const RawArticle expected = oracle_read(entry->path);
    const RawArticle& got = entry->article();
    EXPECT_EQ(got.article_id, expected.article_id);
    EXPECT_EQ(got.journal, expected.journal);
    EXPECT_EQ(got.abstract_text, expected.abstract_text) << entry->path;
    EXPECT_EQ(got.author_summary_text, expected.author_summary_text) << entry->path;
    EXPECT_EQ(got.sections, expected.sections) << entry->path;
    ++n;
  }
  EXPECT_EQ(n, 12u);
}

TEST(CorpusScanner, SortedAndIsolatesErrors) {
  const fs::path dir = fs::temp_directory_path() / "absreuse_scan";
  fs::remove_all(dir);
  fs::create_directories(dir / "sub");
  std::ofstream(dir / "b.xml") << kMinimal;
  std::ofstream(dir / "a.xml") << kMinimal;
  std::ofstream(dir / "sub" / "c.xml") << "<article><body>";
  std::ofstream(dir / "notes.txt") << "ignored";
  CorpusScanner scanner(dir);
  ASSERT_EQ(scanner.size(), 3u);
  std::vector<std::string> names;
  std::size_t ok = 0;
  while (auto e = scanner.next()) {
    names.push_back(fs::relative(e->path, dir).generic_string());
    ok += e->ok();
  }
  EXPECT_EQ(names, (std::vector<std::string>{"a.xml", "b.xml", "sub/c.xml"}));
  EXPECT_EQ(ok, 2u);
}

TEST(CorpusScanner, EmptyAndMissing) {
  const fs::path dir = fs::temp_directory_path() / "absreuse_scan_empty";
  fs::remove_all(dir);
  fs::create_directories(dir);
  CorpusScanner scanner(dir);
  EXPECT_FALSE(scanner.next().has_value());
  EXPECT_THROW(CorpusScanner(dir / "nope"), std::runtime_error);
}

TEST(ParseEntry, FallsBackToFileStem) {
  const ScanEntry e = parse_entry("x/doc7.xml", kMinimal);
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(e.article().article_id, "doc7");
  const ScanEntry bad = parse_entry("x/bad.xml", "<article>");
  EXPECT_FALSE(bad.ok());
  EXPECT_FALSE(bad.error().empty());
}
