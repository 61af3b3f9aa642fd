#include <gtest/gtest.h>

#include <random>

#include "absreuse/pipeline.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace absreuse;
namespace fs = std::filesystem;

namespace {

RunConfig fixture_config() {
  RunConfig cfg;
  cfg.input = testsupport::corpus();
  return cfg;
}

std::map<std::string, std::string> run(const RunConfig& cfg) {
  std::ostringstream log;
  return render_all(analyze_corpus(cfg, log));
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("absreuse-test-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(Pipeline, FixtureMatchesGoldens) {
  const auto out = run(fixture_config());
  for (const char* name : {"table3.csv", "table4.csv", "table5.csv", "table6.csv", "fig3.csv"}) {
    EXPECT_EQ(out.at(name), testsupport::slurp(testsupport::golden() / name)) << name;
  }
}

TEST(Pipeline, WorkerCountAndBatchingDoNotChangeOutput) {
  RunConfig cfg = fixture_config();
  cfg.workers = 1;
  const auto one = run(cfg);
  cfg.workers = 8;
  EXPECT_EQ(run(cfg), one);
  cfg.batch_size = 1;
  EXPECT_EQ(run(cfg), one);
  cfg.analysis.kernel = KernelChoice::Reference;
  EXPECT_EQ(run(cfg), one);
}

TEST(Pipeline, CorruptFileIsSkipped) {
  TempDir dir;
  fs::create_directories(dir.path() / "alpha");
  fs::copy_file(testsupport::corpus() / "alpha" / "a01.xml", dir.path() / "alpha" / "a01.xml");
  {
    std::ofstream bad(dir.path() / "alpha" / "broken.xml");
    bad << "<article><front><article-meta>";
  }
  {
    std::ofstream empty(dir.path() / "alpha" / "noabs.xml");
    empty << "<article><body><sec><title>Results</title><p>Gene expression rose.</p></sec></body></article>";
  }
  RunConfig cfg;
  cfg.input = dir.path();
  std::ostringstream log;
  const Report r = analyze_corpus(cfg, log);
  EXPECT_EQ(r.files_seen, 3u);
  EXPECT_EQ(r.aggregate.article_count(), 1u);
  ASSERT_EQ(r.skipped.size(), 2u);
  EXPECT_EQ(r.skipped[0].path, "alpha/broken.xml");
  EXPECT_EQ(r.skipped[1].path, "alpha/noabs.xml");
  EXPECT_EQ(r.skipped[1].reason, "empty abstract");
  EXPECT_NE(log.str().find("skip alpha/broken.xml"), std::string::npos);
}

TEST(Pipeline, ExitCodes) {
  TempDir dir;
  RunConfig cfg;
  cfg.input = dir.path();
  cfg.output = dir.path() / "out";
  std::ostringstream log;
  EXPECT_EQ(run_analyze(cfg, log), kExitNoInput);

  cfg.input = dir.path() / "missing";
  EXPECT_EQ(run_analyze(cfg, log), kExitUsage);

  cfg.input = testsupport::corpus();
  cfg.analysis.match.threshold = 2.0;
  EXPECT_EQ(run_analyze(cfg, log), kExitUsage);

  cfg.analysis.match.threshold = 0.6;
  EXPECT_EQ(run_analyze(cfg, log), kExitOk);
  EXPECT_TRUE(fs::exists(cfg.output / "report.json"));
  EXPECT_TRUE(fs::exists(cfg.output / "table3.csv"));
}

TEST(Pipeline, DirectoryJournalSource) {
  RunConfig cfg = fixture_config();
  cfg.journal_source = JournalSource::Directory;
  const auto t4 = run(cfg).at("table4.csv");
  EXPECT_NE(t4.find("\nalpha,"), std::string::npos);
  EXPECT_NE(t4.find("\ngamma,"), std::string::npos);
}

TEST(Pipeline, ScorePairJson) {
  const auto doc = nlohmann::json::parse(score_pair_json("gene expression", "gene regulation", RunConfig{}));
  EXPECT_DOUBLE_EQ(doc.at("C").get<double>(), 0.5);
  EXPECT_EQ(doc.at("E"), 0.0);
  EXPECT_FALSE(doc.at("match").get<bool>());
  const auto same = nlohmann::json::parse(score_pair_json("Cells divide.", "Cells divide.", RunConfig{}));
  EXPECT_EQ(same.at("max"), 1.0);
  EXPECT_TRUE(same.at("match").get<bool>());
}

TEST(Pipeline, InspectArticle) {
  const auto doc =
      nlohmann::json::parse(inspect_article(testsupport::fixtures() / "jats" / "author_summary.xml", RunConfig{}));
  EXPECT_EQ(doc.at("journal"), "PLoS Pathogens");
  EXPECT_EQ(doc.at("abstract").size(), 3u);
  EXPECT_FALSE(doc.at("author_summary").is_null());
  EXPECT_TRUE(doc.at("full_imrad").get<bool>());
  ASSERT_FALSE(doc.at("sections").empty());
  EXPECT_EQ(doc.at("sections")[0].at("label"), "Introduction");
  EXPECT_TRUE(doc.at("abstract")[0].contains("sim_max"));
}
