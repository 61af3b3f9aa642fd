// absreuse: measure how much of an abstract is re-used from the article body.

#include <iostream>

#include "CLI11.hpp"
#include "absreuse/pipeline.hpp"

namespace {

using absreuse::RunConfig;

void add_shared_options(CLI::App& cmd, RunConfig& cfg, std::string& measures) {
  cmd.add_option("-t,--threshold", cfg.analysis.match.threshold, "Match threshold T (0 < T <= 1)")
      ->capture_default_str();
  cmd.add_option("-m,--measures", measures, "Comma-separated measures: E,C,L,Dice,Jaccard")->capture_default_str();
  cmd.add_flag("--jaccard-empty-one", cfg.analysis.match.jaccard_empty_is_one,
               "Jaccard of two empty term sets is 1 instead of 0");
  cmd.add_option("--stopwords", cfg.stopwords, "Stop-word file, one word per line");
  cmd.add_option("--title-map", cfg.title_map, "Section title overrides: keyword<TAB>label per line");
  cmd.add_option("--min-sentence-tokens", cfg.min_sentence_tokens, "Shorter segments merge into a neighbour")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text re-use between abstracts and article bodies in JATS XML"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(absreuse::kToolVersion));

  RunConfig cfg;
  std::string measures = "E,C,L";
  std::string scope = "full-imrad";
  std::string mode = "pooled";
  std::string journal_source = "meta";
  std::string kernel = "parallel";

  auto* analyze = app.add_subcommand("analyze", "Analyze a corpus and write CSV tables and report.json");
  analyze->add_option("input", cfg.input, "Directory of JATS XML files (searched recursively)")->required();
  analyze->add_option("-o,--output", cfg.output, "Output directory")->capture_default_str();
  add_shared_options(*analyze, cfg, measures);
  analyze->add_option("-b,--bins", cfg.analysis.bins, "Positional bins (>= 20)")->capture_default_str();
  analyze->add_option("--positional-scope", scope, "full-imrad or all")
      ->check(CLI::IsMember({"full-imrad", "all"}))
      ->capture_default_str();
  analyze->add_option("--positional-mode", mode, "pooled or article-mean")
      ->check(CLI::IsMember({"pooled", "article-mean"}))
      ->capture_default_str();
  analyze->add_option("--zone-window", cfg.zone_window, "Moving-average window for zone detection")
      ->capture_default_str();
  analyze->add_option("--journal-source", journal_source, "meta (JATS journal title) or directory")
      ->check(CLI::IsMember({"meta", "directory"}))
      ->capture_default_str();
  analyze->add_option("-j,--workers", cfg.workers, "Worker threads (0 = all cores)")->capture_default_str();
  analyze->add_option("--kernel", kernel, "parallel or reference")
      ->check(CLI::IsMember({"parallel", "reference"}))
      ->capture_default_str();

  std::string sentence_a;
  std::string sentence_b;
  auto* score = app.add_subcommand("score-pair", "Print all similarity measures for two sentences as JSON");
  score->add_option("a", sentence_a, "First sentence")->required();
  score->add_option("b", sentence_b, "Second sentence")->required();
  add_shared_options(*score, cfg, measures);

  std::filesystem::path file;
  auto* inspect = app.add_subcommand("inspect", "Dump one article's structure and per-sentence SIM_max as JSON");
  inspect->add_option("file", file, "JATS XML file")->required();
  add_shared_options(*inspect, cfg, measures);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? absreuse::kExitOk : absreuse::kExitUsage;
  }

  try {
    cfg.analysis.match.measures = absreuse::MeasureSet::parse(measures);
    cfg.analysis.scope =
        scope == "all" ? absreuse::PositionalScope::AllArticles : absreuse::PositionalScope::FullImradOnly;
    cfg.positional_mode =
        mode == "article-mean" ? absreuse::PositionalMode::ArticleMean : absreuse::PositionalMode::Pooled;
    cfg.journal_source =
        journal_source == "directory" ? absreuse::JournalSource::Directory : absreuse::JournalSource::Meta;
    cfg.analysis.kernel = kernel == "reference" ? absreuse::KernelChoice::Reference : absreuse::KernelChoice::Parallel;

    if (*analyze) return absreuse::run_analyze(cfg, std::cerr);
    if (*score) {
      std::cout << absreuse::score_pair_json(sentence_a, sentence_b, cfg);
      return absreuse::kExitOk;
    }
    if (*inspect) {
      std::cout << absreuse::inspect_article(file, cfg);
      return absreuse::kExitOk;
    }
  } catch (const absreuse::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return absreuse::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return absreuse::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return absreuse::kExitNoInput;
  }
  return absreuse::kExitUsage;
}
