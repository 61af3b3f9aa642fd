#include "absreuse/pipeline.hpp"

#include <omp.h>

#include <algorithm>

#include "absreuse/jats.hpp"
#include "absreuse/kernels.hpp"
#include "json.hpp"

namespace absreuse {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Resources {
  StopWordList stops;
  TitleClassifier classifier;
  SegmenterOptions seg;
};

Resources load_resources(const RunConfig& cfg) {
  Resources r;
  try {
    r.stops = cfg.stopwords ? StopWordList::from_file(*cfg.stopwords) : StopWordList::builtin();
    r.classifier = cfg.title_map ? TitleClassifier::with_overrides(*cfg.title_map) : TitleClassifier::builtin();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  r.seg.min_tokens = cfg.min_sentence_tokens;
  return r;
}

std::string relative_name(const fs::path& file, const fs::path& root) {
  std::error_code ec;
  fs::path rel = fs::relative(file, root, ec);
  if (ec || rel.empty()) rel = file.filename();
  return rel.generic_string();
}

std::string journal_for(const RawArticle& raw, const fs::path& file, const fs::path& root, JournalSource source) {
  std::string dir;
  const fs::path rel = fs::path(relative_name(file, root));
  if (rel.has_parent_path()) dir = rel.begin()->string();
  if (source == JournalSource::Directory && !dir.empty()) return dir;
  if (!raw.journal.empty()) return raw.journal;
  if (!dir.empty()) return dir;
  return "Unknown";
}

Json score_json(const SimilarityScore& s) {
  Json j;
  for (Measure m : {Measure::Exact, Measure::Cosine, Measure::Levenshtein, Measure::Dice, Measure::Jaccard}) {
    if (auto v = s.get(m)) j[std::string(measure_code(m))] = *v;
  }
  j["max"] = s.max;
  return j;
}

MatchConfig match_config(const RunConfig& cfg) { return cfg.analysis.match; }

}  // namespace

std::string_view to_string(JournalSource source) { return source == JournalSource::Meta ? "meta" : "directory"; }

void RunConfig::validate() const {
  try {
    analysis.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (zone_window == 0) throw UsageError("zone window must be positive");
  if (min_sentence_tokens == 0) throw UsageError("minimum sentence length must be positive");
  if (workers < 0) throw UsageError("worker count must not be negative");
  if (batch_size == 0) throw UsageError("batch size must be positive");
  if (stopwords && !fs::is_regular_file(*stopwords)) throw UsageError("stop-word file not found: " + stopwords->string());
  if (title_map && !fs::is_regular_file(*title_map)) throw UsageError("title map not found: " + title_map->string());
}

Report analyze_corpus(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (!fs::exists(cfg.input)) throw UsageError("input path does not exist: " + cfg.input.string());
  const Resources res = load_resources(cfg);

  std::vector<fs::path> files;
  fs::path root = cfg.input;
  if (fs::is_regular_file(cfg.input)) {
    files.push_back(cfg.input);
    root = cfg.input.parent_path();
  } else {
    files = CorpusScanner(cfg.input).paths();
  }

  Report report{{res.stops.version_tag(), res.classifier.fingerprint(), std::string(to_string(cfg.journal_source)),
                 cfg.min_sentence_tokens, cfg.zone_window, cfg.positional_mode, cfg.analysis.match.jaccard_empty_is_one},
                CorpusAggregate(AggregateConfig::from(cfg.analysis)),
                {},
                files.size()};

  const int workers = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
  log << "absreuse: " << files.size() << " files, " << workers << " workers\n";

  for (std::size_t start = 0; start < files.size(); start += cfg.batch_size) {
    const std::size_t end = std::min(files.size(), start + cfg.batch_size);
    std::vector<std::string> bytes(end - start);
    std::vector<std::string> errors(end - start);
    std::vector<std::uint8_t> readable(end - start, 0);
    for (std::size_t i = start; i < end; ++i) {
      if (auto data = CorpusScanner::read_file(files[i], errors[i - start])) {
        bytes[i - start] = std::move(*data);
        readable[i - start] = 1;
      }
    }

    std::vector<CorpusAggregate> partial(static_cast<std::size_t>(workers),
                                         CorpusAggregate(AggregateConfig::from(cfg.analysis)));
    const auto count = static_cast<std::int64_t>(end - start);
#pragma omp parallel num_threads(workers)
    {
      CorpusAggregate local(AggregateConfig::from(cfg.analysis));
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        if (!readable[idx]) continue;
        const fs::path& file = files[start + idx];
        try {
          ScanEntry entry = parse_entry(file, bytes[idx]);
          bytes[idx].clear();
          bytes[idx].shrink_to_fit();
          if (!entry.ok()) {
            errors[idx] = entry.error();
            continue;
          }
          RawArticle raw = std::get<RawArticle>(std::move(entry.result));
          raw.journal = journal_for(raw, file, root, cfg.journal_source);
          const StructuredArticle article = structure_article(raw, res.classifier, res.stops, res.seg);
          local.add(analyze_article(article, cfg.analysis));
        } catch (const std::exception& e) {
          errors[idx] = e.what();
        }
      }
      partial[static_cast<std::size_t>(omp_get_thread_num())] = std::move(local);
    }
    // Integer aggregates: the merge order cannot change the result, but keep it fixed anyway.
    for (const auto& p : partial) report.aggregate.merge(p);

    for (std::size_t i = start; i < end; ++i) {
      if (errors[i - start].empty()) continue;
      const std::string rel = relative_name(files[i], root);
      log << "skip " << rel << ": " << errors[i - start] << '\n';
      report.skipped.push_back({rel, errors[i - start]});
    }
    log << "processed " << end << "/" << files.size() << '\n';
  }
  return report;
}

int run_analyze(const RunConfig& cfg, std::ostream& log) {
  Report report;
  try {
    report = analyze_corpus(cfg, log);
  } catch (const UsageError& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (report.aggregate.empty()) {
    std::map<std::string, std::size_t> reasons;
    for (const auto& s : report.skipped) ++reasons[s.reason];
    log << "error: no analyzable articles (" << report.files_seen << " files seen)\n";
    for (const auto& [reason, n] : reasons) log << "  " << n << " x " << reason << '\n';
    return kExitNoInput;
  }
  write_report(report, cfg.output);
  log << "analyzed " << report.aggregate.article_count() << " articles, skipped " << report.skipped.size()
      << "; wrote " << cfg.output.string() << '\n';
  return kExitOk;
}

std::string inspect_article(const fs::path& file, const RunConfig& cfg) {
  cfg.validate();
  const Resources res = load_resources(cfg);
  std::string error;
  const auto bytes = CorpusScanner::read_file(file, error);
  if (!bytes) throw UsageError(error);
  RawArticle raw = parse_article(*bytes);
  raw.journal = journal_for(raw, file, file.parent_path(), cfg.journal_source);
  const StructuredArticle article = structure_article(raw, res.classifier, res.stops, res.seg);

  std::vector<Sentence> body;
  for (const auto& s : article.sections) body.insert(body.end(), s.sentences.begin(), s.sentences.end());
  const MatchConfig mc = match_config(cfg);

  auto rows_json = [&](const std::vector<Sentence>& rows) {
    Json out = Json::array();
    for (const auto& s : rows) {
      Json j;
      j["text"] = s.text;
      j["tokens"] = s.word_len;
      if (!body.empty()) {
        const SentenceMax best = abstract_sentence_max(s, body, mc);
        j["sim_max"] = score_json(best.score);
        j["best_body_sentence"] = best.body_index;
        j["match"] = is_match(best.score, mc);
      }
      out.push_back(std::move(j));
    }
    return out;
  };

  Json doc;
  doc["article_id"] = article.article_id;
  doc["journal"] = article.journal;
  doc["full_imrad"] = article.has_full_imrad;
  doc["threshold"] = mc.threshold;
  doc["abstract"] = rows_json(article.abstract);
  doc["author_summary"] = article.author_summary ? rows_json(*article.author_summary) : Json(nullptr);
  Json sections = Json::array();
  std::size_t index = 0;
  for (const auto& s : article.sections) {
    Json j;
    j["title"] = s.title;
    j["label"] = std::string(to_string(s.label));
    j["first_sentence_index"] = index;
    Json texts = Json::array();
    for (const auto& sentence : s.sentences) texts.push_back(sentence.text);
    index += s.sentences.size();
    j["sentences"] = std::move(texts);
    sections.push_back(std::move(j));
  }
  doc["sections"] = std::move(sections);
  return doc.dump(2) + "\n";
}

std::string score_pair_json(std::string_view a, std::string_view b, const RunConfig& cfg) {
  cfg.validate();
  const Resources res = load_resources(cfg);
  const MatchConfig mc = match_config(cfg);
  const Sentence sa = make_sentence(std::string(a), res.stops);
  const Sentence sb = make_sentence(std::string(b), res.stops);
  const SimilarityScore s = score_pair(sa, sb, mc);
  Json doc = score_json(s);
  doc["match"] = is_match(s, mc);
  doc["threshold"] = mc.threshold;
  return doc.dump(2) + "\n";
}

}  // namespace absreuse
