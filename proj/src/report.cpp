#include "absreuse/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace absreuse {
namespace {

using Json = nlohmann::ordered_json;

std::string shortest(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class Csv {
 public:
  explicit Csv(const Report& report) {
    out_ << "# threshold=" << shortest(report.aggregate.config().threshold) << '\n';
  }
  Csv& comment(const std::string& text) {
    out_ << "# " << text << '\n';
    return *this;
  }
  Csv& row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << csv_field(cells[i]);
    }
    out_ << '\n';
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string opt_fixed(const std::optional<double>& v) { return v ? format_fixed(*v) : std::string(); }

std::string row_label(std::size_t measure_index) {
  if (measure_index == kMaxRow) return "SIM_max";
  return std::string(measure_row_label(static_cast<Measure>(measure_index)));
}

template <std::size_t N>
std::vector<std::string> journal_cells(const JournalRow<N>& r) {
  std::vector<std::string> cells{r.journal};
  for (double p : r.percent) cells.push_back(format_fixed(p));
  return cells;
}

PositionalCurve total_curve(const Report& report) {
  auto curves = positional_distribution(report.aggregate, report.meta.positional_mode);
  return curves.back();
}

Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

template <std::size_t N>
Json journal_rows_json(const std::vector<JournalRow<N>>& rows, const std::vector<std::string>& columns) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["journal"] = r.journal;
    for (std::size_t i = 0; i < N; ++i) j[columns[i]] = r.percent[i];
    j["units"] = r.units;
    out.push_back(std::move(j));
  }
  return out;
}

Json band_rows_json(const std::vector<BandRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["measure"] = row_label(r.measure_index);
    j["percent"] = r.percent;
    j["sentences"] = r.sentences;
    out.push_back(std::move(j));
  }
  return out;
}

Json reference_values() {
  Json ref;
  ref["note"] =
      "Reference values reported for the full 85,660-article PLOS corpus. They are not computed from this "
      "run and are not expected to match small corpora.";
  ref["abstracts_with_at_least_one_match_percent"] = 84.0;
  ref["abstract_sentences_matched_percent"] = 23.0;
  ref["author_summary_sentences_matched_percent"] = 12.0;
  ref["table1_total"] = {{"articles", 85660},
                         {"author_summaries", 11366},
                         {"mean_article_length", 185.059},
                         {"mean_abstract_length", 9.917},
                         {"mean_author_summary_length", 7.772}};
  ref["table2_total"] = {{"full_imrad_articles", 83893}, {"percent", 97.94}};
  ref["table3_abstracts"] = {{"SIM_E", {1.66, nullptr, nullptr, 98.34}},
                             {"SIM_C", {1.06, 4.53, 16.91, 77.50}},
                             {"SIM_L", {0.64, 1.40, 2.92, 95.03}},
                             {"SIM_max", {2.02, 4.80, 16.93, 76.26}}};
  ref["table3_author_summaries"] = {{"SIM_E", {0.70, nullptr, nullptr, 99.30}},
                                    {"SIM_C", {0.66, 1.97, 8.82, 88.56}},
                                    {"SIM_L", {0.36, 0.78, 1.60, 97.26}},
                                    {"SIM_max", {0.90, 2.53, 10.44, 86.13}}};
  ref["table4_total"] = {16.04, 18.85, 31.47, 33.64};
  ref["table5_total"] = {16.04, 39.83, 29.63, 12.07, 2.42};
  ref["table6_total"] = {{"I", 4.24}, {"M", 0.56}, {"R", 2.61}, {"D", 3.24}, {"Total", 2.36}};
  ref["mean_sentence_words"] = {{"abstracts", 23.55}, {"author_summaries", 23.35}};
  ref["zone_boundaries"] = {0.04, 0.09, 0.95};
  return ref;
}

const std::vector<std::string> kTable4Columns = {"0 sentences", "1 sentence", "2 or 3 sentences",
                                                 "More than 3 sentences"};
const std::vector<std::string> kTable5Columns = {"No text re-use", "0%-25% text re-use", "25%-50% text re-use",
                                                 "50%-75% text re-use", "75%-100% text re-use"};
const std::vector<std::string> kTable6Columns = {"I", "M", "R", "D", "Total"};
const std::vector<std::string> kFig2Columns = {"SIM >= 0.8", "SIM >= 0.6"};

}  // namespace

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::string render_table1(const Report& report) {
  Csv csv(report);
  csv.row({"Journal", "Articles", "Author summaries", "Avg article length", "Avg abstract length",
           "Avg author summary length", "Avg abstract sentence words", "Avg author summary sentence words"});
  for (const auto& s : length_distributions(report.aggregate)) {
    csv.row({s.journal, std::to_string(s.articles), std::to_string(s.summaries), opt_fixed(s.mean_body_sentences),
             opt_fixed(s.mean_abstract_sentences), opt_fixed(s.mean_summary_sentences),
             opt_fixed(s.mean_abstract_sentence_words), opt_fixed(s.mean_summary_sentence_words)});
  }
  return csv.str();
}

std::string render_table2(const Report& report) {
  Csv csv(report);
  csv.row({"Journal", "Articles that contain all four section types", "Percentage"});
  auto emit = [&](const std::string& name, const JournalAggregate& j) {
    const double pct = j.articles ? 100.0 * static_cast<double>(j.full_imrad_articles) / static_cast<double>(j.articles) : 0.0;
    csv.row({name, std::to_string(j.full_imrad_articles), format_fixed(pct)});
  };
  for (const auto& [journal, j] : report.aggregate.journals()) emit(journal, j);
  emit(std::string(kTotalRow), report.aggregate.total());
  return csv.str();
}

std::string render_table3(const Report& report) {
  Csv csv(report);
  csv.comment("denominator=pooled over journals");
  csv.row({"Text", "Measure", "SIM = 1", "1 > SIM >= 0.8", "0.8 > SIM >= 0.6", "0.6 > SIM"});
  if (report.aggregate.empty()) return csv.str();
  const BandDistribution dist = band_distribution(report.aggregate);
  auto emit = [&](const std::string& text, const std::vector<BandRow>& rows) {
    for (const auto& r : rows) {
      const bool exact = r.measure_index == static_cast<std::size_t>(Measure::Exact);
      csv.row({text, row_label(r.measure_index), format_fixed(r.percent[0]),
               exact ? std::string() : format_fixed(r.percent[1]), exact ? std::string() : format_fixed(r.percent[2]),
               format_fixed(r.percent[3])});
    }
  };
  emit("Abstracts", dist.abstracts);
  emit("Author summaries", dist.summaries);
  return csv.str();
}

std::string render_table4(const Report& report) {
  Csv csv(report);
  std::vector<std::string> header{"Journal"};
  header.insert(header.end(), kTable4Columns.begin(), kTable4Columns.end());
  csv.row(header);
  for (const auto& r : match_count_bands(report.aggregate)) csv.row(journal_cells(r));
  return csv.str();
}

std::string render_table5(const Report& report) {
  Csv csv(report);
  std::vector<std::string> header{"Journal"};
  header.insert(header.end(), kTable5Columns.begin(), kTable5Columns.end());
  csv.row(header);
  for (const auto& r : reuse_fraction_bands(report.aggregate)) csv.row(journal_cells(r));
  return csv.str();
}

std::string render_table6(const Report& report) {
  Csv csv(report);
  std::vector<std::string> header{"Journal"};
  header.insert(header.end(), kTable6Columns.begin(), kTable6Columns.end());
  csv.row(header);
  for (const auto& r : section_match_rates(report.aggregate)) csv.row(journal_cells(r));
  return csv.str();
}

std::string render_fig1(const Report& report) {
  Csv csv(report);
  csv.row({"Journal", "Text", "Length", "Count", "Percentage"});
  for (const auto& s : length_distributions(report.aggregate)) {
    auto emit = [&](const char* text, const std::map<std::uint64_t, std::uint64_t>& hist, std::uint64_t units) {
      for (const auto& [len, count] : hist) {
        const double pct = 100.0 * static_cast<double>(count) / static_cast<double>(units);
        csv.row({s.journal, text, std::to_string(len), std::to_string(count), format_fixed(pct)});
      }
    };
    emit("Abstract", s.abstract_hist, s.articles);
    emit("Author summary", s.summary_hist, s.summaries);
  }
  return csv.str();
}

std::string render_fig2(const Report& report) {
  Csv csv(report);
  std::vector<std::string> header{"Journal"};
  header.insert(header.end(), kFig2Columns.begin(), kFig2Columns.end());
  csv.row(header);
  for (const auto& r : journal_match_percentages(report.aggregate)) csv.row(journal_cells(r));
  return csv.str();
}

std::string render_fig3(const Report& report) {
  Csv csv(report);
  csv.comment("scope=" + std::string(to_string(report.aggregate.config().scope)) +
              " mode=" + std::string(to_string(report.meta.positional_mode)));
  csv.row({"Journal", "Bin", "Start", "End", "Matched", "Total", "Rate"});
  const std::size_t bins = report.aggregate.config().bins;
  for (const auto& c : positional_distribution(report.aggregate, report.meta.positional_mode)) {
    for (std::size_t b = 0; b < bins; ++b) {
      csv.row({c.journal, std::to_string(b), format_fixed(static_cast<double>(b) / static_cast<double>(bins)),
               format_fixed(static_cast<double>(b + 1) / static_cast<double>(bins)), std::to_string(c.matched[b]),
               std::to_string(c.total[b]), opt_fixed(c.percent[b])});
    }
  }
  return csv.str();
}

std::string render_fig3_boundaries(const Report& report) {
  Csv csv(report);
  csv.row({"Journal", "Articles", "I/M", "M/R", "R/D"});
  for (const auto& c : positional_distribution(report.aggregate, report.meta.positional_mode)) {
    std::vector<std::string> cells{c.journal, std::to_string(c.articles)};
    for (std::size_t k = 0; k < 3; ++k) cells.push_back(c.mean_boundaries ? format_fixed((*c.mean_boundaries)[k]) : "");
    csv.row(cells);
  }
  return csv.str();
}

std::string render_zones(const Report& report) {
  Csv csv(report);
  csv.comment("window=" + std::to_string(report.meta.zone_window));
  const PositionalCurve curve = total_curve(report);
  const Zones z = detect_zones(curve.percent, report.meta.zone_window);
  if (!z.defined) csv.comment("no zones: " + z.reason);
  csv.row({"Zone", "Start", "End"});
  if (z.defined) {
    const std::array<double, 5> edges{0.0, z.boundaries[0], z.boundaries[1], z.boundaries[2], 1.0};
    const char* names[] = {"A", "B", "C", "D"};
    for (std::size_t k = 0; k < 4; ++k) csv.row({names[k], format_fixed(edges[k]), format_fixed(edges[k + 1])});
  }
  return csv.str();
}

std::string render_json(const Report& report) {
  const CorpusAggregate& agg = report.aggregate;
  const AggregateConfig& cfg = agg.config();
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;

  Json meta;
  meta["tool_version"] = std::string(kToolVersion);
  meta["stopword_version_tag"] = report.meta.stopword_tag;
  meta["threshold"] = cfg.threshold;
  meta["bins"] = cfg.bins;
  meta["title_map_hash"] = report.meta.title_map_hash;
  meta["measures"] = cfg.measures.to_string();
  meta["positional_scope"] = std::string(to_string(cfg.scope));
  meta["positional_mode"] = std::string(to_string(report.meta.positional_mode));
  meta["zone_window"] = report.meta.zone_window;
  meta["min_sentence_tokens"] = report.meta.min_sentence_tokens;
  meta["jaccard_empty_is_one"] = report.meta.jaccard_empty_is_one;
  meta["journal_source"] = report.meta.journal_source;
  meta["case_folding"] = "ascii";
  meta["table3_denominator"] = "pooled";
  doc["metadata"] = std::move(meta);

  const JournalAggregate total = agg.total();
  Json summary;
  summary["files_seen"] = report.files_seen;
  summary["articles_analyzed"] = total.articles;
  summary["files_skipped"] = report.skipped.size();
  summary["abstracts_with_match"] = total.articles - total.match_count_bands[0];
  summary["abstract_sentences"] = total.abstract_sentences;
  summary["abstract_sentences_matched"] = total.matched_abstract_sentences;
  summary["author_summary_sentences"] = total.summary_sentences;
  summary["author_summary_sentences_matched"] = total.matched_summary_sentences;
  doc["summary"] = std::move(summary);

  Json skipped = Json::array();
  for (const auto& s : report.skipped) skipped.push_back({{"path", s.path}, {"reason", s.reason}});
  doc["skipped"] = std::move(skipped);

  Json tables;
  if (!agg.empty()) {
    Json t1 = Json::array();
    for (const auto& s : length_distributions(agg)) {
      Json j;
      j["journal"] = s.journal;
      j["articles"] = s.articles;
      j["author_summaries"] = s.summaries;
      j["full_imrad_articles"] =
          s.journal == kTotalRow ? total.full_imrad_articles : agg.journals().at(s.journal).full_imrad_articles;
      j["mean_body_sentences"] = opt_json(s.mean_body_sentences);
      j["mean_abstract_sentences"] = opt_json(s.mean_abstract_sentences);
      j["mean_author_summary_sentences"] = opt_json(s.mean_summary_sentences);
      j["mean_abstract_sentence_words"] = opt_json(s.mean_abstract_sentence_words);
      j["mean_author_summary_sentence_words"] = opt_json(s.mean_summary_sentence_words);
      Json ah = Json::object();
      for (const auto& [len, count] : s.abstract_hist) ah[std::to_string(len)] = count;
      Json sh = Json::object();
      for (const auto& [len, count] : s.summary_hist) sh[std::to_string(len)] = count;
      j["abstract_length_histogram"] = std::move(ah);
      j["author_summary_length_histogram"] = std::move(sh);
      t1.push_back(std::move(j));
    }
    tables["table1"] = std::move(t1);

    const BandDistribution dist = band_distribution(agg);
    tables["table3"] = {{"abstracts", band_rows_json(dist.abstracts)},
                        {"author_summaries", band_rows_json(dist.summaries)}};
    tables["table4"] = journal_rows_json(match_count_bands(agg), kTable4Columns);
    tables["table5"] = journal_rows_json(reuse_fraction_bands(agg), kTable5Columns);
    tables["table6"] = journal_rows_json(section_match_rates(agg), kTable6Columns);
    tables["fig2"] = journal_rows_json(journal_match_percentages(agg), kFig2Columns);

    Json fig3 = Json::array();
    const auto curves = positional_distribution(agg, report.meta.positional_mode);
    for (const auto& c : curves) {
      Json j;
      j["journal"] = c.journal;
      j["articles"] = c.articles;
      Json rates = Json::array();
      for (const auto& p : c.percent) rates.push_back(opt_json(p));
      j["rate"] = std::move(rates);
      j["matched"] = c.matched;
      j["total"] = c.total;
      j["mean_boundaries"] = c.mean_boundaries ? Json(*c.mean_boundaries) : Json(nullptr);
      fig3.push_back(std::move(j));
    }
    tables["fig3"] = std::move(fig3);

    const Zones z = detect_zones(curves.back().percent, report.meta.zone_window);
    Json zones;
    zones["defined"] = z.defined;
    if (z.defined) {
      zones["bins"] = z.bins;
      zones["boundaries"] = z.boundaries;
    } else {
      zones["reason"] = z.reason;
    }
    tables["zones"] = std::move(zones);
  }
  doc["tables"] = std::move(tables);
  doc["reference_values"] = reference_values();
  return doc.dump(2) + "\n";
}

std::map<std::string, std::string> render_all(const Report& report) {
  std::map<std::string, std::string> out;
  out["report.json"] = render_json(report);
  out["table1.csv"] = render_table1(report);
  out["table2.csv"] = render_table2(report);
  out["table3.csv"] = render_table3(report);
  out["table4.csv"] = render_table4(report);
  out["table5.csv"] = render_table5(report);
  out["table6.csv"] = render_table6(report);
  out["fig1.csv"] = render_fig1(report);
  out["fig2.csv"] = render_fig2(report);
  out["fig3.csv"] = render_fig3(report);
  out["fig3_boundaries.csv"] = render_fig3_boundaries(report);
  out["zones.csv"] = render_zones(report);
  return out;
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : render_all(report)) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << content;
    if (!f) throw std::runtime_error("write failed for " + (dir / name).string());
  }
}

}  // namespace absreuse
