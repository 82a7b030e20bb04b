#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "../decimal_format.hpp"
#include "../string_util.hpp"
#include "shiftscan/citation_analysis.hpp"
#include "shiftscan/cli.hpp"
#include "shiftscan/errors.hpp"
#include "shiftscan/format_parsers.hpp"

namespace shiftscan::cli {

std::vector<ThresholdConfig> default_thresholds() {
  return {{15, 11}, {15, 8}, {11, 9}, {10, 8}, {10, 5}};
}

namespace {

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read input file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading input file " + path);
  std::string text = std::move(buffer).str();
  if (detail::trim(text).empty()) throw IoError("input file is empty: " + path);
  return text;
}

void parse_into(const std::string& path, Source source, const RunConfig& config, std::ostream& diag,
                std::vector<PaperRecord>& records) {
  const std::string text = read_input(path);
  const ParseMode mode = config.strict ? ParseMode::strict : ParseMode::lenient;
  ParseResult parsed;
  try {
    parsed = source == Source::wos ? parse_wos(text, mode) : parse_medline(text, mode);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.reason(), path);
  } catch (const MalformedRecord& e) {
    throw MalformedRecord(e.line(), e.reason(), path);
  }
  if (parsed.record_blocks == 0) throw IoError("no records found in " + path);
  for (const auto& d : parsed.diagnostics) diag << path << ": skipped: " << d.message << '\n';
  diag << path << ": " << parsed.records.size() << " records, " << parsed.skipped() << " skipped\n";
  std::move(parsed.records.begin(), parsed.records.end(), std::back_inserter(records));
}

Corpus subset(const Corpus& corpus, Source source) {
  std::vector<PaperRecord> records;
  for (const auto& record : corpus.records())
    if (record.source == source) records.push_back(record);
  return Corpus(std::move(records), corpus.year_range());
}

std::vector<Source> sources_present(const Corpus& corpus) {
  std::vector<Source> present;
  for (Source source : {Source::wos, Source::medline}) {
    bool any = std::any_of(corpus.records().begin(), corpus.records().end(),
                           [source](const PaperRecord& r) { return r.source == source; });
    if (any) present.push_back(source);
  }
  return present;
}

std::string range_label(int first, int last) { return std::to_string(first) + ":" + std::to_string(last); }

}  // namespace

Corpus load_corpus(const RunConfig& config, std::ostream& diag) {
  if (config.wos_paths.empty() && config.medline_paths.empty()) throw IoError("no input files given");
  std::vector<PaperRecord> records;
  for (const auto& path : config.wos_paths) parse_into(path, Source::wos, config, diag, records);
  for (const auto& path : config.medline_paths) parse_into(path, Source::medline, config, diag, records);

  std::vector<PaperRecord> kept;
  kept.reserve(records.size());
  std::unordered_set<std::string> ids;
  std::size_t out_of_range = 0;
  for (auto& record : records) {
    if (config.years && !config.years->contains(record.pub_year)) {
      ++out_of_range;
      continue;
    }
    if (!ids.insert(record.record_id).second) {
      if (config.strict) throw DuplicateRecord(record.record_id);
      diag << "duplicate record id " << record.record_id << " skipped\n";
      continue;
    }
    kept.push_back(std::move(record));
  }
  if (out_of_range > 0) diag << out_of_range << " records outside the year range dropped\n";
  if (config.years) return Corpus(std::move(kept), *config.years);
  if (kept.empty()) throw IoError("no usable records in input");
  return Corpus::spanning(std::move(kept));
}

StopwordList resolve_stopwords(const RunConfig& config) {
  if (config.stopwords_path) return StopwordList::load_file(*config.stopwords_path);
  if (const char* env = std::getenv("SHIFTSCAN_STOPWORDS"); env != nullptr && *env != '\0')
    return StopwordList::load_file(env);
  return StopwordList::english();
}

Table summary_table(const Corpus& corpus) {
  const auto sources = sources_present(corpus);
  const bool by_source = sources.size() > 1;
  Table table;
  table.header = {"year", "papers", "distinct_refs"};
  if (by_source)
    for (Source source : sources) table.header.push_back("papers_" + detail::ascii_lower(std::string(to_string(source))));

  std::unordered_set<std::string_view> all_refs;
  std::map<Source, std::size_t> totals;
  for (const auto& slice : slice_by_year(corpus)) {
    std::map<Source, std::size_t> per_source;
    for (const auto& record : slice.records()) {
      ++per_source[record.source];
      ++totals[record.source];
    }
    std::vector<std::string> row{std::to_string(slice.year()), std::to_string(slice.n_papers()),
                                 std::to_string(slice.distinct_refs())};
    if (by_source)
      for (Source source : sources) row.push_back(std::to_string(per_source[source]));
    table.rows.push_back(std::move(row));
  }
  for (const auto& record : corpus.records())
    for (const auto& ref : record.cited_refs) all_refs.insert(ref.str());
  std::vector<std::string> total{"all", std::to_string(corpus.size()), std::to_string(all_refs.size())};
  if (by_source)
    for (Source source : sources) total.push_back(std::to_string(totals[source]));
  table.rows.push_back(std::move(total));
  return table;
}

std::vector<std::pair<int, Table>> rsi_tables(const Corpus& corpus, std::span<const ThresholdConfig> thresholds,
                                              std::span<const int> gaps) {
  const auto slices = slice_by_year(corpus);
  // Core sets per threshold, shared by every gap.
  std::vector<std::future<std::vector<CoreRefSet>>> pending;
  for (const auto& t : thresholds)
    pending.push_back(std::async(std::launch::async, [&slices, t] {
      std::vector<CoreRefSet> cores;
      for (const auto& slice : slices) cores.push_back(core_references(slice, t));
      return cores;
    }));
  std::vector<std::vector<CoreRefSet>> cores;
  for (auto& f : pending) cores.push_back(f.get());

  std::vector<std::pair<int, Table>> tables;
  for (int gap : gaps) {
    Table table;
    table.header.push_back("thresholds");
    for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
      auto cells = rsi_series(cores[ti], gap);
      if (ti == 0)
        for (const auto& cell : cells)
          table.header.push_back(std::to_string(cell.year_a) + "/" + std::to_string(cell.year_b));
      std::vector<std::string> row{thresholds[ti].to_string()};
      for (const auto& cell : cells)
        row.push_back(std::to_string(cell.n_a) + " | " + std::to_string(cell.shared) + "/" + cell.formatted(2));
      table.rows.push_back(std::move(row));
    }
    tables.emplace_back(gap, std::move(table));
  }
  return tables;
}

Table trend_table(const Corpus& corpus, std::string_view term, const StopwordList& stop) {
  Table table;
  table.header = {"source", "year", "df", "n_docs", "rel_freq"};
  for (Source source : sources_present(corpus)) {
    auto series = term_trend(subset(corpus, source), term, stop);
    for (const auto& point : series.points) {
      std::string rel = point.empty_slice ? "0.000000"
                                          : detail::format_ratio(static_cast<std::uint64_t>(point.df), point.n_docs, 6);
      table.rows.push_back({std::string(to_string(source)), std::to_string(point.year), std::to_string(point.df),
                            std::to_string(point.n_docs), rel});
    }
  }
  return table;
}

Table terms_table(const Corpus& corpus, const RunConfig& config, const StopwordList& stop) {
  const auto range = corpus.year_range();
  YearWindow window_a = config.window_a.value_or(YearWindow{range.first, range.first + 1});
  YearWindow window_b = config.window_b.value_or(YearWindow{window_a.last + 1, window_a.last + 2});
  if (!config.window_a && !config.window_b && range.span() < 4)
    throw InsufficientYears("default term windows need at least four years");

  Table table;
  table.header = {"source", "window_a", "window_b", "rank", "term", "df_a", "df_b", "ratio"};
  for (Source source : sources_present(corpus)) {
    auto report = emerging_terms(subset(corpus, source), window_a, window_b, stop,
                                 EmergingOptions{config.min_df, config.min_ratio});
    std::size_t rank = 0;
    for (const auto& term : report.terms) {
      std::string ratio =
          term.is_new() ? "NEW"
                        : detail::format_ratio(static_cast<std::uint64_t>(term.df_b) * report.n_docs_a,
                                               static_cast<std::uint64_t>(term.df_a) * report.n_docs_b, 6);
      table.rows.push_back({std::string(to_string(source)), range_label(window_a.first, window_a.last),
                            range_label(window_b.first, window_b.last), std::to_string(++rank), term.term,
                            std::to_string(term.df_a), std::to_string(term.df_b), ratio});
    }
  }
  return table;
}

namespace {

struct Artifact {
  std::string name;
  std::string content;
};

std::vector<Artifact> build_artifacts(std::string_view command, const RunConfig& config, std::ostream& err) {
  const std::string ext(extension(config.format));
  auto file = [&](const std::string& stem) { return stem + "." + ext; };
  auto rendered = [&](const Table& table) { return render(table, config.format); };

  if (command == "trend" && !config.term) throw std::invalid_argument("trend requires --term");
  if (command == "trend") {
    // Reject bad queries before touching the input.
    auto stop = resolve_stopwords(config);
    term_trend(std::span<const TermTable>{}, *config.term, stop);
  }

  Corpus corpus = load_corpus(config, err);
  std::vector<Artifact> artifacts;
  if (command == "ingest" || command == "report") artifacts.push_back({file("summary"), rendered(summary_table(corpus))});
  if (command == "rsi" || command == "report")
    for (auto& [gap, table] : rsi_tables(corpus, config.thresholds, config.gaps))
      artifacts.push_back({file("rsi_gap" + std::to_string(gap)), rendered(table)});
  if (command == "trend") {
    auto stop = resolve_stopwords(config);
    auto tokens = tokenize_title(*config.term);
    artifacts.push_back({file("trend_" + tokens.front()), rendered(trend_table(corpus, *config.term, stop))});
  }
  if (command == "terms" || command == "report")
    artifacts.push_back({file("terms"), rendered(terms_table(corpus, config, resolve_stopwords(config)))});

  if (command == "report") {
    Table manifest;
    manifest.header = {"file", "bytes", "sha256"};
    for (const auto& artifact : artifacts)
      manifest.rows.push_back({artifact.name, std::to_string(artifact.content.size()), sha256_hex(artifact.content)});
    artifacts.push_back({file("manifest"), rendered(manifest)});
  }
  return artifacts;
}

int run(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  static constexpr std::string_view kCommands[] = {"ingest", "rsi", "trend", "terms", "report"};
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
    err << "unknown command: " << command << '\n';
    return exit_code::usage;
  }
  if (command == "report" && !config.out_dir) {
    err << "report requires --out\n";
    return exit_code::usage;
  }
  auto artifacts = build_artifacts(command, config, err);
  if (!config.out_dir) {
    for (std::size_t i = 0; i < artifacts.size(); ++i) {
      if (i > 0) out << '\n';
      out << artifacts[i].content;
    }
    out.flush();
    return exit_code::ok;
  }
  std::error_code ec;
  std::filesystem::create_directories(*config.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + config.out_dir->string());
  for (const auto& artifact : artifacts) write_file_atomic(*config.out_dir / artifact.name, artifact.content);
  return exit_code::ok;
}

}  // namespace

int run_command(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return run(command, config, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::io;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse;
  } catch (const MalformedRecord& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse;
  } catch (const DuplicateRecord& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse;
  } catch (const InsufficientYears& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::insufficient_data;
  } catch (const YearOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::insufficient_data;
  } catch (const StopwordQuery& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::bad_query;
  } catch (const InvalidTerm& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::bad_query;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

}  // namespace shiftscan::cli
