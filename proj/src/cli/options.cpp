#include <CLI11.hpp>

#include <ostream>
#include <sstream>

#include "../string_util.hpp"
#include "shiftscan/cli.hpp"
#include "shiftscan/errors.hpp"

namespace shiftscan::cli {

namespace {

YearWindow parse_window(const std::string& text) {
  auto range = parse_year_range(text);
  return {range.first, range.last};
}

std::vector<int> parse_gaps(const std::string& text) {
  std::vector<int> gaps;
  for (auto part : detail::split(text, ',')) {
    auto trimmed = detail::trim(part);
    if (trimmed.empty()) continue;
    auto gap = detail::parse_int(trimmed);
    if (!gap || *gap < 1) throw std::invalid_argument("gaps must be positive integers: '" + text + "'");
    gaps.push_back(*gap);
  }
  if (gaps.empty()) throw std::invalid_argument("empty gap list");
  return gaps;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reference stability and title-term trends for bibliographic exports", "shiftscan"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file with the same keys as the flags; flags override it");

  RunConfig config;
  std::string years;
  std::string thresholds;
  std::string gaps;
  std::string stopwords;
  std::string term;
  std::string window_a;
  std::string window_b;
  std::string format = "tsv";
  std::string out_dir;

  app.add_option("--wos", config.wos_paths, "Web of Science field-tagged export(s)");
  app.add_option("--medline", config.medline_paths, "MEDLINE .nbib export(s)");
  app.add_option("--years", years, "Inclusive publication-year range A:B");
  app.add_option("--thresholds", thresholds, "Citation/co-citation thresholds c/k[,c/k...]")
      ->default_str("15/11,15/8,11/9,10/8,10/5");
  app.add_option("--gaps", gaps, "Year gaps for RSI intervals, e.g. 1,2")->default_str("1,2");
  app.add_option("--stopwords", stopwords, "Stopword list (falls back to $SHIFTSCAN_STOPWORDS, then the bundled list)");
  app.add_option("--term", term, "Title term for the trend command");
  app.add_option("--min-df", config.min_df, "Minimum pooled document frequency in the later window")
      ->capture_default_str();
  app.add_option("--min-ratio", config.min_ratio, "Minimum relative-frequency growth ratio")->capture_default_str();
  app.add_option("--window-a", window_a, "Earlier year window A:B for the terms report");
  app.add_option("--window-b", window_b, "Later year window C:D for the terms report");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"tsv", "csv"}))->capture_default_str();
  app.add_option("--out", out_dir, "Output directory (stdout when omitted, except for report)");
  app.add_flag("--strict", config.strict, "Abort on the first malformed record");

  std::string command;
  for (const char* name : {"ingest", "rsi", "trend", "terms", "report"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&command, name] { command = name; });
  }
  app.get_subcommand("ingest")->description("Per-year paper and distinct-reference counts");
  app.get_subcommand("rsi")->description("Reference stability index matrices, one per gap");
  app.get_subcommand("trend")->description("Relative title frequency of one term per year");
  app.get_subcommand("terms")->description("New and growing title terms between two year windows");
  app.get_subcommand("report")->description("Summary, RSI matrices and terms report with a hash manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out_msg;
    std::ostringstream err_msg;
    int code = app.exit(e, out_msg, err_msg);
    out << out_msg.str();
    err << err_msg.str();
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (!years.empty()) config.years = parse_year_range(years);
    if (!thresholds.empty()) config.thresholds = parse_threshold_list(thresholds);
    if (!gaps.empty()) config.gaps = parse_gaps(gaps);
    if (!stopwords.empty()) config.stopwords_path = stopwords;
    if (!term.empty()) config.term = term;
    if (!window_a.empty()) config.window_a = parse_window(window_a);
    if (!window_b.empty()) config.window_b = parse_window(window_b);
    if (config.window_a.has_value() != config.window_b.has_value())
      throw std::invalid_argument("--window-a and --window-b go together");
    config.format = format == "csv" ? OutputFormat::csv : OutputFormat::tsv;
    if (!out_dir.empty()) config.out_dir = out_dir;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
  return run_command(command, config, out, err);
}

}  // namespace shiftscan::cli
