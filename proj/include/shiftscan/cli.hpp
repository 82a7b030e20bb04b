#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shiftscan/record_model.hpp"
#include "shiftscan/text_analysis.hpp"

namespace shiftscan::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int io = 2;
inline constexpr int parse = 3;
inline constexpr int insufficient_data = 4;
inline constexpr int bad_query = 5;
}  // namespace exit_code

enum class OutputFormat { tsv, csv };

std::vector<ThresholdConfig> default_thresholds();

struct RunConfig {
  std::vector<std::string> wos_paths;
  std::vector<std::string> medline_paths;
  std::optional<YearRange> years;
  std::vector<ThresholdConfig> thresholds = default_thresholds();
  std::vector<int> gaps{1, 2};
  std::optional<std::string> stopwords_path;
  std::optional<std::string> term;
  int min_df = 3;
  double min_ratio = 2.0;
  std::optional<YearWindow> window_a;
  std::optional<YearWindow> window_b;
  OutputFormat format = OutputFormat::tsv;
  std::optional<std::filesystem::path> out_dir;
  bool strict = false;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// TSV (tabs/newlines inside fields become spaces) or RFC-4180 CSV, '\n' line
// endings.
std::string render(const Table& table, OutputFormat format);
std::string_view extension(OutputFormat format);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

// Writes via a temporary sibling and rename; throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Reads and parses every input file, applying --years, strictness and
// duplicate-id handling. Diagnostics go to `diag`.
Corpus load_corpus(const RunConfig& config, std::ostream& diag);

// Stopword list from --stopwords, else $SHIFTSCAN_STOPWORDS, else the bundled list.
StopwordList resolve_stopwords(const RunConfig& config);

Table summary_table(const Corpus& corpus);
// One table per gap; rows are thresholds, columns year intervals.
std::vector<std::pair<int, Table>> rsi_tables(const Corpus& corpus, std::span<const ThresholdConfig> thresholds,
                                              std::span<const int> gaps);
Table trend_table(const Corpus& corpus, std::string_view term, const StopwordList& stop);
Table terms_table(const Corpus& corpus, const RunConfig& config, const StopwordList& stop);

// Runs one subcommand ("ingest", "rsi", "trend", "terms", "report") and maps
// errors to exit codes. Tables go to `out` unless config.out_dir is set.
int run_command(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command-line entry point, including --config handling.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shiftscan::cli
