#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shiftscan/record_model.hpp"

namespace shiftscan {

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::set<std::string> words);

  // One token per line; '#' starts a comment; entries are lowercased.
  static StopwordList parse(std::string_view text);
  static StopwordList load(std::istream& in);
  static StopwordList load_file(const std::string& path);  // IoError on failure
  // The bundled English list.
  static const StopwordList& english();

  bool contains(std::string_view token) const { return words_.find(token) != words_.end(); }
  std::size_t size() const noexcept { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const noexcept { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
};

// Lowercase ASCII, split on anything that is not a letter or digit (hyphens
// included), drop pure-digit tokens. Non-ASCII code points count as letters.
std::vector<std::string> tokenize_title(std::string_view title);

struct TermTable {
  int year = 0;
  std::size_t n_docs = 0;
  std::map<std::string, int> df;

  int frequency(std::string_view term) const;
};

TermTable document_frequencies(const YearSlice& slice, const StopwordList& stop);

struct TrendPoint {
  int year = 0;
  int df = 0;
  std::size_t n_docs = 0;
  double rel_freq = 0;
  bool empty_slice = false;  // rel_freq forced to 0
};

struct TrendSeries {
  std::string term;
  std::vector<TrendPoint> points;
};

// Throws StopwordQuery when `term` is a stopword and InvalidTerm when it is
// not a single token as produced by tokenize_title.
TrendSeries term_trend(const Corpus& corpus, std::string_view term, const StopwordList& stop);
TrendSeries term_trend(std::span<const TermTable> tables, std::string_view term, const StopwordList& stop);

// Inclusive year window.
struct YearWindow {
  int first = 0;
  int last = 0;

  bool contains(int year) const noexcept { return year >= first && year <= last; }
};

struct EmergingTerm {
  std::string term;
  int df_a = 0;
  int df_b = 0;
  std::optional<double> ratio;  // nullopt: NEW (absent from window a)

  bool is_new() const noexcept { return !ratio.has_value(); }
};

struct EmergingReport {
  YearWindow window_a;
  YearWindow window_b;
  std::size_t n_docs_a = 0;
  std::size_t n_docs_b = 0;
  std::vector<EmergingTerm> terms;  // ranked
};

struct EmergingOptions {
  int min_df = 3;
  double min_ratio = 2.0;
};

// Terms with df_b >= min_df that are absent from window a (NEW) or whose
// relative frequency grew by at least min_ratio. Ranked NEW first, then by
// descending ratio, descending df_b, term. Throws WindowOverlap or
// WindowOrder for bad windows and std::invalid_argument when min_df < 1.
EmergingReport emerging_terms(const Corpus& corpus, YearWindow window_a, YearWindow window_b,
                              const StopwordList& stop, EmergingOptions options = {});
EmergingReport emerging_terms(std::span<const TermTable> tables, YearWindow window_a, YearWindow window_b,
                              EmergingOptions options = {});

}  // namespace shiftscan
