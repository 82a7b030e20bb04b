#include "shiftscan/text_analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "shiftscan/errors.hpp"
#include "string_util.hpp"

namespace shiftscan {

namespace detail {
// Generated from data/stopwords_en.txt at configure time.
extern const char* const kEnglishStopwords;
}  // namespace detail

StopwordList::StopwordList(std::set<std::string> words) {
  for (auto& word : words) words_.insert(detail::ascii_lower(word));
}

StopwordList StopwordList::parse(std::string_view text) {
  StopwordList list;
  for (auto line : detail::split(text, '\n')) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (!line.empty()) list.words_.insert(detail::ascii_lower(std::string(line)));
  }
  return list;
}

StopwordList StopwordList::load(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

StopwordList StopwordList::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open stopword list " + path);
  return load(in);
}

const StopwordList& StopwordList::english() {
  static const StopwordList list = parse(detail::kEnglishStopwords);
  return list;
}

namespace {

// Decodes one UTF-8 sequence at `i`; returns its length (1 for stray bytes).
std::size_t decode(std::string_view s, std::size_t i, std::uint32_t& cp) {
  auto b = static_cast<unsigned char>(s[i]);
  std::size_t len = b < 0x80 ? 1 : b >= 0xF0 ? 4 : b >= 0xE0 ? 3 : b >= 0xC0 ? 2 : 1;
  if (i + len > s.size()) len = 1;
  cp = len == 1 ? b : len == 2 ? (b & 0x1Fu) : len == 3 ? (b & 0x0Fu) : (b & 0x07u);
  for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3Fu);
  return len;
}

bool is_word_code_point(std::uint32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  // Latin-1 symbols, general punctuation, replacement character.
  if (cp >= 0x80 && cp <= 0xBF) return false;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;
  if (cp == 0xFFFD) return false;
  return true;
}

bool all_digits(std::string_view token) {
  return std::all_of(token.begin(), token.end(), [](char c) { return detail::is_ascii_digit(c); });
}

}  // namespace

std::vector<std::string> tokenize_title(std::string_view title) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && !all_digits(current)) tokens.push_back(current);
    current.clear();
  };
  for (std::size_t i = 0; i < title.size();) {
    std::uint32_t cp = 0;
    std::size_t len = decode(title, i, cp);
    if (is_word_code_point(cp)) {
      if (len == 1) {
        char c = title[i];
        current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
      } else {
        current.append(title.substr(i, len));
      }
    } else {
      flush();
    }
    i += len;
  }
  flush();
  return tokens;
}

int TermTable::frequency(std::string_view term) const {
  auto it = df.find(std::string(term));
  return it == df.end() ? 0 : it->second;
}

TermTable document_frequencies(const YearSlice& slice, const StopwordList& stop) {
  TermTable table{slice.year(), slice.n_papers(), {}};
  std::vector<std::string> seen;
  for (const auto& record : slice.records()) {
    seen = tokenize_title(record.title);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (const auto& token : seen)
      if (!stop.contains(token)) ++table.df[token];
  }
  return table;
}

namespace {

std::vector<TermTable> term_tables(const Corpus& corpus, const StopwordList& stop) {
  std::vector<TermTable> tables;
  for (const auto& slice : slice_by_year(corpus)) tables.push_back(document_frequencies(slice, stop));
  return tables;
}

std::string checked_term(std::string_view term, const StopwordList& stop) {
  auto tokens = tokenize_title(term);
  if (tokens.size() != 1 || tokens.front().size() != detail::trim(term).size())
    throw InvalidTerm("query '" + std::string(term) + "' is not a single title token");
  if (stop.contains(tokens.front())) throw StopwordQuery(tokens.front());
  return tokens.front();
}

}  // namespace

TrendSeries term_trend(std::span<const TermTable> tables, std::string_view term, const StopwordList& stop) {
  TrendSeries series{checked_term(term, stop), {}};
  for (const auto& table : tables) {
    TrendPoint point;
    point.year = table.year;
    point.df = table.frequency(series.term);
    point.n_docs = table.n_docs;
    point.empty_slice = table.n_docs == 0;
    point.rel_freq = point.empty_slice ? 0.0 : static_cast<double>(point.df) / static_cast<double>(table.n_docs);
    series.points.push_back(point);
  }
  return series;
}

TrendSeries term_trend(const Corpus& corpus, std::string_view term, const StopwordList& stop) {
  checked_term(term, stop);
  auto tables = term_tables(corpus, stop);
  return term_trend(tables, term, stop);
}

EmergingReport emerging_terms(std::span<const TermTable> tables, YearWindow window_a, YearWindow window_b,
                              EmergingOptions options) {
  if (window_a.first > window_a.last || window_b.first > window_b.last) throw WindowOrder();
  if (window_a.first <= window_b.last && window_b.first <= window_a.last) throw WindowOverlap();
  if (window_b.first <= window_a.last) throw WindowOrder();
  if (options.min_df < 1) throw std::invalid_argument("min_df must be at least 1");

  EmergingReport report{window_a, window_b, 0, 0, {}};
  std::map<std::string, int> pooled_a;
  std::map<std::string, int> pooled_b;
  bool covered_a = false;
  bool covered_b = false;
  for (const auto& table : tables) {
    if (window_a.contains(table.year)) {
      covered_a = true;
      report.n_docs_a += table.n_docs;
      for (const auto& [term, df] : table.df) pooled_a[term] += df;
    } else if (window_b.contains(table.year)) {
      covered_b = true;
      report.n_docs_b += table.n_docs;
      for (const auto& [term, df] : table.df) pooled_b[term] += df;
    }
  }
  if (!covered_a || !covered_b) throw InsufficientYears("year window lies outside the corpus range");

  const double n_a = static_cast<double>(report.n_docs_a);
  const double n_b = static_cast<double>(report.n_docs_b);
  for (const auto& [term, df_b] : pooled_b) {
    if (df_b < options.min_df) continue;
    auto it = pooled_a.find(term);
    int df_a = it == pooled_a.end() ? 0 : it->second;
    if (df_a == 0) {
      report.terms.push_back({term, 0, df_b, std::nullopt});
      continue;
    }
    // rel_b / rel_a >= min_ratio, cross-multiplied.
    if (static_cast<double>(df_b) * n_a < options.min_ratio * static_cast<double>(df_a) * n_b) continue;
    report.terms.push_back({term, df_a, df_b, (static_cast<double>(df_b) * n_a) / (static_cast<double>(df_a) * n_b)});
  }

  // Pooled doc counts are shared by every term, so ratios compare as df_b/df_a.
  std::sort(report.terms.begin(), report.terms.end(), [](const EmergingTerm& x, const EmergingTerm& y) {
    if (x.is_new() != y.is_new()) return x.is_new();
    if (!x.is_new()) {
      auto lhs = static_cast<std::int64_t>(x.df_b) * y.df_a;
      auto rhs = static_cast<std::int64_t>(y.df_b) * x.df_a;
      if (lhs != rhs) return lhs > rhs;
    }
    if (x.df_b != y.df_b) return x.df_b > y.df_b;
    return x.term < y.term;
  });
  return report;
}

EmergingReport emerging_terms(const Corpus& corpus, YearWindow window_a, YearWindow window_b,
                              const StopwordList& stop, EmergingOptions options) {
  auto tables = term_tables(corpus, stop);
  return emerging_terms(tables, window_a, window_b, options);
}

}  // namespace shiftscan
