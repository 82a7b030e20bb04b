#include "shiftscan/record_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "shiftscan/errors.hpp"
#include "string_util.hpp"

namespace shiftscan {

std::string_view to_string(Source source) {
  switch (source) {
    case Source::wos:
      return "WOS";
    case Source::medline:
      return "MEDLINE";
  }
  return "UNKNOWN";
}

namespace {

bool is_trailing_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == ' ';
}

// Position of a ", DOI" segment that is followed by a space or the end.
std::size_t find_doi_segment(const std::string& s) {
  std::size_t pos = 0;
  while ((pos = s.find(", DOI", pos)) != std::string::npos) {
    std::size_t after = pos + 5;
    if (after == s.size() || s[after] == ' ') return pos;
    pos = after;
  }
  return std::string::npos;
}

}  // namespace

RefKey normalize_ref(std::string_view raw) {
  std::string key = detail::ascii_upper(detail::collapse_whitespace(raw));
  // Stripping punctuation can expose a DOI segment at the tail ("X, DOI."), so
  // iterate to a fixed point.
  while (true) {
    std::size_t before = key.size();
    if (auto pos = find_doi_segment(key); pos != std::string::npos) key.resize(pos);
    while (!key.empty() && is_trailing_punct(key.back())) key.pop_back();
    if (key.size() == before) break;
  }
  if (key.empty()) throw EmptyRef();
  return RefKey(std::move(key));
}

void PaperRecord::canonicalize_refs() {
  std::sort(cited_refs.begin(), cited_refs.end());
  cited_refs.erase(std::unique(cited_refs.begin(), cited_refs.end()), cited_refs.end());
}

YearRange parse_year_range(std::string_view text) {
  auto parts = detail::split(detail::trim(text), ':');
  if (parts.size() != 2) throw std::invalid_argument("year range must look like A:B");
  auto first = detail::parse_int(detail::trim(parts[0]));
  auto last = detail::parse_int(detail::trim(parts[1]));
  if (!first || !last) throw std::invalid_argument("year range must look like A:B");
  if (*first > *last) throw std::invalid_argument("year range is reversed");
  return {*first, *last};
}

Corpus::Corpus(std::vector<PaperRecord> records, YearRange year_range)
    : records_(std::move(records)), year_range_(year_range) {
  if (year_range_.first > year_range_.last) throw std::invalid_argument("year range is reversed");
  std::unordered_set<std::string_view> ids;
  ids.reserve(records_.size());
  for (auto& record : records_) {
    record.canonicalize_refs();
    if (!ids.insert(record.record_id).second) throw DuplicateRecord(record.record_id);
  }
}

Corpus Corpus::spanning(std::vector<PaperRecord> records) {
  if (records.empty()) throw std::invalid_argument("cannot derive a year range from no records");
  auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                      [](const auto& a, const auto& b) { return a.pub_year < b.pub_year; });
  YearRange range{lo->pub_year, hi->pub_year};
  return Corpus(std::move(records), range);
}

YearSlice::YearSlice(int year, std::vector<PaperRecord> records)
    : year_(year), records_(std::move(records)) {
  for (auto& record : records_) record.canonicalize_refs();
  std::unordered_set<std::string_view> refs;
  for (const auto& record : records_)
    for (const auto& ref : record.cited_refs) refs.insert(ref.str());
  distinct_refs_ = refs.size();
}

std::vector<YearSlice> slice_by_year(const Corpus& corpus) {
  const auto range = corpus.year_range();
  std::vector<std::vector<PaperRecord>> buckets(static_cast<std::size_t>(range.span()));
  for (const auto& record : corpus.records()) {
    if (!range.contains(record.pub_year)) throw YearOutOfRange(record.pub_year, range.first, range.last);
    buckets[static_cast<std::size_t>(record.pub_year - range.first)].push_back(record);
  }
  std::vector<YearSlice> slices;
  slices.reserve(buckets.size());
  for (std::size_t i = 0; i < buckets.size(); ++i)
    slices.emplace_back(range.first + static_cast<int>(i), std::move(buckets[i]));
  return slices;
}

ThresholdConfig::ThresholdConfig(int citation_min, int cocitation_min)
    : citation_min_(citation_min), cocitation_min_(cocitation_min) {
  if (citation_min_ < 1 || cocitation_min_ < 1)
    throw InvalidThreshold("thresholds must be positive: " + to_string());
  // A pair is never co-cited more often than either member is cited.
  if (cocitation_min_ > citation_min_)
    throw InvalidThreshold("co-citation threshold exceeds citation threshold: " + to_string());
}

std::string ThresholdConfig::to_string() const {
  return std::to_string(citation_min_) + "/" + std::to_string(cocitation_min_);
}

ThresholdConfig parse_threshold(std::string_view text) {
  auto parts = detail::split(detail::trim(text), '/');
  if (parts.size() != 2) throw InvalidThreshold("threshold must look like c/k: '" + std::string(text) + "'");
  auto c = detail::parse_int(detail::trim(parts[0]));
  auto k = detail::parse_int(detail::trim(parts[1]));
  if (!c || !k) throw InvalidThreshold("threshold must look like c/k: '" + std::string(text) + "'");
  return ThresholdConfig(*c, *k);
}

std::vector<ThresholdConfig> parse_threshold_list(std::string_view text) {
  std::vector<ThresholdConfig> out;
  for (auto part : detail::split(text, ',')) {
    if (detail::trim(part).empty()) continue;
    out.push_back(parse_threshold(part));
  }
  if (out.empty()) throw InvalidThreshold("empty threshold list");
  return out;
}

}  // namespace shiftscan
