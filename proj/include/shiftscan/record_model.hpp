#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shiftscan {

enum class Source { wos, medline };

std::string_view to_string(Source source);

// Canonical key of one cited work. Only normalize_ref() produces one, so every
// RefKey in circulation is already normalized.
class RefKey {
 public:
  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const RefKey&, const RefKey&) = default;
  friend bool operator==(const RefKey&, const RefKey&) = default;

 private:
  friend RefKey normalize_ref(std::string_view raw);
  explicit RefKey(std::string value) : value_(std::move(value)) {}

  std::string value_;
};

// Uppercases ASCII, collapses whitespace, drops a trailing ", DOI ..." segment
// and trailing punctuation. Throws EmptyRef when nothing is left.
RefKey normalize_ref(std::string_view raw);

struct PaperRecord {
  std::string record_id;
  int pub_year = 0;
  std::string title;
  std::vector<RefKey> cited_refs;  // sorted, unique
  Source source = Source::wos;
  std::vector<std::string> mesh_terms;  // MEDLINE only; metadata

  // Sorts and dedups cited_refs in place.
  void canonicalize_refs();

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

struct YearRange {
  int first = 0;
  int last = 0;

  bool contains(int year) const noexcept { return year >= first && year <= last; }
  int span() const noexcept { return last - first + 1; }

  friend bool operator==(const YearRange&, const YearRange&) = default;
};

// Parses "A:B" (inclusive); throws std::invalid_argument on malformed input.
YearRange parse_year_range(std::string_view text);

class Corpus {
 public:
  // Throws DuplicateRecord on a repeated record_id. Records outside the range
  // are kept here and rejected by slice_by_year().
  Corpus(std::vector<PaperRecord> records, YearRange year_range);

  // Range spanning the records' own years; throws std::invalid_argument if empty.
  static Corpus spanning(std::vector<PaperRecord> records);

  std::span<const PaperRecord> records() const noexcept { return records_; }
  const YearRange& year_range() const noexcept { return year_range_; }
  std::size_t size() const noexcept { return records_.size(); }

 private:
  std::vector<PaperRecord> records_;
  YearRange year_range_;
};

class YearSlice {
 public:
  YearSlice(int year, std::vector<PaperRecord> records);

  int year() const noexcept { return year_; }
  std::span<const PaperRecord> records() const noexcept { return records_; }
  std::size_t n_papers() const noexcept { return records_.size(); }
  std::size_t distinct_refs() const noexcept { return distinct_refs_; }
  bool empty() const noexcept { return records_.empty(); }

 private:
  int year_;
  std::vector<PaperRecord> records_;
  std::size_t distinct_refs_ = 0;
};

// Ascending by year, one slice per year of the corpus range. Throws
// YearOutOfRange for any record outside the range.
std::vector<YearSlice> slice_by_year(const Corpus& corpus);

// Citation threshold c and co-citation threshold k with 1 <= k <= c.
class ThresholdConfig {
 public:
  ThresholdConfig(int citation_min, int cocitation_min);

  int citation_min() const noexcept { return citation_min_; }
  int cocitation_min() const noexcept { return cocitation_min_; }
  std::string to_string() const;

  friend bool operator==(const ThresholdConfig&, const ThresholdConfig&) = default;

 private:
  int citation_min_;
  int cocitation_min_;
};

// "c/k"
ThresholdConfig parse_threshold(std::string_view text);
// "c/k[,c/k...]"
std::vector<ThresholdConfig> parse_threshold_list(std::string_view text);

}  // namespace shiftscan

template <>
struct std::hash<shiftscan::RefKey> {
  std::size_t operator()(const shiftscan::RefKey& key) const noexcept {
    return std::hash<std::string>{}(key.str());
  }
};
