#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "shiftscan/record_model.hpp"

namespace shiftscan {

// Number of citing records per reference within one year slice. Only
// references cited at least once appear.
struct CitationTable {
  int year = 0;
  std::map<RefKey, int> counts;

  int count(const RefKey& ref) const;
};

// Unordered reference pair, stored with first < second.
struct RefPair {
  RefKey first;
  RefKey second;

  RefPair(RefKey a, RefKey b);

  friend auto operator<=>(const RefPair&, const RefPair&) = default;
  friend bool operator==(const RefPair&, const RefPair&) = default;
};

// Number of records citing both members of a pair, within one year slice.
struct CocitationTable {
  int year = 0;
  std::map<RefPair, int> counts;

  int count(const RefKey& a, const RefKey& b) const;
};

struct CoreRefSet {
  int year = 0;
  ThresholdConfig thresholds;
  std::set<RefKey> refs;

  std::size_t size() const noexcept { return refs.size(); }
  bool empty() const noexcept { return refs.empty(); }
};

// Exact Jaccard ratio shared / (n_a + n_b - shared) of two core sets.
struct RsiCell {
  int year_a = 0;
  int year_b = 0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::size_t shared = 0;

  std::size_t union_size() const noexcept { return n_a + n_b - shared; }
  // nullopt when both sets are empty.
  std::optional<double> value() const;
  // Value rounded half-up to `decimals` places, "NA" when undefined.
  std::string formatted(int decimals = 2) const;

  friend bool operator==(const RsiCell&, const RsiCell&) = default;
};

CitationTable citation_counts(const YearSlice& slice);

// Pairs are enumerated per record after filtering its refs to `restrict_to`.
CocitationTable cocitation_counts(const YearSlice& slice, const std::set<RefKey>* restrict_to = nullptr);

// References cited >= c times that have at least one partner, itself cited
// >= c times, with which they are co-cited >= k times.
CoreRefSet core_references(const YearSlice& slice, const ThresholdConfig& thresholds);

// Throws ThresholdMismatch when a and b were built with different thresholds.
RsiCell rsi(const CoreRefSet& a, const CoreRefSet& b);

// One cell per (year, year + gap) inside the range, ascending. Throws
// InsufficientYears when gap < 1 or the range spans fewer than gap + 1 years.
std::vector<RsiCell> rsi_series(std::span<const YearSlice> slices, const ThresholdConfig& thresholds, int gap);
std::vector<RsiCell> rsi_series(const Corpus& corpus, const ThresholdConfig& thresholds, int gap);

// Same as rsi_series but reuses core sets already computed per slice.
std::vector<RsiCell> rsi_series(std::span<const CoreRefSet> cores, int gap);

struct GrowthFactor {
  double paper_factor = 0;
  std::optional<double> ref_factor;  // nullopt when the from-year cites nothing
};

// Throws YearOutOfRange for years outside the corpus range and DivisionByZero
// when the from-year slice is empty.
GrowthFactor growth_factor(const Corpus& corpus, int from_year, int to_year);
GrowthFactor growth_factor(std::span<const YearSlice> slices, int from_year, int to_year);

}  // namespace shiftscan
