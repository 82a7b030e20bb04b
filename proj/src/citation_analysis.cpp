#include "shiftscan/citation_analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <future>
#include <string>
#include <string_view>
#include <unordered_map>

#include "decimal_format.hpp"
#include "shiftscan/errors.hpp"

namespace shiftscan {

int CitationTable::count(const RefKey& ref) const {
  auto it = counts.find(ref);
  return it == counts.end() ? 0 : it->second;
}

RefPair::RefPair(RefKey a, RefKey b) : first(std::move(a)), second(std::move(b)) {
  if (second < first) std::swap(first, second);
}

int CocitationTable::count(const RefKey& a, const RefKey& b) const {
  if (a == b) return 0;
  auto it = counts.find(RefPair(a, b));
  return it == counts.end() ? 0 : it->second;
}

std::optional<double> RsiCell::value() const {
  if (union_size() == 0) return std::nullopt;
  return static_cast<double>(shared) / static_cast<double>(union_size());
}

std::string RsiCell::formatted(int decimals) const {
  if (union_size() == 0) return "NA";
  return detail::format_ratio(shared, union_size(), decimals);
}

namespace {

// Dense ids for the references of one slice; id order equals RefKey order.
class RefIndex {
 public:
  explicit RefIndex(const YearSlice& slice) {
    for (const auto& record : slice.records())
      for (const auto& ref : record.cited_refs) keys_.push_back(&ref);
    std::sort(keys_.begin(), keys_.end(), [](const RefKey* a, const RefKey* b) { return *a < *b; });
    keys_.erase(std::unique(keys_.begin(), keys_.end(), [](const RefKey* a, const RefKey* b) { return *a == *b; }),
                keys_.end());
    ids_.reserve(keys_.size());
    for (std::uint32_t id = 0; id < keys_.size(); ++id) ids_.emplace(keys_[id]->str(), id);

    per_record_.reserve(slice.n_papers());
    for (const auto& record : slice.records()) {
      std::vector<std::uint32_t> ids;
      ids.reserve(record.cited_refs.size());
      for (const auto& ref : record.cited_refs) ids.push_back(ids_.at(ref.str()));
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      per_record_.push_back(std::move(ids));
    }
  }

  std::size_t size() const noexcept { return keys_.size(); }
  const RefKey& key(std::uint32_t id) const { return *keys_[id]; }
  std::optional<std::uint32_t> find(const RefKey& ref) const {
    auto it = ids_.find(ref.str());
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<std::vector<std::uint32_t>>& per_record() const noexcept { return per_record_; }

  std::vector<int> citation_counts() const {
    std::vector<int> counts(keys_.size(), 0);
    for (const auto& ids : per_record_)
      for (auto id : ids) ++counts[id];
    return counts;
  }

 private:
  std::vector<const RefKey*> keys_;
  std::unordered_map<std::string_view, std::uint32_t> ids_;
  std::vector<std::vector<std::uint32_t>> per_record_;
};

// Co-citation counts over a subset of reference ids. Uses a dense triangular
// matrix when the subset is small enough, a hash map otherwise.
class PairCounter {
 public:
  static constexpr std::size_t kDenseLimit = 2048;

  PairCounter(const RefIndex& index, const std::vector<bool>& keep) {
    local_of_.assign(index.size(), kAbsent);
    for (std::uint32_t id = 0; id < index.size(); ++id) {
      if (!keep[id]) continue;
      local_of_[id] = static_cast<std::uint32_t>(global_of_.size());
      global_of_.push_back(id);
    }
    const std::size_t n = global_of_.size();
    dense_ = n <= kDenseLimit;
    if (dense_) matrix_.assign(n * (n - (n > 0 ? 1 : 0)) / 2, 0);

    std::vector<std::uint32_t> locals;
    for (const auto& ids : index.per_record()) {
      locals.clear();
      for (auto id : ids)
        if (local_of_[id] != kAbsent) locals.push_back(local_of_[id]);
      for (std::size_t i = 0; i < locals.size(); ++i)
        for (std::size_t j = i + 1; j < locals.size(); ++j) increment(locals[i], locals[j]);
    }
  }

  // Calls fn(global_a, global_b, count) for every pair with a non-zero count,
  // in ascending (a, b) order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    const std::size_t n = global_of_.size();
    if (dense_) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (int c = matrix_[offset(a, b)]; c > 0) fn(global_of_[a], global_of_[b], c);
      return;
    }
    std::vector<std::pair<std::uint64_t, int>> entries(sparse_.begin(), sparse_.end());
    std::sort(entries.begin(), entries.end());
    for (auto [key, c] : entries)
      fn(global_of_[key >> 32], global_of_[key & 0xFFFFFFFFu], c);
  }

 private:
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;

  // Row-major upper triangle without the diagonal; requires a < b.
  std::size_t offset(std::size_t a, std::size_t b) const {
    const std::size_t n = global_of_.size();
    return a * (2 * n - a - 1) / 2 + (b - a - 1);
  }

  void increment(std::uint32_t a, std::uint32_t b) {
    if (dense_) {
      ++matrix_[offset(a, b)];
    } else {
      ++sparse_[(static_cast<std::uint64_t>(a) << 32) | b];
    }
  }

  std::vector<std::uint32_t> local_of_;
  std::vector<std::uint32_t> global_of_;
  bool dense_ = true;
  std::vector<int> matrix_;
  std::unordered_map<std::uint64_t, int> sparse_;
};

}  // namespace

CitationTable citation_counts(const YearSlice& slice) {
  RefIndex index(slice);
  auto counts = index.citation_counts();
  CitationTable table{slice.year(), {}};
  for (std::uint32_t id = 0; id < index.size(); ++id)
    table.counts.emplace_hint(table.counts.end(), index.key(id), counts[id]);
  return table;
}

CocitationTable cocitation_counts(const YearSlice& slice, const std::set<RefKey>* restrict_to) {
  RefIndex index(slice);
  std::vector<bool> keep(index.size(), restrict_to == nullptr);
  if (restrict_to != nullptr)
    for (const auto& ref : *restrict_to)
      if (auto id = index.find(ref)) keep[*id] = true;

  CocitationTable table{slice.year(), {}};
  PairCounter pairs(index, keep);
  pairs.for_each([&](std::uint32_t a, std::uint32_t b, int count) {
    table.counts.emplace_hint(table.counts.end(), RefPair(index.key(a), index.key(b)), count);
  });
  return table;
}

CoreRefSet core_references(const YearSlice& slice, const ThresholdConfig& thresholds) {
  RefIndex index(slice);
  const auto counts = index.citation_counts();
  std::vector<bool> survivors(index.size());
  for (std::uint32_t id = 0; id < index.size(); ++id) survivors[id] = counts[id] >= thresholds.citation_min();

  std::vector<bool> core(index.size(), false);
  PairCounter pairs(index, survivors);
  pairs.for_each([&](std::uint32_t a, std::uint32_t b, int count) {
    if (count >= thresholds.cocitation_min()) core[a] = core[b] = true;
  });

  CoreRefSet result{slice.year(), thresholds, {}};
  for (std::uint32_t id = 0; id < index.size(); ++id)
    if (core[id]) result.refs.emplace_hint(result.refs.end(), index.key(id));
  return result;
}

RsiCell rsi(const CoreRefSet& a, const CoreRefSet& b) {
  if (!(a.thresholds == b.thresholds)) throw ThresholdMismatch();
  std::size_t shared = 0;
  auto ia = a.refs.begin();
  auto ib = b.refs.begin();
  while (ia != a.refs.end() && ib != b.refs.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++shared;
      ++ia;
      ++ib;
    }
  }
  return RsiCell{a.year, b.year, a.size(), b.size(), shared};
}

namespace {

void check_interval(std::size_t years, int gap) {
  if (gap < 1) throw InsufficientYears("interval gap must be at least 1");
  if (years < static_cast<std::size_t>(gap) + 1)
    throw InsufficientYears("a gap of " + std::to_string(gap) + " needs at least " + std::to_string(gap + 1) +
                            " years, range has " + std::to_string(years));
}

}  // namespace

std::vector<RsiCell> rsi_series(std::span<const CoreRefSet> cores, int gap) {
  check_interval(cores.size(), gap);
  std::vector<RsiCell> cells;
  for (std::size_t i = 0; i + static_cast<std::size_t>(gap) < cores.size(); ++i)
    cells.push_back(rsi(cores[i], cores[i + static_cast<std::size_t>(gap)]));
  return cells;
}

std::vector<RsiCell> rsi_series(std::span<const YearSlice> slices, const ThresholdConfig& thresholds, int gap) {
  check_interval(slices.size(), gap);
  // Slices are independent; build their core sets concurrently.
  std::vector<std::future<CoreRefSet>> pending;
  pending.reserve(slices.size());
  for (const auto& slice : slices)
    pending.push_back(std::async(std::launch::async, [&slice, &thresholds] {
      return core_references(slice, thresholds);
    }));
  std::vector<CoreRefSet> cores;
  cores.reserve(slices.size());
  for (auto& f : pending) cores.push_back(f.get());
  return rsi_series(cores, gap);
}

std::vector<RsiCell> rsi_series(const Corpus& corpus, const ThresholdConfig& thresholds, int gap) {
  auto slices = slice_by_year(corpus);
  return rsi_series(slices, thresholds, gap);
}

GrowthFactor growth_factor(std::span<const YearSlice> slices, int from_year, int to_year) {
  auto find = [&](int year) -> const YearSlice& {
    for (const auto& slice : slices)
      if (slice.year() == year) return slice;
    int first = slices.empty() ? 0 : slices.front().year();
    int last = slices.empty() ? -1 : slices.back().year();
    throw YearOutOfRange(year, first, last);
  };
  const YearSlice& from = find(from_year);
  const YearSlice& to = find(to_year);
  if (from.empty()) throw DivisionByZero("no papers in year " + std::to_string(from_year));
  GrowthFactor growth;
  growth.paper_factor = static_cast<double>(to.n_papers()) / static_cast<double>(from.n_papers());
  if (from.distinct_refs() > 0)
    growth.ref_factor = static_cast<double>(to.distinct_refs()) / static_cast<double>(from.distinct_refs());
  return growth;
}

GrowthFactor growth_factor(const Corpus& corpus, int from_year, int to_year) {
  auto slices = slice_by_year(corpus);
  return growth_factor(slices, from_year, to_year);
}

}  // namespace shiftscan
