#pragma once

#include <cstdint>
#include <string>

#include "shiftscan/record_model.hpp"
#include "shiftscan/text_analysis.hpp"

namespace synthetic {

struct CorpusSpec {
  std::uint64_t seed = 1;
  int first_year = 2000;
  int years = 3;
  int records = 200;
  int max_refs = 50;   // per record, drawn uniformly from [0, max_refs]
  int ref_pool = 300;  // Zipf-weighted, so the head of the pool gets cited often
};

shiftscan::Corpus make_corpus(const CorpusSpec& spec);

// Random spec within 1-500 records, 0-50 refs per record, 1-3 years.
CorpusSpec random_spec(std::uint64_t seed);

// Seven years; the core literature of the first three years is replaced by a
// disjoint one from year five on, year four citing half of each. The title
// term `planted_term` only appears from year four.
struct ShiftCorpus {
  shiftscan::Corpus corpus;
  int turnover_from = 0;  // last year of the old core
  int turnover_to = 0;    // first year of the new core
  std::string planted_term;
  shiftscan::YearWindow before;
  shiftscan::YearWindow after;
};

ShiftCorpus paradigm_shift_corpus(std::uint64_t seed);

}  // namespace synthetic
