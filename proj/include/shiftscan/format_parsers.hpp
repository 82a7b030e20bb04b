#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shiftscan/record_model.hpp"

namespace shiftscan {

enum class ParseMode {
  strict,   // first error throws ParseError / MalformedRecord
  lenient,  // skip the offending block, record a diagnostic
};

struct Diagnostic {
  enum class Kind { parse_error, malformed_record };
  Kind kind;
  std::size_t line;  // 1-based
  std::string message;
};

struct ParseResult {
  std::vector<PaperRecord> records;
  std::vector<Diagnostic> diagnostics;  // one per skipped block
  std::size_t record_blocks = 0;        // parsed + skipped

  std::size_t skipped() const noexcept { return diagnostics.size(); }
};

// Web of Science field-tagged plain-text export ("FN"/"VR" header, records
// terminated by "ER", file by "EF"). Accepts CRLF and a leading BOM; invalid
// UTF-8 is replaced with U+FFFD.
ParseResult parse_wos(std::string_view text, ParseMode mode = ParseMode::lenient);
ParseResult parse_wos(std::istream& in, ParseMode mode = ParseMode::lenient);

// MEDLINE/PubMed .nbib: blank-line separated records of "TAG - value" lines.
ParseResult parse_medline(std::string_view text, ParseMode mode = ParseMode::lenient);
ParseResult parse_medline(std::istream& in, ParseMode mode = ParseMode::lenient);

// Canonical writers; parse_wos(write_wos(r)) reproduces r.
std::string write_wos(std::span<const PaperRecord> records);
std::string write_medline(std::span<const PaperRecord> records);

// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

}  // namespace shiftscan
