#include "shiftscan/format_parsers.hpp"

#include <cstdint>
#include <iterator>
#include <istream>
#include <map>
#include <optional>
#include <sstream>

#include "shiftscan/errors.hpp"
#include "string_util.hpp"

namespace shiftscan {

std::string sanitize_utf8(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  auto byte = [&](std::size_t at) { return static_cast<unsigned char>(bytes[at]); };
  while (i < n) {
    unsigned char lead = byte(i);
    if (lead < 0x80) {
      out.push_back(static_cast<char>(lead));
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (lead >= 0xC2 && lead <= 0xDF) {
      len = 2;
      cp = lead & 0x1F;
    } else if (lead >= 0xE0 && lead <= 0xEF) {
      len = 3;
      cp = lead & 0x0F;
    } else if (lead >= 0xF0 && lead <= 0xF4) {
      len = 4;
      cp = lead & 0x07;
    }
    bool ok = len != 0 && i + len <= n;
    for (std::size_t k = 1; ok && k < len; ++k) {
      unsigned char cont = byte(i + k);
      if ((cont & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (ok) {
      // overlong forms, surrogates, beyond U+10FFFF
      if ((len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
          (cp >= 0xD800 && cp <= 0xDFFF))
        ok = false;
    }
    if (ok) {
      out.append(bytes.substr(i, len));
      i += len;
    } else {
      out.append(kReplacement);
      ++i;
    }
  }
  return out;
}

namespace {

// Decoded text split into lines with CR and BOM removed.
std::vector<std::string> split_lines(std::string_view raw) {
  std::string text = sanitize_utf8(raw);
  std::string_view view = text;
  if (view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
  std::vector<std::string> lines;
  for (auto line : detail::split(view, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

bool is_tag_char(char c) { return (c >= 'A' && c <= 'Z') || detail::is_ascii_digit(c); }

bool is_blank(std::string_view line) { return detail::trim(line).empty(); }

bool is_continuation(std::string_view line) {
  return !line.empty() && (line.front() == ' ' || line.front() == '\t') && !is_blank(line);
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string joined;
  for (const auto& line : lines) {
    if (!joined.empty()) joined.push_back(' ');
    joined += line;
  }
  return detail::collapse_whitespace(joined);
}

using FieldMap = std::map<std::string, std::vector<std::string>, std::less<>>;

const std::vector<std::string>* field(const FieldMap& fields, std::string_view tag) {
  auto it = fields.find(tag);
  return it == fields.end() ? nullptr : &it->second;
}

// Accumulates the outcome of one file, honouring the parse mode.
class Collector {
 public:
  explicit Collector(ParseMode mode) : mode_(mode) {}

  void parse_error(std::size_t line, const std::string& what) {
    if (mode_ == ParseMode::strict) throw ParseError(line, what);
    ++result_.record_blocks;
    result_.diagnostics.push_back({Diagnostic::Kind::parse_error, line, ParseError(line, what).what()});
  }

  template <typename Build>
  void finish_block(std::size_t line, Build&& build) {
    try {
      PaperRecord record = build();
      ++result_.record_blocks;
      result_.records.push_back(std::move(record));
    } catch (const MalformedRecord& e) {
      if (mode_ == ParseMode::strict) throw;
      ++result_.record_blocks;
      result_.diagnostics.push_back({Diagnostic::Kind::malformed_record, line, e.what()});
    }
  }

  ParseResult take() { return std::move(result_); }

 private:
  ParseMode mode_;
  ParseResult result_;
};

// ---------------------------------------------------------------------------
// Web of Science

struct WosTagLine {
  std::string_view tag;
  std::string_view value;
};

std::optional<WosTagLine> wos_tag_line(std::string_view line) {
  if (line.size() < 2) return std::nullopt;
  if (!(line[0] >= 'A' && line[0] <= 'Z') || !is_tag_char(line[1])) return std::nullopt;
  if (line.size() > 2 && line[2] != ' ') return std::nullopt;
  return WosTagLine{line.substr(0, 2), line.size() > 3 ? detail::trim(line.substr(3)) : std::string_view{}};
}

// Entries are separated by ';' plus whitespace (the tab/space variants both occur).
void add_wos_refs(std::string_view entry_line, std::vector<RefKey>& refs) {
  std::size_t start = 0;
  for (std::size_t k = 0; k <= entry_line.size(); ++k) {
    bool boundary = k == entry_line.size() ||
                    (entry_line[k] == ';' && k + 1 < entry_line.size() && detail::is_space(entry_line[k + 1]));
    if (!boundary) continue;
    auto piece = detail::trim(entry_line.substr(start, k - start));
    start = k + 1;
    if (piece.empty()) continue;
    try {
      refs.push_back(normalize_ref(piece));
    } catch (const EmptyRef&) {
      // punctuation-only entry
    }
  }
}

PaperRecord build_wos_record(const FieldMap& fields, std::size_t line) {
  const auto* ut = field(fields, "UT");
  if (ut == nullptr || join_lines(*ut).empty()) throw MalformedRecord(line, "missing UT");
  const auto* py = field(fields, "PY");
  if (py == nullptr) throw MalformedRecord(line, "missing PY");
  auto year = detail::parse_int(join_lines(*py));
  if (!year) throw MalformedRecord(line, "PY is not an integer year");

  PaperRecord record;
  record.record_id = join_lines(*ut);
  record.pub_year = *year;
  record.source = Source::wos;
  if (const auto* ti = field(fields, "TI")) record.title = join_lines(*ti);
  if (const auto* cr = field(fields, "CR"))
    for (const auto& entry : *cr) add_wos_refs(entry, record.cited_refs);
  record.canonicalize_refs();
  return record;
}

ParseResult parse_wos_lines(const std::vector<std::string>& lines, ParseMode mode) {
  enum class State { outside, in_record, skipping };
  Collector out(mode);
  State state = State::outside;
  FieldMap fields;
  std::vector<std::string>* current = nullptr;
  std::size_t block_start = 0;

  auto open_record = [&](std::size_t line_no, const WosTagLine& tag) {
    fields.clear();
    block_start = line_no;
    current = &fields[std::string(tag.tag)];
    current->emplace_back(tag.value);
    state = State::in_record;
  };
  auto fail_block = [&](std::size_t line_no, const std::string& what) {
    out.parse_error(line_no, what);
    state = State::skipping;
    current = nullptr;
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (is_blank(line)) continue;
    auto tag = wos_tag_line(line);

    if (state == State::outside) {
      if (tag && (tag->tag == "FN" || tag->tag == "VR")) continue;
      if (tag && tag->tag == "EF") break;
      if (tag && tag->tag == "ER") {
        out.parse_error(line_no, "ER outside a record");
        continue;
      }
      if (tag) {
        open_record(line_no, *tag);
      } else {
        block_start = line_no;
        fail_block(line_no, is_continuation(line) ? "continuation line outside a record" : "expected a field tag");
      }
      continue;
    }

    if (state == State::skipping) {
      if (tag && tag->tag == "ER") state = State::outside;
      else if (tag && tag->tag == "EF") break;
      else if (tag && tag->tag == "PT") open_record(line_no, *tag);
      continue;
    }

    // in_record
    if (tag && tag->tag == "ER") {
      out.finish_block(block_start, [&] { return build_wos_record(fields, block_start); });
      state = State::outside;
      current = nullptr;
    } else if (tag && tag->tag == "EF") {
      out.parse_error(block_start, "record not terminated by ER");
      state = State::outside;
      break;
    } else if (tag && tag->tag == "PT") {
      out.parse_error(block_start, "record not terminated by ER");
      open_record(line_no, *tag);
    } else if (tag) {
      current = &fields[std::string(tag->tag)];
      current->emplace_back(tag->value);
    } else if (is_continuation(line) && current != nullptr) {
      current->emplace_back(detail::trim(line));
    } else {
      fail_block(line_no, "expected a field tag or continuation line");
    }
  }
  if (state == State::in_record) out.parse_error(block_start, "record not terminated by ER");
  return out.take();
}

// ---------------------------------------------------------------------------
// MEDLINE

struct NbibTagLine {
  std::string_view tag;
  std::string_view value;
};

std::optional<NbibTagLine> nbib_tag_line(std::string_view line) {
  if (line.size() < 5 || line[4] != '-' || line[0] == ' ') return std::nullopt;
  if (line.size() > 5 && line[5] != ' ') return std::nullopt;
  auto tag = detail::trim(line.substr(0, 4));
  for (char c : tag)
    if (!is_tag_char(c)) return std::nullopt;
  for (std::size_t k = tag.size(); k < 4; ++k)
    if (line[k] != ' ') return std::nullopt;
  return NbibTagLine{tag, line.size() > 6 ? detail::trim(line.substr(6)) : std::string_view{}};
}

std::optional<int> first_four_digit_year(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (!detail::is_ascii_digit(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && detail::is_ascii_digit(text[j])) ++j;
    if (j - i == 4) return detail::parse_int(text.substr(i, 4));
    i = j;
  }
  return std::nullopt;
}

PaperRecord build_medline_record(const FieldMap& fields, std::size_t line) {
  const auto* pmid = field(fields, "PMID");
  if (pmid == nullptr || join_lines(*pmid).empty()) throw MalformedRecord(line, "missing PMID");
  const auto* dp = field(fields, "DP");
  if (dp == nullptr) throw MalformedRecord(line, "missing DP");
  auto year = first_four_digit_year(join_lines(*dp));
  if (!year) throw MalformedRecord(line, "DP has no four-digit year");

  PaperRecord record;
  record.record_id = "PMID:" + join_lines(*pmid);
  record.pub_year = *year;
  record.source = Source::medline;
  if (const auto* ti = field(fields, "TI")) record.title = join_lines(*ti);
  return record;
}

ParseResult parse_medline_lines(const std::vector<std::string>& lines, ParseMode mode) {
  Collector out(mode);
  std::size_t i = 0;
  while (i < lines.size()) {
    if (is_blank(lines[i])) {
      ++i;
      continue;
    }
    const std::size_t block_start = i + 1;
    // (tag, value lines) in file order; MH repeats, so keep every occurrence.
    std::vector<std::pair<std::string, std::vector<std::string>>> entries;
    std::optional<std::size_t> error_line;
    std::string error;
    for (; i < lines.size() && !is_blank(lines[i]); ++i) {
      if (error_line) continue;
      std::string_view line = lines[i];
      if (auto tag = nbib_tag_line(line)) {
        entries.emplace_back(std::string(tag->tag), std::vector<std::string>{std::string(tag->value)});
      } else if (is_continuation(line) && !entries.empty()) {
        entries.back().second.emplace_back(detail::trim(line));
      } else {
        error_line = i + 1;
        error = "expected \"TAG - value\" or an indented continuation line";
      }
    }
    if (error_line) {
      out.parse_error(*error_line, error);
      continue;
    }
    out.finish_block(block_start, [&] {
      FieldMap fields;
      std::vector<std::string> mesh;
      for (auto& [tag, values] : entries) {
        if (tag == "MH") mesh.push_back(join_lines(values));
        auto& slot = fields[tag];
        slot.insert(slot.end(), values.begin(), values.end());
      }
      PaperRecord record = build_medline_record(fields, block_start);
      record.mesh_terms = std::move(mesh);
      return record;
    });
  }
  return out.take();
}

std::string slurp(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading input stream");
  return std::move(buffer).str();
}

}  // namespace

ParseResult parse_wos(std::string_view text, ParseMode mode) {
  return parse_wos_lines(split_lines(text), mode);
}

ParseResult parse_wos(std::istream& in, ParseMode mode) { return parse_wos(slurp(in), mode); }

ParseResult parse_medline(std::string_view text, ParseMode mode) {
  return parse_medline_lines(split_lines(text), mode);
}

ParseResult parse_medline(std::istream& in, ParseMode mode) { return parse_medline(slurp(in), mode); }

std::string write_wos(std::span<const PaperRecord> records) {
  std::string out = "FN Clarivate Analytics Web of Science\nVR 1.0\n";
  for (const auto& record : records) {
    out += "PT J\n";
    out += "TI " + record.title + "\n";
    out += "PY " + std::to_string(record.pub_year) + "\n";
    for (std::size_t k = 0; k < record.cited_refs.size(); ++k)
      out += (k == 0 ? "CR " : "   ") + record.cited_refs[k].str() + "\n";
    out += "UT " + record.record_id + "\n";
    out += "ER\n\n";
  }
  out += "EF\n";
  return out;
}

std::string write_medline(std::span<const PaperRecord> records) {
  std::string out;
  for (const auto& record : records) {
    std::string_view id = record.record_id;
    if (id.substr(0, 5) == "PMID:") id.remove_prefix(5);
    out += "PMID- " + std::string(id) + "\n";
    out += "DP  - " + std::to_string(record.pub_year) + "\n";
    out += "TI  - " + record.title + "\n";
    for (const auto& term : record.mesh_terms) out += "MH  - " + term + "\n";
    out += "\n";
  }
  return out;
}

}  // namespace shiftscan
