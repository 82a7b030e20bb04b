#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <system_error>

#include "shiftscan/cli.hpp"
#include "shiftscan/errors.hpp"

namespace shiftscan::cli {

namespace {

std::string tsv_field(const std::string& field) {
  std::string out = field;
  for (char& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_row(std::string& out, const std::vector<std::string>& row, OutputFormat format) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += format == OutputFormat::tsv ? '\t' : ',';
    out += format == OutputFormat::tsv ? tsv_field(row[i]) : csv_field(row[i]);
  }
  out += '\n';
}

}  // namespace

std::string render(const Table& table, OutputFormat format) {
  std::string out;
  append_row(out, table.header, format);
  for (const auto& row : table.rows) append_row(out, row, format);
  return out;
}

std::string_view extension(OutputFormat format) { return format == OutputFormat::tsv ? "tsv" : "csv"; }

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
    throw Error("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place: " + path.string());
  }
}

}  // namespace shiftscan::cli
