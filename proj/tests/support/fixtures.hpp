#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SHIFTSCAN_FIXTURE_DIR
#error "SHIFTSCAN_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixtures {

inline std::filesystem::path path(const std::string& name) { return std::filesystem::path(SHIFTSCAN_FIXTURE_DIR) / name; }

inline std::string read(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::string read(const std::string& name) { return read(path(name)); }
inline std::string read(const char* name) { return read(path(name)); }

inline nlohmann::json manifest(const std::string& name) { return nlohmann::json::parse(read(name)); }

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("shiftscan_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
