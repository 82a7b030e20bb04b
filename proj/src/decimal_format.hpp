#pragma once

#include <cstdint>
#include <string>

namespace shiftscan::detail {

// num/den rounded half-up to `decimals` places, computed in integers so the
// output never depends on floating-point representation.
inline std::string format_ratio(std::uint64_t num, std::uint64_t den, int decimals) {
  unsigned __int128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  unsigned __int128 scaled = (static_cast<unsigned __int128>(num) * scale * 2 + den) / (2 * static_cast<unsigned __int128>(den));
  auto whole = static_cast<std::uint64_t>(scaled / scale);
  auto frac = static_cast<std::uint64_t>(scaled % scale);
  std::string out = std::to_string(whole);
  if (decimals > 0) {
    std::string digits = std::to_string(frac);
    out += '.';
    out.append(static_cast<std::size_t>(decimals) - digits.size(), '0');
    out += digits;
  }
  return out;
}

}  // namespace shiftscan::detail
