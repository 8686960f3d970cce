#pragma once

#include <charconv>
#include <string>

namespace uavcache::detail {

// Locale-independent fixed-point rendering with six decimals.
inline std::string fixed6(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  std::string s(buf, res.ptr);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace uavcache::detail
