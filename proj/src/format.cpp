#include "penstat/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace penstat {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, end);
}

std::string format_rho_table1(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string format_p_table1(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2E", value);
  return std::string(buf);
}

}  // namespace penstat
