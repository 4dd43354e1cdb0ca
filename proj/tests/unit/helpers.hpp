#ifndef PENSTAT_TESTS_HELPERS_HPP
#define PENSTAT_TESTS_HELPERS_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "penstat/capture.hpp"

namespace penstat::test {

inline Sample make_sample(std::int32_t x, std::int32_t y, std::int64_t t,
                          bool down, std::int32_t pressure = 512) {
  Sample s;
  s.x = x;
  s.y = y;
  s.t = t;
  s.pen_down = down;
  s.azimuth = 1800;
  s.altitude = 450;
  s.pressure = pressure;
  return s;
}

// One sample per flag, 10 ms apart, drifting x.
inline Recording from_pen_flags(std::initializer_list<int> flags) {
  Recording rec;
  rec.writer_id = "w0001";
  std::int64_t t = 0;
  std::int32_t x = 100;
  for (int f : flags) {
    rec.samples.push_back(make_sample(x, 200, t, f != 0));
    t += 10;
    x += 5;
  }
  return rec;
}

}  // namespace penstat::test

#endif
