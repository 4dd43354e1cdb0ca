#include "penstat/capture.hpp"

#include <string>

namespace penstat {

namespace {

void check_range(std::int64_t value, std::int64_t lo, std::int64_t hi,
                 const char* field, std::size_t index) {
  if (value < lo || value > hi) {
    throw Error(Errc::kFieldOutOfRange,
                std::string(field) + " = " + std::to_string(value) +
                    " outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "] at sample " + std::to_string(index),
                static_cast<std::int64_t>(index), field);
  }
}

}  // namespace

const Recording& validate_recording(const Recording& rec) {
  if (rec.samples.size() < 2) {
    throw Error(Errc::kTooShort, "recording has " +
                                     std::to_string(rec.samples.size()) +
                                     " samples, need at least 2");
  }
  bool any_down = false;
  for (std::size_t i = 0; i < rec.samples.size(); ++i) {
    const Sample& s = rec.samples[i];
    check_range(s.x, 0, INT32_MAX, "x", i);
    check_range(s.y, 0, INT32_MAX, "y", i);
    check_range(s.azimuth, 0, 3599, "azimuth", i);
    check_range(s.altitude, 0, 900, "altitude", i);
    check_range(s.pressure, 0, 1024, "pressure", i);
    if (i > 0 && s.t < rec.samples[i - 1].t) {
      throw Error(Errc::kNonMonotonicTime,
                  "timestamp decreases at sample " + std::to_string(i),
                  static_cast<std::int64_t>(i));
    }
    any_down |= s.pen_down;
  }
  if (!any_down) {
    throw Error(Errc::kNoPenDownSamples, "recording has no pen-down sample");
  }
  return rec;
}

std::vector<Stroke> segment_strokes(const Recording& rec) {
  const auto& samples = rec.samples;
  std::size_t first = samples.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].pen_down) {
      if (first == samples.size()) first = i;
      last = i;
    }
  }
  if (first == samples.size()) {
    throw Error(Errc::kNoPenDownSamples, "recording has no pen-down sample");
  }

  std::vector<Stroke> strokes;
  std::size_t run_start = first;
  for (std::size_t i = first + 1; i <= last + 1; ++i) {
    if (i == last + 1 || samples[i].pen_down != samples[run_start].pen_down) {
      Stroke stroke;
      stroke.kind =
          samples[run_start].pen_down ? StrokeKind::kDown : StrokeKind::kUp;
      stroke.samples = std::span<const Sample>(samples).subspan(
          run_start, i - run_start);
      stroke.first = run_start;
      stroke.duration_ms = samples[i - 1].t - samples[run_start].t;
      strokes.push_back(stroke);
      run_start = i;
    }
  }
  return strokes;
}

}  // namespace penstat
