#ifndef PENSTAT_CAPTURE_HPP
#define PENSTAT_CAPTURE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "penstat/error.hpp"

namespace penstat {

// One tablet observation. Positions and angles are raw device integers:
// azimuth in tenths of a degree [0, 3599], altitude in tenths of a degree
// [0, 900], pressure in device units [0, 1024]. When the pen is in the air
// (pen_down == false) the pressure value is hover noise and pressure
// features ignore it.
struct Sample {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int64_t t = 0;  // milliseconds
  bool pen_down = false;
  std::int32_t azimuth = 0;
  std::int32_t altitude = 0;
  std::int32_t pressure = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Recording {
  std::string writer_id;
  std::string task_id;
  std::vector<Sample> samples;

  friend bool operator==(const Recording&, const Recording&) = default;
};

enum class Sex { kMale, kFemale, kUnspecified };

struct WriterMeta {
  std::string writer_id;
  int age = 0;  // years, [1, 130]
  Sex sex = Sex::kUnspecified;
  int session = 0;

  friend bool operator==(const WriterMeta&, const WriterMeta&) = default;
};

enum class StrokeKind { kDown, kUp };

// Maximal run of samples sharing a pen status. The span points into the
// recording the stroke was segmented from, which must outlive it. Duration
// is the stroke's own time span (last t - first t); transition gaps between
// consecutive strokes belong to neither stroke.
struct Stroke {
  StrokeKind kind = StrokeKind::kDown;
  std::span<const Sample> samples;
  std::size_t first = 0;  // index of samples.front() in the recording
  std::int64_t duration_ms = 0;

  double duration() const { return static_cast<double>(duration_ms) / 1000.0; }
};

// Checks every Sample and Recording invariant and returns the recording
// unchanged. Throws Error with the first offending sample index:
// NonMonotonicTime, FieldOutOfRange, TooShort, NoPenDownSamples.
const Recording& validate_recording(const Recording& rec);

// Partitions the samples between the first and last pen-down sample
// (inclusive) into alternating down/up strokes. Leading and trailing in-air
// runs are dropped; they are acquisition hover, not task pauses. Throws
// NoPenDownSamples.
std::vector<Stroke> segment_strokes(const Recording& rec);

}  // namespace penstat

#endif  // PENSTAT_CAPTURE_HPP
