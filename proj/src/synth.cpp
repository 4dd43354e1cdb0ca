#include "penstat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string_view>

#include "penstat/features.hpp"
#include "penstat/rng.hpp"
#include "penstat/svc_io.hpp"

namespace penstat {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

// Polynomial sine, good to ~4e-6 over the full range. Uses only IEEE-exact
// arithmetic (plus floor), so generated corpora do not depend on the
// platform's libm.
double ssin(double x) {
  double u = x * (1.0 / kTwoPi);
  u -= std::floor(u);
  double theta = u * kTwoPi;           // [0, 2*pi)
  if (theta >= kPi) theta -= kTwoPi;   // [-pi, pi)
  if (theta > kPi / 2) theta = kPi - theta;
  if (theta < -kPi / 2) theta = -kPi - theta;
  const double t2 = theta * theta;
  double r = 1.0 / 362880.0;
  r = r * t2 - 1.0 / 5040.0;
  r = r * t2 + 1.0 / 120.0;
  r = r * t2 - 1.0 / 6.0;
  r = r * t2 + 1.0;
  return theta * r;
}

// Purpose tags for derived streams.
constexpr std::uint64_t kAgeStream = 1;
constexpr std::uint64_t kTraitsStream = 2;
constexpr std::uint64_t kShapeStream = 3;
constexpr std::uint64_t kSexStream = 4;
constexpr std::uint64_t kKnobStreamBase = 16;

enum Knob { kKnobPause = 0, kKnobStroke = 1, kKnobPressure = 2, kKnobAmp = 3 };
constexpr int kKnobCount = 4;

// Features whose generator knob keeps them linear in the knob, so the
// planted population correlation lands on target. Aggregates like t_upm
// (pause times stroke count) mix in the stroke-count noise and are not
// offered.
std::optional<int> knob_for_feature(std::string_view name) {
  if (name == "nt_up") return kKnobPause;
  if (name == "nt_down") return kKnobStroke;
  if (name == "p_meanm" || name == "p_maxm" || name == "p_medianm" ||
      name == "p_modem") {
    return kKnobPressure;
  }
  if (name == "speed_maxm") return kKnobAmp;
  return std::nullopt;
}

std::int32_t clamp_i32(double v, std::int32_t lo, std::int32_t hi) {
  const auto r = static_cast<std::int64_t>(std::llround(v));
  return static_cast<std::int32_t>(
      std::clamp<std::int64_t>(r, lo, hi));
}

struct WriterModel {
  int age = 0;
  int n_down = 0;
  double freq_hz = 0;
  double amp = 0;
  double peak_pressure = 0;
  double stroke_span_ms = 0;
  double pause_span_ms = 0;
  double az_phase = 0, al_phase = 0;
};

WriterModel build_writer_model(const SynthSpec& spec, std::size_t index) {
  const std::uint64_t writer_seed = derive_stream(spec.seed, index);

  // Target-correlation knobs: standardized age times the target rho plus
  // independent unit-variance noise.
  const double mu = (spec.age_min + spec.age_max) / 2.0;
  const double span = spec.age_max - spec.age_min + 1;
  const double sigma = std::sqrt((span * span - 1.0) / 12.0);
  const int age = synth_age(spec, index);
  const double z_age = sigma > 0 ? (age - mu) / sigma : 0.0;

  double knob[kKnobCount];
  bool planted[kKnobCount] = {false, false, false, false};
  for (int k = 0; k < kKnobCount; ++k) {
    SplitMix64 rng(derive_stream(writer_seed, kKnobStreamBase +
                                                  static_cast<std::uint64_t>(k)));
    const double eps = rng.next_gaussian();
    double rho = 0.0;
    for (const auto& [name, target] : spec.planted) {
      if (knob_for_feature(name) == k) {
        rho = target;
        planted[k] = true;
      }
    }
    knob[k] = rho * z_age + std::sqrt(1.0 - rho * rho) * eps;
  }

  SplitMix64 traits(derive_stream(writer_seed, kTraitsStream));
  WriterModel m;
  m.age = age;
  m.n_down = static_cast<int>(traits.next_int(spec.strokes_min,
                                              spec.strokes_max));

  // Traits jitter is always drawn so the stream stays aligned across plant
  // configurations, but it must not dilute a planted knob: the affected
  // feature has to end up linear in the knob alone.
  const double freq_jitter = traits.next_in(0.85, 1.15);
  const double amp_jitter = traits.next_in(0.85, 1.15);
  const double press_arch = traits.next_in(160.0, 330.0);
  if (planted[kKnobAmp]) {
    m.freq_hz = spec.frequency_hz;
    m.amp = spec.amplitude * std::clamp(1.0 + 0.15 * knob[kKnobAmp], 0.4, 1.6);
  } else {
    m.freq_hz = spec.frequency_hz * freq_jitter;
    m.amp = spec.amplitude * amp_jitter *
            std::clamp(1.0 + 0.15 * knob[kKnobAmp], 0.4, 1.6);
  }
  m.peak_pressure =
      std::clamp(480.0 + 60.0 * knob[kKnobPressure], 220.0, 680.0) +
      (planted[kKnobPressure] ? 245.0 : press_arch);

  // Span knobs engage only when planted; the nominal spans are otherwise
  // exact so sample counts follow from the spec arithmetic.
  const double dt = spec.sample_interval_ms;
  m.stroke_span_ms =
      planted[kKnobStroke]
          ? std::clamp(spec.stroke_ms * (1.0 + 0.12 * knob[kKnobStroke]),
                       2.0 * dt, 4.0 * spec.stroke_ms)
          : static_cast<double>(spec.stroke_ms);
  m.pause_span_ms =
      planted[kKnobPause]
          ? std::clamp(spec.pause_ms * (1.0 + 0.27 * knob[kKnobPause]),
                       2.0 * dt, 4.0 * spec.pause_ms)
          : static_cast<double>(spec.pause_ms);
  m.az_phase = traits.next_in(0.0, kTwoPi);
  m.al_phase = traits.next_in(0.0, kTwoPi);
  return m;
}

struct StrokePoints {
  std::vector<std::int32_t> x, y, pressure;
};

}  // namespace

void validate_spec(const SynthSpec& spec) {
  auto fail = [](const std::string& msg) { throw Error(Errc::kBadSpec, msg); };
  if (spec.writers < 1 || spec.writers > 1000000) {
    fail("writers must be in [1, 1000000]");
  }
  if (spec.age_min < 1 || spec.age_max > 130 || spec.age_min > spec.age_max) {
    fail("age range must satisfy 1 <= age_min <= age_max <= 130");
  }
  if (spec.strokes_min < 1 || spec.strokes_min > spec.strokes_max) {
    fail("stroke count range must satisfy 1 <= strokes_min <= strokes_max");
  }
  if (!(spec.amplitude > 0)) fail("amplitude must be positive");
  if (!(spec.frequency_hz > 0)) fail("frequency_hz must be positive");
  if (spec.sample_interval_ms < 1) fail("sample_interval_ms must be >= 1");
  if (spec.stroke_ms < spec.sample_interval_ms) {
    fail("stroke_ms must be at least one sample interval");
  }
  if (spec.pause_ms < spec.sample_interval_ms) {
    fail("pause_ms must be at least one sample interval");
  }
  if (spec.duration_jitter < 0 || spec.duration_jitter > 0.5) {
    fail("duration_jitter must be in [0, 0.5]");
  }
  if (spec.session < 0) fail("session must be >= 0");

  std::array<const char*, kKnobCount> used{};
  for (const auto& [name, rho] : spec.planted) {
    const auto knob = knob_for_feature(name);
    if (!knob) fail("no generator knob drives feature " + name);
    if (std::abs(rho) > 0.98) fail("planted rho for " + name +
                                   " must be within [-0.98, 0.98]");
    if (used[static_cast<std::size_t>(*knob)]) {
      fail("planted features " + std::string(used[*knob]) + " and " + name +
           " share one knob");
    }
    used[static_cast<std::size_t>(*knob)] = name.c_str();
    if (spec.age_min == spec.age_max) {
      fail("planted correlations need a non-degenerate age range");
    }
  }
}

std::string synth_writer_id(std::size_t writer_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "w%04zu", writer_index + 1);
  return buf;
}

int synth_age(const SynthSpec& spec, std::size_t writer_index) {
  SplitMix64 rng(derive_stream(derive_stream(spec.seed, writer_index),
                               kAgeStream));
  return static_cast<int>(rng.next_int(spec.age_min, spec.age_max));
}

Recording generate_recording(const SynthSpec& spec,
                             std::size_t writer_index) {
  validate_spec(spec);
  const WriterModel model = build_writer_model(spec, writer_index);
  const std::uint64_t writer_seed = derive_stream(spec.seed, writer_index);
  SplitMix64 shape(derive_stream(writer_seed, kShapeStream));

  const double dt = spec.sample_interval_ms;
  const double j = spec.duration_jitter;

  // Down-stroke point clouds first; hover runs interpolate between them.
  std::vector<StrokePoints> strokes(static_cast<std::size_t>(model.n_down));
  std::vector<int> pause_counts;
  double x_cursor = 2000.0;
  const double y_base = 3000.0;
  for (std::size_t s = 0; s < strokes.size(); ++s) {
    const double dur = model.stroke_span_ms * shape.next_in(1.0 - j, 1.0 + j);
    const auto m = static_cast<std::size_t>(
        std::max<std::int64_t>(2, std::llround(dur / dt) + 1));
    const double phase_y = shape.next_in(0.0, kTwoPi);
    const double phase_x = shape.next_in(0.0, kTwoPi);
    const double advance = model.amp * shape.next_in(1.2, 2.0);

    StrokePoints& pts = strokes[s];
    pts.x.resize(m);
    pts.y.resize(m);
    pts.pressure.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double tt = static_cast<double>(k) * dt / 1000.0;
      const double prog = static_cast<double>(k) / static_cast<double>(m - 1);
      pts.x[k] = clamp_i32(
          x_cursor + advance * prog +
              0.35 * model.amp * ssin(kTwoPi * 0.7 * model.freq_hz * tt +
                                      phase_x),
          0, INT32_MAX);
      pts.y[k] = clamp_i32(
          y_base + model.amp * ssin(kTwoPi * model.freq_hz * tt + phase_y), 0,
          INT32_MAX);
      pts.pressure[k] = clamp_i32(
          model.peak_pressure * ssin(kPi * prog) + shape.next_in(-15.0, 15.0),
          0, 1024);
    }
    x_cursor += advance;

    if (s + 1 < strokes.size()) {
      const double pause = model.pause_span_ms * shape.next_in(1.0 - j, 1.0 + j);
      pause_counts.push_back(static_cast<int>(
          std::max<std::int64_t>(2, std::llround(pause / dt) + 1)));
    }
  }

  Recording rec;
  rec.writer_id = synth_writer_id(writer_index);
  rec.task_id = "copy";

  std::int64_t g = 0;  // global sample index; time is a uniform dt grid
  auto orientation = [&](std::int64_t gi, Sample& smp) {
    const double tt = static_cast<double>(gi) * dt / 1000.0;
    smp.azimuth =
        clamp_i32(1800.0 + 300.0 * ssin(kTwoPi * 0.3 * tt + model.az_phase), 0,
                  3599);
    smp.altitude =
        clamp_i32(450.0 + 120.0 * ssin(kTwoPi * 0.2 * tt + model.al_phase), 0,
                  900);
  };

  for (std::size_t s = 0; s < strokes.size(); ++s) {
    const StrokePoints& pts = strokes[s];
    for (std::size_t k = 0; k < pts.x.size(); ++k) {
      Sample smp;
      smp.x = pts.x[k];
      smp.y = pts.y[k];
      smp.t = g * spec.sample_interval_ms;
      smp.pen_down = true;
      smp.pressure = pts.pressure[k];
      orientation(g, smp);
      rec.samples.push_back(smp);
      ++g;
    }
    if (s + 1 < strokes.size()) {
      const int u = pause_counts[s];
      const double x0 = pts.x.back(), y0 = pts.y.back();
      const double x1 = strokes[s + 1].x.front(), y1 = strokes[s + 1].y.front();
      for (int k = 0; k < u; ++k) {
        const double f = static_cast<double>(k + 1) / (u + 1);
        Sample smp;
        smp.x = clamp_i32(x0 + (x1 - x0) * f, 0, INT32_MAX);
        smp.y = clamp_i32(y0 + (y1 - y0) * f, 0, INT32_MAX);
        smp.t = g * spec.sample_interval_ms;
        smp.pen_down = false;
        smp.pressure = 0;
        orientation(g, smp);
        rec.samples.push_back(smp);
        ++g;
      }
    }
  }
  validate_recording(rec);
  return rec;
}

CohortFiles generate_cohort(const SynthSpec& spec,
                            const std::filesystem::path& out_dir) {
  validate_spec(spec);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(Errc::kIoFailure,
                "cannot create " + out_dir.string() + ": " + ec.message());
  }

  CohortFiles out;
  out.corpus_dir = out_dir;
  out.metadata_path = out_dir / "metadata.csv";

  for (std::size_t i = 0; i < spec.writers; ++i) {
    const Recording rec = generate_recording(spec, i);

    WriterMeta meta;
    meta.writer_id = rec.writer_id;
    meta.age = synth_age(spec, i);
    SplitMix64 sex_rng(derive_stream(derive_stream(spec.seed, i), kSexStream));
    meta.sex = sex_rng.next_u64() % 2 == 0 ? Sex::kMale : Sex::kFemale;
    meta.session = spec.session;
    out.meta.push_back(meta);

    const fs::path file =
        out_dir / (rec.writer_id + "_s" + std::to_string(spec.session) +
                   ".svc");
    std::ofstream f(file, std::ios::binary);
    if (!f) {
      throw Error(Errc::kIoFailure, "cannot open " + file.string());
    }
    write_capture(rec, f);
    if (!f.good()) {
      throw Error(Errc::kIoFailure, "short write to " + file.string());
    }
  }

  std::ofstream mf(out.metadata_path, std::ios::binary);
  if (!mf) {
    throw Error(Errc::kIoFailure,
                "cannot open " + out.metadata_path.string());
  }
  write_metadata(out.meta, mf);
  if (!mf.good()) {
    throw Error(Errc::kIoFailure,
                "short write to " + out.metadata_path.string());
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const std::string v(value);
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(Errc::kBadSpec, "bad value for " + std::string(key) + ": \"" +
                                    std::string(value) + "\"");
  }
}

std::int64_t parse_integer(std::string_view key, std::string_view value) {
  const double d = parse_number(key, value);
  const auto i = static_cast<std::int64_t>(d);
  if (static_cast<double>(i) != d) {
    throw Error(Errc::kBadSpec,
                std::string(key) + " must be an integer, got \"" +
                    std::string(value) + "\"");
  }
  return i;
}

}  // namespace

SynthSpec parse_synth_spec(std::istream& in) {
  SynthSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::kBadSpec, "expected key = value, got \"" + line + "\"");
    }
    const std::string key{trim(stripped.substr(0, eq))};
    const std::string_view value = trim(stripped.substr(eq + 1));

    if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    } else if (key == "writers") {
      const std::int64_t v = parse_integer(key, value);
      if (v < 0) {
        throw Error(Errc::kBadSpec, "writers must be non-negative");
      }
      spec.writers = static_cast<std::size_t>(v);
    } else if (key == "age_min") {
      spec.age_min = static_cast<int>(parse_integer(key, value));
    } else if (key == "age_max") {
      spec.age_max = static_cast<int>(parse_integer(key, value));
    } else if (key == "strokes_min") {
      spec.strokes_min = static_cast<int>(parse_integer(key, value));
    } else if (key == "strokes_max") {
      spec.strokes_max = static_cast<int>(parse_integer(key, value));
    } else if (key == "amplitude") {
      spec.amplitude = parse_number(key, value);
    } else if (key == "frequency_hz") {
      spec.frequency_hz = parse_number(key, value);
    } else if (key == "sample_interval_ms") {
      spec.sample_interval_ms = static_cast<int>(parse_integer(key, value));
    } else if (key == "stroke_ms") {
      spec.stroke_ms = static_cast<int>(parse_integer(key, value));
    } else if (key == "pause_ms") {
      spec.pause_ms = static_cast<int>(parse_integer(key, value));
    } else if (key == "duration_jitter") {
      spec.duration_jitter = parse_number(key, value);
    } else if (key == "session") {
      spec.session = static_cast<int>(parse_integer(key, value));
    } else if (key.starts_with("plant.")) {
      const std::string feature = key.substr(6);
      if (!feature_index(feature)) {
        throw Error(Errc::kBadSpec, "unknown feature in " + key);
      }
      spec.planted[feature] = parse_number(key, value);
    } else {
      throw Error(Errc::kBadSpec, "unknown key \"" + key + "\"");
    }
  }
  validate_spec(spec);
  return spec;
}

SynthSpec parse_synth_spec_text(const std::string& text) {
  std::istringstream in(text);
  return parse_synth_spec(in);
}

}  // namespace penstat
