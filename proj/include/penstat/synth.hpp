#ifndef PENSTAT_SYNTH_HPP
#define PENSTAT_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "penstat/capture.hpp"

namespace penstat {

// Deterministic cohort generator: (seed, spec) fully determines every byte
// of the emitted corpus. Stands in for the private acquisition data in all
// tests.
//
// Planted correlations drive a physically meaningful knob per feature as a
// linear function of standardized age plus seeded unit-variance noise, so
// the population correlation of the feature with age equals the target.
// Supported targets and their knobs:
//   nt_up                                 in-air pause span
//   nt_down                               down-stroke span
//   p_meanm, p_maxm, p_medianm, p_modem   pressure profile peak
//   speed_maxm                            oscillation amplitude
// Planting two features that share a knob is rejected.
struct SynthSpec {
  std::uint64_t seed = 1;
  std::size_t writers = 400;
  int age_min = 18;
  int age_max = 70;
  int strokes_min = 8;   // down strokes per recording
  int strokes_max = 20;
  double amplitude = 120.0;   // tablet units
  double frequency_hz = 4.0;
  int sample_interval_ms = 10;
  int stroke_ms = 900;  // nominal down-stroke time span
  int pause_ms = 300;   // nominal in-air time span
  double duration_jitter = 0.15;  // per-stroke span jitter fraction, [0, 0.5]
  int session = 1;
  std::map<std::string, double> planted;  // feature name -> target rho
};

// Throws BadSpec with the first violated constraint.
void validate_spec(const SynthSpec& spec);

// Key = value lines, # comments; planted correlations as plant.<feature>.
// Unknown keys are rejected. Throws BadSpec.
SynthSpec parse_synth_spec(std::istream& in);
SynthSpec parse_synth_spec_text(const std::string& text);

std::string synth_writer_id(std::size_t writer_index);
int synth_age(const SynthSpec& spec, std::size_t writer_index);

// One writer's recording: alternating down/up strokes, sinusoidal
// trajectories, arched pressure profiles. Always passes validate_recording.
Recording generate_recording(const SynthSpec& spec, std::size_t writer_index);

struct CohortFiles {
  std::filesystem::path corpus_dir;
  std::filesystem::path metadata_path;
  std::vector<WriterMeta> meta;
};

// Writes <writer>_s<session>.svc per writer plus metadata.csv into out_dir.
// Throws BadSpec, IoFailure.
CohortFiles generate_cohort(const SynthSpec& spec,
                            const std::filesystem::path& out_dir);

}  // namespace penstat

#endif  // PENSTAT_SYNTH_HPP
