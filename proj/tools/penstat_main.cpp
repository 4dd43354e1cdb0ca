// penstat: online-handwriting feature extraction and age-correlation
// reports over .svc pen-capture corpora.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "penstat/error.hpp"
#include "penstat/features.hpp"
#include "penstat/format.hpp"
#include "penstat/stats.hpp"
#include "penstat/svc_io.hpp"
#include "penstat/synth.hpp"

namespace fs = std::filesystem;
using namespace penstat;

namespace {

// Exit codes, one class per error family (documented in the README):
//   0 success, 1 internal, 2 usage, 3 file format, 4 recording validation,
//   5 corpus/input-output, 6 statistics, 7 generator spec.
int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kCountMismatch:
    case Errc::kMalformedLine:
    case Errc::kBadHeader:
    case Errc::kBadAge:
    case Errc::kDuplicateWriter:
      return 3;
    case Errc::kNonMonotonicTime:
    case Errc::kFieldOutOfRange:
    case Errc::kTooShort:
    case Errc::kNoPenDownSamples:
    case Errc::kZeroTimeSpan:
      return 4;
    case Errc::kUnmatchedFile:
    case Errc::kEmptyCorpus:
    case Errc::kIoFailure:
      return 5;
    case Errc::kZeroVariance:
    case Errc::kLengthMismatch:
    case Errc::kEmptySignal:
    case Errc::kEmptyInput:
    case Errc::kZeroDuration:
    case Errc::kTooFewWriters:
    case Errc::kUnknownFeature:
      return 6;
    case Errc::kBadSpec:
      return 7;
  }
  return 1;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    throw Error(Errc::kIoFailure, "cannot open " + out_path);
  }
  f << text;
  if (!f.good()) {
    throw Error(Errc::kIoFailure, "short write to " + out_path);
  }
}

Recording parse_capture_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw Error(Errc::kIoFailure, "cannot read " + path.string());
  }
  return parse_capture(f);
}

std::vector<WriterMeta> parse_metadata_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw Error(Errc::kIoFailure, "cannot read " + path.string());
  }
  return parse_metadata(f);
}

struct CohortData {
  std::map<std::string, FeatureVector> features;
  std::map<std::string, WriterMeta> meta;
};

// Scans dir against the metadata table, extracts features per writer.
// A writer appearing in several sessions keeps the lowest session only.
CohortData load_cohort(const fs::path& dir, const fs::path& meta_path,
                       ScanMode mode, int entropy_bins) {
  CohortData data;
  const std::vector<WriterMeta> meta = parse_metadata_file(meta_path);
  const CorpusIndex index = scan_corpus(dir, meta, mode);
  for (const std::string& w : index.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  for (const CorpusEntry& entry : index.entries) {
    if (data.features.contains(entry.writer_id)) {
      std::cerr << "warning: skipped " << entry.path.filename().string()
                << ": writer " << entry.writer_id
                << " already loaded from an earlier session\n";
      continue;
    }
    try {
      const Recording rec = parse_capture_file(entry.path);
      data.features[entry.writer_id] = extract(rec, entropy_bins);
      data.meta[entry.writer_id] =
          WriterMeta{entry.writer_id, entry.age, entry.sex, entry.session};
    } catch (const Error& e) {
      if (mode == ScanMode::kStrict) throw;
      std::cerr << "warning: skipped " << entry.path.filename().string()
                << ": " << e.what() << '\n';
    }
  }
  return data;
}

struct CommonOpts {
  std::string input;
  std::string meta;
  std::string out;
  std::string format = "csv";
  int entropy_bins = kDefaultEntropyBins;
  bool strict = false;
};

int run_extract(const CommonOpts& opt) {
  std::vector<fs::path> files;
  const fs::path input(opt.input);
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".svc") {
        files.push_back(entry.path());
      }
    }
    if (files.empty()) {
      throw Error(Errc::kEmptyCorpus, "no .svc files under " + input.string());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::exists(input)) {
    files.push_back(input);
  } else {
    throw Error(Errc::kIoFailure, "no such input: " + input.string());
  }

  std::vector<std::pair<std::string, FeatureVector>> rows;
  for (const fs::path& file : files) {
    try {
      rows.emplace_back(file.filename().string(),
                        extract(parse_capture_file(file), opt.entropy_bins));
    } catch (const Error& e) {
      if (opt.strict || files.size() == 1) throw;
      std::cerr << "warning: skipped " << file.filename().string() << ": "
                << e.what() << '\n';
    }
  }
  if (rows.empty()) {
    throw Error(Errc::kEmptyCorpus, "no parseable capture files");
  }

  if (opt.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [name, fv] : rows) {
      nlohmann::ordered_json item;
      item["file"] = name;
      item["features"] = nlohmann::ordered_json::parse(feature_json(fv));
      arr.push_back(std::move(item));
    }
    write_output(arr.dump(2) + "\n", opt.out);
  } else {
    std::string text = "file," + feature_csv_header() + "\n";
    for (const auto& [name, fv] : rows) {
      text += name + "," + feature_csv_row(fv) + "\n";
    }
    write_output(text, opt.out);
  }
  return 0;
}

int run_cohort(const CommonOpts& opt, bool table1_style) {
  const CohortData data = load_cohort(opt.input, opt.meta,
                                      opt.strict ? ScanMode::kStrict
                                                 : ScanMode::kLenient,
                                      opt.entropy_bins);
  const CorrelationReport report = correlate_cohort(data.features, data.meta);
  for (const auto& [id, reason] : report.excluded) {
    std::cerr << "warning: excluded writer " << id << ": " << reason << '\n';
  }
  if (opt.format == "json") {
    write_output(report_json(report) + "\n", opt.out);
  } else {
    write_output(report_csv(report, table1_style), opt.out);
  }
  return 0;
}

int run_scatter(const CommonOpts& opt, const std::string& feature) {
  const CohortData data = load_cohort(opt.input, opt.meta,
                                      opt.strict ? ScanMode::kStrict
                                                 : ScanMode::kLenient,
                                      opt.entropy_bins);
  const auto pairs = scatter_pairs(data.features, data.meta, feature);
  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["feature"] = feature;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& [age, value] : pairs) {
      j["pairs"].push_back({age, value});
    }
    write_output(j.dump(2) + "\n", opt.out);
  } else {
    std::string text = "age," + feature + "\n";
    for (const auto& [age, value] : pairs) {
      text += std::to_string(age) + "," + format_double(value) + "\n";
    }
    write_output(text, opt.out);
  }
  return 0;
}

int run_hist(const CommonOpts& opt, double width, double origin) {
  const CohortData data = load_cohort(opt.input, opt.meta,
                                      opt.strict ? ScanMode::kStrict
                                                 : ScanMode::kLenient,
                                      opt.entropy_bins);
  std::vector<double> ages;
  for (const auto& [id, m] : data.meta) {
    if (data.features.contains(id)) {
      ages.push_back(static_cast<double>(m.age));
    }
  }
  const auto bins = histogram(ages, width, origin);
  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["width"] = width;
    j["origin"] = origin;
    j["bins"] = nlohmann::ordered_json::array();
    for (const auto& b : bins) {
      j["bins"].push_back({b.lower_edge, b.count});
    }
    write_output(j.dump(2) + "\n", opt.out);
  } else {
    std::string text = "bin_lower,count\n";
    for (const auto& b : bins) {
      text +=
          format_double(b.lower_edge) + "," + std::to_string(b.count) + "\n";
    }
    write_output(text, opt.out);
  }
  return 0;
}

int run_synth(const std::string& out_dir, const std::string& spec_path,
              const std::optional<std::uint64_t>& seed) {
  SynthSpec spec;
  if (!spec_path.empty()) {
    std::ifstream f(spec_path, std::ios::binary);
    if (!f) {
      throw Error(Errc::kIoFailure, "cannot read " + spec_path);
    }
    spec = parse_synth_spec(f);
  }
  if (seed) spec.seed = *seed;
  const CohortFiles files = generate_cohort(spec, out_dir);
  std::cout << "wrote " << spec.writers << " recordings and "
            << files.metadata_path.filename().string() << " under "
            << files.corpus_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online-handwriting dynamics: feature extraction and "
               "age-correlation reports over .svc pen-capture corpora"};
  app.require_subcommand(1);

  CommonOpts opt;
  bool table1_style = false;
  std::string feature;
  double hist_width = 5.0;
  double hist_origin = 18.0;
  std::string spec_path;
  std::optional<std::uint64_t> seed;
  std::string synth_dir;

  auto add_common = [&](CLI::App* sub, bool needs_meta) {
    sub->add_option("input", opt.input, "corpus directory")->required();
    if (needs_meta) {
      sub->add_option("--meta", opt.meta, "writer metadata CSV")->required();
    }
    sub->add_option("--out", opt.out, "output file (default: stdout)");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--entropy-bins", opt.entropy_bins,
                    "histogram bins for entropy features")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--strict", opt.strict,
                  "fail on the first unmatched or unparseable file");
  };

  CLI::App* extract_cmd =
      app.add_subcommand("extract", "feature vectors per recording");
  add_common(extract_cmd, false);
  extract_cmd->get_option("input")
      ->description("corpus directory or single .svc file");

  CLI::App* cohort_cmd =
      app.add_subcommand("cohort", "per-feature age correlation report");
  add_common(cohort_cmd, true);
  cohort_cmd->add_flag("--table1-style", table1_style,
                       "round rho to 2 decimals, print p in scientific form");

  CLI::App* scatter_cmd =
      app.add_subcommand("scatter", "(age, feature) pairs for plotting");
  add_common(scatter_cmd, true);
  scatter_cmd->add_option("--feature", feature, "feature name")->required();

  CLI::App* hist_cmd =
      app.add_subcommand("hist", "histogram of matched writers' ages");
  add_common(hist_cmd, true);
  hist_cmd->add_option("--hist-width", hist_width, "bin width in years")
      ->check(CLI::PositiveNumber);
  hist_cmd->add_option("--hist-origin", hist_origin,
                       "lower edge of the first bin");

  CLI::App* synth_cmd =
      app.add_subcommand("synth", "generate a synthetic corpus");
  synth_cmd->add_option("output", synth_dir, "target directory")->required();
  synth_cmd->add_option("--spec", spec_path, "generator config file");
  synth_cmd->add_option("--seed", seed, "override the spec seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (extract_cmd->parsed()) return run_extract(opt);
    if (cohort_cmd->parsed()) return run_cohort(opt, table1_style);
    if (scatter_cmd->parsed()) return run_scatter(opt, feature);
    if (hist_cmd->parsed()) return run_hist(opt, hist_width, hist_origin);
    if (synth_cmd->parsed()) return run_synth(synth_dir, spec_path, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
