#include "penstat/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "penstat/format.hpp"
#include "penstat/kinematics.hpp"

namespace penstat {

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "t_upm",        "t_downm",      "p_meanm",       "p_maxm",
    "p_medianm",    "p_modem",      "p_stdm",        "speed_maxm",
    "entropy_xm",   "entropy_ym",   "entropy_pm",    "ZCRm",
    "NZCRm",        "strokes_dm",   "strokes_um",    "nt_up",
    "nt_down",      "dp_meanm",     "dp_maxm",       "ddp_maxm",
    "entropy_dpm",  "entropy_ddpm", "entropy_accelerationm",
    "p100m",        "p200m",        "p300m",         "p400m",
    "p500m",        "p600m",        "p700m",         "p800m",
    "p900m",        "teagerxmax",   "teagerym",      "teagerymedian",
    "teagerymax",   "teagerpm",     "teagerpmedian", "teagerpmax"};

std::array<double, kFeatureCount> FeatureVector::values() const {
  return {t_upm,        t_downm,      p_meanm,       p_maxm,
          p_medianm,    p_modem,      p_stdm,        speed_maxm,
          entropy_xm,   entropy_ym,   entropy_pm,    zcrm,
          nzcrm,        strokes_dm,   strokes_um,    nt_up,
          nt_down,      dp_meanm,     dp_maxm,       ddp_maxm,
          entropy_dpm,  entropy_ddpm, entropy_accelerationm,
          pnm[0],       pnm[1],       pnm[2],        pnm[3],
          pnm[4],       pnm[5],       pnm[6],        pnm[7],
          pnm[8],       teagerxmax,   teagerym,      teagerymedian,
          teagerymax,   teagerpm,     teagerpmedian, teagerpmax};
}

std::optional<std::size_t> feature_index(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (name == kFeatureNames[i]) return i;
  }
  return std::nullopt;
}

double FeatureVector::value(std::string_view name) const {
  auto idx = feature_index(name);
  if (!idx) {
    throw Error(Errc::kUnknownFeature, std::string(name));
  }
  return values()[*idx];
}

std::vector<double> teager(std::span<const double> signal) {
  const std::size_t n = signal.size();
  if (n < 3) {
    throw Error(Errc::kTooShort, "Teager operator needs at least 3 points");
  }
  std::vector<double> out(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i - 1] = signal[i] * signal[i] - signal[i - 1] * signal[i + 1];
  }
  return out;
}

double entropy(std::span<const double> signal, int bins) {
  if (signal.empty()) {
    throw Error(Errc::kEmptySignal, "entropy of an empty signal");
  }
  if (bins < 1) {
    throw Error(Errc::kEmptyInput, "histogram bin count must be positive");
  }
  double lo = signal[0], hi = signal[0];
  for (double v : signal) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) return 0.0;

  std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
  const double width = (hi - lo) / bins;
  for (double v : signal) {
    auto k = static_cast<std::int64_t>((v - lo) / width);
    k = std::clamp<std::int64_t>(k, 0, bins - 1);
    ++counts[static_cast<std::size_t>(k)];
  }
  const double total = static_cast<double>(signal.size());
  double h = 0.0;
  for (std::int64_t c : counts) {
    if (c == 0) continue;
    const double q = static_cast<double>(c) / total;
    h -= q * std::log2(q);
  }
  return std::max(h, 0.0);
}

ZeroCrossings zero_crossing_rate(std::span<const double> signal,
                                 double duration_s) {
  const std::size_t n = signal.size();
  if (n < 2) {
    throw Error(Errc::kTooShort, "zero-crossing rate needs at least 2 points");
  }
  if (!(duration_s > 0)) {
    throw Error(Errc::kZeroDuration, "duration must be positive");
  }
  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= static_cast<double>(n);

  int prev = 0;
  std::int64_t crossings = 0;
  for (double v : signal) {
    const double d = v - mean;
    const int sign = d > 0 ? 1 : d < 0 ? -1 : 0;
    if (sign == 0) continue;  // inherit the previous nonzero sign
    if (prev != 0 && sign != prev) ++crossings;
    prev = sign;
  }
  return ZeroCrossings{
      static_cast<double>(crossings) / duration_s,
      static_cast<double>(crossings) / static_cast<double>(n - 1)};
}

namespace {

double mean_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double max_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return *std::max_element(v.begin(), v.end());
}

// Lower-middle element for even counts, matching the pressure median rule.
double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = (v.size() - 1) / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                   v.end());
  return v[mid];
}

double mean_abs(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s / static_cast<double>(v.size());
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double entropy_or_zero(std::span<const double> v, int bins) {
  if (v.empty()) return 0.0;
  return entropy(v, bins);
}

// Stroke-mean removal done in exact integer arithmetic: the shifted value is
// (n*v - sum)/n, whose numerator is translation invariant bit for bit.
std::vector<double> rebase_to_mean(std::span<const Sample> samples,
                                   std::int32_t Sample::*field) {
  const auto n = static_cast<std::int64_t>(samples.size());
  std::int64_t sum = 0;
  for (const Sample& s : samples) sum += s.*field;
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) {
    out.push_back(static_cast<double>(n * static_cast<std::int64_t>(s.*field) -
                                      sum) /
                  static_cast<double>(n));
  }
  return out;
}

void append(std::vector<double>& pool, const std::vector<double>& values) {
  pool.insert(pool.end(), values.begin(), values.end());
}

}  // namespace

FeatureVector extract(const Recording& rec, int entropy_bins) {
  const std::vector<Stroke> strokes = segment_strokes(rec);

  FeatureVector fv;

  std::int64_t down_ms = 0, up_ms = 0;
  std::size_t n_down = 0, n_up = 0;
  for (const Stroke& s : strokes) {
    if (s.kind == StrokeKind::kDown) {
      down_ms += s.duration_ms;
      ++n_down;
    } else {
      up_ms += s.duration_ms;
      ++n_up;
    }
  }
  fv.t_downm = static_cast<double>(down_ms) / 1000.0;
  fv.t_upm = static_cast<double>(up_ms) / 1000.0;
  fv.strokes_dm = static_cast<double>(n_down);
  fv.strokes_um = static_cast<double>(n_up);
  fv.nt_down = n_down > 0 ? fv.t_downm / static_cast<double>(n_down) : 0.0;
  fv.nt_up = n_up > 0 ? fv.t_upm / static_cast<double>(n_up) : 0.0;

  // Pen-down pools.
  std::vector<double> xs, ys, ps;
  std::vector<std::int32_t> pressures;
  for (const Stroke& s : strokes) {
    if (s.kind != StrokeKind::kDown) continue;
    for (const Sample& smp : s.samples) {
      xs.push_back(smp.x);
      ys.push_back(smp.y);
      ps.push_back(smp.pressure);
      pressures.push_back(smp.pressure);
    }
  }

  {
    double sum = 0.0;
    for (std::int32_t p : pressures) sum += p;
    fv.p_meanm = sum / static_cast<double>(pressures.size());
    fv.p_maxm = *std::max_element(pressures.begin(), pressures.end());

    std::vector<std::int32_t> sorted = pressures;
    std::sort(sorted.begin(), sorted.end());
    fv.p_medianm = sorted[(sorted.size() - 1) / 2];

    std::int32_t mode = sorted[0];
    std::size_t best = 0, run = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      run = (i > 0 && sorted[i] == sorted[i - 1]) ? run + 1 : 1;
      if (run > best) {  // strict: ties keep the smaller value seen first
        best = run;
        mode = sorted[i];
      }
    }
    fv.p_modem = mode;

    double var = 0.0;
    for (std::int32_t p : pressures) {
      const double d = p - fv.p_meanm;
      var += d * d;
    }
    fv.p_stdm = std::sqrt(var / static_cast<double>(pressures.size()));

    for (std::size_t k = 0; k < fv.pnm.size(); ++k) {
      const std::int32_t threshold = 100 * static_cast<std::int32_t>(k + 1);
      std::size_t above = 0;
      for (std::int32_t p : pressures) above += p > threshold ? 1 : 0;
      fv.pnm[k] =
          static_cast<double>(above) / static_cast<double>(pressures.size());
    }
  }

  fv.entropy_xm = entropy(xs, entropy_bins);
  fv.entropy_ym = entropy(ys, entropy_bins);
  fv.entropy_pm = entropy(ps, entropy_bins);

  // Stroke-local derivative pools.
  std::vector<double> vy_pool, accel_pool, dp_pool, ddp_pool;
  double speed_max_interior = 0.0, speed_max_any = 0.0;
  bool has_interior = false, has_any = false;
  std::vector<double> teager_x, teager_y, teager_p;

  for (const Stroke& s : strokes) {
    if (s.kind != StrokeKind::kDown) continue;
    const std::size_t n = s.samples.size();

    if (n >= 3) {
      append(teager_x, teager(rebase_to_mean(s.samples, &Sample::x)));
      append(teager_y, teager(rebase_to_mean(s.samples, &Sample::y)));
      std::vector<double> praw(n);
      for (std::size_t i = 0; i < n; ++i) praw[i] = s.samples[i].pressure;
      append(teager_p, teager(praw));
    }

    // Zero-span strokes have no usable time base.
    if (n < 2 || s.samples.back().t == s.samples.front().t) continue;

    const KinematicTrace trace = derive(s.samples);
    append(vy_pool, trace.vy);
    append(accel_pool, trace.accel_mag);

    for (std::size_t i = 0; i < n; ++i) {
      has_any = true;
      speed_max_any = std::max(speed_max_any, trace.speed[i]);
      if (i > 0 && i + 1 < n) {
        has_interior = true;
        speed_max_interior = std::max(speed_max_interior, trace.speed[i]);
      }
    }

    std::vector<double> praw(n);
    std::vector<std::int64_t> t(n);
    for (std::size_t i = 0; i < n; ++i) {
      praw[i] = s.samples[i].pressure;
      t[i] = s.samples[i].t;
    }
    const std::vector<double> dp = derivative(praw, t);
    const std::vector<double> ddp = derivative(dp, t);
    append(dp_pool, dp);
    append(ddp_pool, ddp);
  }

  fv.speed_maxm = has_interior ? speed_max_interior
                               : (has_any ? speed_max_any : 0.0);

  if (vy_pool.size() >= 2 && fv.t_downm > 0) {
    const ZeroCrossings zc = zero_crossing_rate(vy_pool, fv.t_downm);
    fv.zcrm = zc.per_second;
    fv.nzcrm = zc.per_sample;
  }

  fv.dp_meanm = mean_abs(dp_pool);
  fv.dp_maxm = max_abs(dp_pool);
  fv.ddp_maxm = max_abs(ddp_pool);
  fv.entropy_dpm = entropy_or_zero(dp_pool, entropy_bins);
  fv.entropy_ddpm = entropy_or_zero(ddp_pool, entropy_bins);
  fv.entropy_accelerationm = entropy_or_zero(accel_pool, entropy_bins);

  fv.teagerxmax = max_of(teager_x);
  fv.teagerym = mean_of(teager_y);
  fv.teagerymedian = median_of(teager_y);
  fv.teagerymax = max_of(teager_y);
  fv.teagerpm = mean_of(teager_p);
  fv.teagerpmedian = median_of(teager_p);
  fv.teagerpmax = max_of(teager_p);

  return fv;
}

std::string feature_csv_header() {
  std::string h;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (i > 0) h += ',';
    h += kFeatureNames[i];
  }
  return h;
}

std::string feature_csv_row(const FeatureVector& fv) {
  const auto vals = fv.values();
  std::string row;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (i > 0) row += ',';
    row += format_double(vals[i]);
  }
  return row;
}

std::string feature_json(const FeatureVector& fv) {
  nlohmann::ordered_json obj;
  const auto vals = fv.values();
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    obj[kFeatureNames[i]] = vals[i];
  }
  return obj.dump();
}

}  // namespace penstat
