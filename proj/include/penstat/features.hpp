#ifndef PENSTAT_FEATURES_HPP
#define PENSTAT_FEATURES_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "penstat/capture.hpp"

namespace penstat {

inline constexpr int kDefaultEntropyBins = 16;
inline constexpr std::size_t kFeatureCount = 39;

// Canonical feature order; CSV columns, report rows and values() follow it.
extern const std::array<const char*, kFeatureCount> kFeatureNames;

// The 39 per-recording features.
//
// Conventions that the field comments rely on:
//  * "pen-down samples" are the samples of down strokes after segmentation.
//  * derivative-based signals (velocity, dp, ddp, acceleration) are computed
//    per down stroke and pooled; nothing is differentiated across a pen-up
//    gap. Down strokes with fewer than 2 samples or zero time span
//    contribute nothing to those pools.
//  * Teager energy pools take down strokes with at least 3 samples; x and y
//    are re-based to their stroke mean first (the operator is offset
//    sensitive and features must not depend on where the tablet origin is),
//    pressure is used raw.
//  * an empty pool resolves the affected features to 0.
struct FeatureVector {
  double t_upm = 0;    // total in-air time between strokes, seconds
  double t_downm = 0;  // total on-surface time, seconds
  double p_meanm = 0;
  double p_maxm = 0;
  double p_medianm = 0;  // lower-middle element for even counts
  double p_modem = 0;    // most frequent value, ties toward the smaller
  double p_stdm = 0;     // population standard deviation
  double speed_maxm = 0;
  double entropy_xm = 0;
  double entropy_ym = 0;
  double entropy_pm = 0;
  double zcrm = 0;   // vertical-velocity zero crossings per second
  double nzcrm = 0;  // same count per sample step
  double strokes_dm = 0;
  double strokes_um = 0;
  double nt_up = 0;    // t_upm / strokes_um, 0 when no up strokes
  double nt_down = 0;  // t_downm / strokes_dm
  double dp_meanm = 0;  // mean |dp|
  double dp_maxm = 0;   // max |dp|
  double ddp_maxm = 0;  // max |ddp|
  double entropy_dpm = 0;   // signed dp values
  double entropy_ddpm = 0;  // signed ddp values
  double entropy_accelerationm = 0;
  std::array<double, 9> pnm{};  // p100m..p900m: fraction of pen-down samples
                                // with pressure strictly above the threshold
  double teagerxmax = 0;
  double teagerym = 0;
  double teagerymedian = 0;
  double teagerymax = 0;
  double teagerpm = 0;
  double teagerpmedian = 0;
  double teagerpmax = 0;

  std::array<double, kFeatureCount> values() const;
  double value(std::string_view name) const;  // throws UnknownFeature

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

std::optional<std::size_t> feature_index(std::string_view name);

// Discrete Teager energy, psi(n) = s(n)^2 - s(n-1)*s(n+1), interior points
// only (output length = input length - 2). Throws TooShort below 3 points.
std::vector<double> teager(std::span<const double> signal);

// Shannon entropy in bits over a uniform histogram of `bins` cells spanning
// [min, max] of the signal itself; a constant signal scores 0.
// Throws EmptySignal.
double entropy(std::span<const double> signal, int bins);

struct ZeroCrossings {
  double per_second = 0;
  double per_sample = 0;
};

// Sign changes of the mean-removed signal; samples exactly at the mean
// inherit the previous nonzero sign. Throws TooShort, ZeroDuration.
ZeroCrossings zero_crossing_rate(std::span<const double> signal,
                                 double duration_s);

// Computes all 39 features for a validated recording.
// Throws NoPenDownSamples when segmentation finds no down stroke.
FeatureVector extract(const Recording& rec,
                      int entropy_bins = kDefaultEntropyBins);

// Serialization. The CSV header is the comma-joined kFeatureNames list; the
// row uses shortest round-trip float formatting. JSON is a flat object with
// the same keys in the same order.
std::string feature_csv_header();
std::string feature_csv_row(const FeatureVector& fv);
std::string feature_json(const FeatureVector& fv);

}  // namespace penstat

#endif  // PENSTAT_FEATURES_HPP
