#ifndef PENSTAT_STATS_HPP
#define PENSTAT_STATS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "penstat/capture.hpp"
#include "penstat/features.hpp"

namespace penstat {

enum class Band { kHigh, kMedium, kLow, kNegligible };

std::string_view band_name(Band band);

// |rho| >= 0.5 high, >= 0.3 medium, >= 0.1 low, else negligible;
// lower edges inclusive, sign-symmetric.
Band classify_band(double rho);

// Pearson product-moment correlation, clamped to [-1, 1].
// Throws LengthMismatch, TooShort (n < 3), ZeroVariance("x"|"y").
double pearson(std::span<const double> x, std::span<const double> y);

// Two-tailed p for a correlation of rho over n pairs, via the exact t
// transform with n - 2 degrees of freedom. |rho| = 1 gives 0.
// Throws TooShort (n < 3).
double p_value(double rho, std::size_t n);

// The t statistic behind p_value; +/-inf at |rho| = 1.
double t_statistic(double rho, std::size_t n);

// One feature's row. Zero-variance columns keep their place in the report
// but carry no numbers (not_applicable rows).
struct CorrelationRow {
  std::string feature;
  std::optional<double> rho;
  std::optional<double> t_stat;
  std::optional<double> p;
  std::size_t n = 0;
  std::optional<Band> band;

  bool applicable() const { return rho.has_value(); }
};

struct CorrelationReport {
  std::vector<CorrelationRow> rows;  // always kFeatureCount, canonical order
  std::size_t n = 0;                 // matched writers
  std::vector<std::pair<std::string, std::string>> excluded;  // (id, reason)
};

// Correlates every feature against writer age over the writers present in
// both maps. Writers missing from one side are listed as excluded.
// Throws TooFewWriters (< 3 matched).
CorrelationReport correlate_cohort(
    const std::map<std::string, FeatureVector>& features,
    const std::map<std::string, WriterMeta>& meta);

struct HistogramBin {
  double lower_edge = 0;
  std::int64_t count = 0;
};

// Half-open bins [edge, edge + width) anchored at origin; only occupied
// bins are returned, in ascending order. Throws EmptyInput.
std::vector<HistogramBin> histogram(std::span<const double> values,
                                    double bin_width, double origin);

// (age, feature value) pairs for every writer present in both maps,
// ordered by writer_id. Throws UnknownFeature.
std::vector<std::pair<int, double>> scatter_pairs(
    const std::map<std::string, FeatureVector>& features,
    const std::map<std::string, WriterMeta>& meta, std::string_view feature);

// Report serialization: CSV columns feature,rho,p,t,n,band. table1_style
// prints rho rounded to two decimals and p in scientific notation;
// otherwise shortest round-trip formatting. Not-applicable cells read NA.
std::string report_csv(const CorrelationReport& report, bool table1_style);
std::string report_json(const CorrelationReport& report);

}  // namespace penstat

#endif  // PENSTAT_STATS_HPP
