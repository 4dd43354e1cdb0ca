#include "penstat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "penstat/format.hpp"
#include "penstat/special.hpp"

namespace penstat {

std::string_view band_name(Band band) {
  switch (band) {
    case Band::kHigh: return "high";
    case Band::kMedium: return "medium";
    case Band::kLow: return "low";
    case Band::kNegligible: return "negligible";
  }
  return "negligible";
}

Band classify_band(double rho) {
  const double a = std::abs(rho);
  if (a >= 0.5) return Band::kHigh;
  if (a >= 0.3) return Band::kMedium;
  if (a >= 0.1) return Band::kLow;
  return Band::kNegligible;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::kLengthMismatch,
                std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  const std::size_t n = x.size();
  if (n < 3) {
    throw Error(Errc::kTooShort, "correlation needs at least 3 pairs");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw Error(Errc::kZeroVariance, "first sequence is constant", -1, "x");
  }
  if (syy == 0.0) {
    throw Error(Errc::kZeroVariance, "second sequence is constant", -1, "y");
  }
  const double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

double t_statistic(double rho, std::size_t n) {
  if (n < 3) {
    throw Error(Errc::kTooShort, "p-value needs n >= 3");
  }
  const double nu = static_cast<double>(n - 2);
  const double denom = 1.0 - rho * rho;
  if (denom <= 0.0) {
    return rho > 0 ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
  }
  return rho * std::sqrt(nu / denom);
}

double p_value(double rho, std::size_t n) {
  if (n < 3) {
    throw Error(Errc::kTooShort, "p-value needs n >= 3");
  }
  const double a = std::abs(rho);
  if (a >= 1.0) return 0.0;
  const double t = t_statistic(rho, n);
  const double p = student_t_two_tailed(t, static_cast<double>(n - 2));
  return std::clamp(p, 0.0, 1.0);
}

CorrelationReport correlate_cohort(
    const std::map<std::string, FeatureVector>& features,
    const std::map<std::string, WriterMeta>& meta) {
  CorrelationReport report;

  std::vector<const FeatureVector*> matched;
  std::vector<double> ages;
  for (const auto& [id, fv] : features) {
    auto it = meta.find(id);
    if (it == meta.end()) {
      report.excluded.emplace_back(id, "no metadata");
      continue;
    }
    matched.push_back(&fv);
    ages.push_back(static_cast<double>(it->second.age));
  }
  for (const auto& [id, m] : meta) {
    if (!features.contains(id)) {
      report.excluded.emplace_back(id, "no features");
    }
  }
  std::sort(report.excluded.begin(), report.excluded.end());

  report.n = matched.size();
  if (report.n < 3) {
    throw Error(Errc::kTooFewWriters,
                "need at least 3 matched writers, have " +
                    std::to_string(report.n));
  }

  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    CorrelationRow row;
    row.feature = kFeatureNames[f];
    row.n = report.n;
    std::vector<double> column;
    column.reserve(matched.size());
    for (const FeatureVector* fv : matched) {
      column.push_back(fv->values()[f]);
    }
    try {
      const double rho = pearson(column, ages);
      row.rho = rho;
      row.t_stat = t_statistic(rho, report.n);
      row.p = p_value(rho, report.n);
      row.band = classify_band(rho);
    } catch (const Error& e) {
      if (e.code() != Errc::kZeroVariance) throw;
      // Constant column (or constant ages): keep the row, mark it NA.
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<HistogramBin> histogram(std::span<const double> values,
                                    double bin_width, double origin) {
  if (values.empty()) {
    throw Error(Errc::kEmptyInput, "histogram of no values");
  }
  if (!(bin_width > 0)) {
    throw Error(Errc::kEmptyInput, "bin width must be positive");
  }
  std::map<std::int64_t, std::int64_t> counts;
  for (double v : values) {
    const auto k =
        static_cast<std::int64_t>(std::floor((v - origin) / bin_width));
    ++counts[k];
  }
  std::vector<HistogramBin> bins;
  bins.reserve(counts.size());
  for (const auto& [k, c] : counts) {
    bins.push_back(
        HistogramBin{origin + static_cast<double>(k) * bin_width, c});
  }
  return bins;
}

std::vector<std::pair<int, double>> scatter_pairs(
    const std::map<std::string, FeatureVector>& features,
    const std::map<std::string, WriterMeta>& meta, std::string_view feature) {
  const auto idx = feature_index(feature);
  if (!idx) {
    throw Error(Errc::kUnknownFeature, std::string(feature));
  }
  std::vector<std::pair<int, double>> pairs;
  for (const auto& [id, fv] : features) {
    auto it = meta.find(id);
    if (it == meta.end()) continue;
    pairs.emplace_back(it->second.age, fv.values()[*idx]);
  }
  return pairs;  // features map iterates in writer_id order already
}

namespace {

std::string cell(const std::optional<double>& v, bool table1, bool is_rho) {
  if (!v) return "NA";
  if (table1) return is_rho ? format_rho_table1(*v) : format_p_table1(*v);
  return format_double(*v);
}

}  // namespace

std::string report_csv(const CorrelationReport& report, bool table1_style) {
  std::string out = "feature,rho,p,t,n,band\n";
  for (const CorrelationRow& row : report.rows) {
    out += row.feature;
    out += ',';
    out += cell(row.rho, table1_style, true);
    out += ',';
    out += cell(row.p, table1_style, false);
    out += ',';
    out += row.t_stat ? format_double(*row.t_stat) : "NA";
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += row.band ? std::string(band_name(*row.band)) : "NA";
    out += '\n';
  }
  return out;
}

std::string report_json(const CorrelationReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["rows"] = nlohmann::ordered_json::array();
  for (const CorrelationRow& row : report.rows) {
    nlohmann::ordered_json r;
    r["feature"] = row.feature;
    if (row.rho) {
      r["rho"] = *row.rho;
      r["p"] = *row.p;
      if (std::isfinite(*row.t_stat)) {
        r["t"] = *row.t_stat;
      } else {
        r["t"] = nullptr;  // JSON has no infinity
      }
      r["band"] = band_name(*row.band);
    } else {
      r["rho"] = nullptr;
      r["p"] = nullptr;
      r["t"] = nullptr;
      r["band"] = nullptr;
    }
    r["n"] = row.n;
    j["rows"].push_back(std::move(r));
  }
  j["excluded"] = nlohmann::ordered_json::array();
  for (const auto& [id, reason] : report.excluded) {
    j["excluded"].push_back({{"writer_id", id}, {"reason", reason}});
  }
  return j.dump(2);
}

}  // namespace penstat
