#include "penstat/kinematics.hpp"

#include <cmath>
#include <string>

namespace penstat {

std::vector<double> derivative(std::span<const double> signal,
                               std::span<const std::int64_t> t) {
  if (signal.size() != t.size()) {
    throw Error(Errc::kLengthMismatch,
                "signal has " + std::to_string(signal.size()) +
                    " points, timestamps " + std::to_string(t.size()));
  }
  const std::size_t n = signal.size();
  if (n < 2) {
    throw Error(Errc::kTooShort, "derivative needs at least 2 points");
  }
  std::vector<double> out(n);
  auto slope = [&](std::size_t lo, std::size_t hi) {
    const std::int64_t dt_ms = t[hi] - t[lo];
    if (dt_ms == 0) return 0.0;
    return (signal[hi] - signal[lo]) * 1000.0 / static_cast<double>(dt_ms);
  };
  out[0] = slope(0, 1);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = slope(i - 1, i + 1);
  out[n - 1] = slope(n - 2, n - 1);
  return out;
}

KinematicTrace derive(std::span<const double> x, std::span<const double> y,
                      std::span<const std::int64_t> t) {
  const std::size_t n = x.size();
  if (y.size() != n || t.size() != n) {
    throw Error(Errc::kLengthMismatch, "x, y and t must have equal lengths");
  }
  if (n < 2) {
    throw Error(Errc::kTooShort, "kinematics need at least 2 samples");
  }
  if (t.back() == t.front()) {
    throw Error(Errc::kZeroTimeSpan, "all timestamps equal");
  }

  KinematicTrace trace;
  trace.vx = derivative(x, t);
  trace.vy = derivative(y, t);
  trace.ax = derivative(trace.vx, t);
  trace.ay = derivative(trace.vy, t);

  trace.speed.resize(n);
  trace.theta.resize(n);
  trace.ds.resize(n);
  trace.accel_mag.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    trace.speed[i] = std::hypot(trace.vx[i], trace.vy[i]);
    trace.theta[i] = std::atan2(trace.vy[i], trace.vx[i]);
    trace.ds[i] = i == 0 ? 0.0 : std::hypot(x[i] - x[i - 1], y[i] - y[i - 1]);
    trace.accel_mag[i] = std::hypot(trace.ax[i], trace.ay[i]);
  }

  trace.a_tangential = derivative(trace.speed, t);

  trace.curvature_radius.resize(n);
  trace.a_centripetal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = trace.speed[i];
    double kappa = 0.0;
    if (v > 1e-9) {
      kappa = (trace.vx[i] * trace.ay[i] - trace.vy[i] * trace.ax[i]) /
              (v * v * v);
    }
    const double radius = std::abs(kappa) < 1e-6 ? kCurvatureRadiusCap
                                                 : 1.0 / std::abs(kappa);
    trace.curvature_radius[i] = radius;
    trace.a_centripetal[i] = v * v / radius;
  }
  return trace;
}

KinematicTrace derive(std::span<const Sample> samples) {
  const std::size_t n = samples.size();
  std::vector<double> x(n), y(n);
  std::vector<std::int64_t> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = samples[i].x;
    y[i] = samples[i].y;
    t[i] = samples[i].t;
  }
  return derive(x, y, t);
}

}  // namespace penstat
