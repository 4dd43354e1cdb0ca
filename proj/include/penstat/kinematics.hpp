#ifndef PENSTAT_KINEMATICS_HPP
#define PENSTAT_KINEMATICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "penstat/capture.hpp"

namespace penstat {

// Straight segments and rest points have unbounded curvature radius; the
// trace reports this cap instead so every output stays finite.
inline constexpr double kCurvatureRadiusCap = 1e6;

// Per-sample dynamic quantities derived from positions and timestamps.
// All arrays have the length of the input sequence. Callers are expected to
// pass stroke-local ranges; differentiating across a pen-up gap would
// manufacture a spurious jump.
struct KinematicTrace {
  std::vector<double> vx, vy;        // units/s
  std::vector<double> speed;         // units/s
  std::vector<double> theta;         // trajectory angle, radians
  std::vector<double> ds;            // displacement from previous sample
  std::vector<double> ax, ay;        // units/s^2
  std::vector<double> accel_mag;     // units/s^2
  std::vector<double> a_tangential;  // d(speed)/dt, units/s^2
  std::vector<double> curvature_radius;  // units, capped
  std::vector<double> a_centripetal;     // speed^2 / curvature_radius
};

// First derivative of a sampled signal: central differences over the actual
// (possibly irregular) timestamps at interior points, one-sided at the two
// endpoints, 0 wherever the local time window is empty. t is milliseconds,
// the result is per second. Throws TooShort for fewer than 2 points.
std::vector<double> derivative(std::span<const double> signal,
                               std::span<const std::int64_t> t);

// Throws TooShort (< 2 samples), ZeroTimeSpan (all timestamps equal), or
// LengthMismatch.
KinematicTrace derive(std::span<const double> x, std::span<const double> y,
                      std::span<const std::int64_t> t);

KinematicTrace derive(std::span<const Sample> samples);

}  // namespace penstat

#endif  // PENSTAT_KINEMATICS_HPP
