#pragma once

// Direct step-by-step iteration of a scheme on the oscillator. Each step
// is applied as a shear of (q, p); nothing here multiplies phase matrices,
// so trajectories serve as an independent check on the closed forms.

#include <cstddef>
#include <optional>
#include <vector>

#include "splitmap/phasemap.hpp"
#include "splitmap/scheme.hpp"

namespace splitmap {

struct TrajectorySample {
  std::size_t index = 0;
  double t = 0.0;
  double q = 0.0;
  double p = 0.0;
  double energy = 0.0;                     // p²/2 + ω²q²/2
  std::optional<double> modified_energy;   // H_A, reversible elliptic maps only
  double phase = 0.0;                      // unwrapped
};

struct TrajectoryRecord {
  double eps = 0.0;
  double omega = 1.0;
  // Phase is measured in the plane (scale·q, p); scale = √(ν/τ) = √(m*k*)
  // when that is defined, ω otherwise.
  double phase_scale = 1.0;
  std::vector<TrajectorySample> samples;
};

/// One time step applied to (q, p) in place.
void advance(const Scheme& s, double eps, double omega, double& q, double& p);

/// N steps from (q0, p0), sampling index 0, every `stride` steps, and the
/// final step.
TrajectoryRecord iterate(const Scheme& s, double q0, double p0, double eps, double omega,
                         std::size_t steps, std::size_t stride = 1);

struct PhaseDrift {
  double measured = 0.0;   // unwrapped trajectory phase minus ωt at t = k·2π/ω
  double predicted = 0.0;  // k·Δφ
};

/// Phase lag or lead accumulated over `periods` periods at x = εω (ω = 1).
PhaseDrift phase_drift(const Scheme& s, double x, double periods);

struct Portrait {
  std::vector<std::array<double, 2>> points;
  Mat2 conic{};            // fitted A q² + B qp + C p² = 1, as [[A, B/2], [B/2, C]]
  double tilt_degrees = 0.0;
  double axis_ratio = 1.0;
};

/// Samples N iterates and least-squares fits a centred conic through them.
Portrait portrait(const Scheme& s, double q0, double p0, double eps, double omega,
                  std::size_t steps);

}  // namespace splitmap
