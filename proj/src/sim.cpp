#include "splitmap/sim.hpp"

#include <cmath>
#include <numbers>

namespace splitmap {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

void advance(const Scheme& s, double eps, double omega, double& q, double& p) {
  const double w2 = omega * omega;
  for (const Step& st : s.steps()) {
    switch (st.kind) {
      case StepKind::Drift:
        q = std::fma(st.c.value() * eps, p, q);
        break;
      case StepKind::Kick:
        p = std::fma(-st.c.value() * eps * w2, q, p);
        break;
      case StepKind::GradientKick:
        p = std::fma(-(st.c.value() * eps * w2 + st.u.value() * eps * eps * eps * w2 * w2),
                     q, p);
        break;
    }
  }
}

TrajectoryRecord iterate(const Scheme& s, double q0, double p0, double eps, double omega,
                         std::size_t steps, std::size_t stride) {
  if (stride == 0) stride = 1;
  TrajectoryRecord rec;
  rec.eps = eps;
  rec.omega = omega;

  const SpectralData sd = spectral(scheme_matrix<double>(s, eps, omega), eps);
  const auto m = scheme_matrix<double>(s, eps, omega);
  const bool has_h_a = sd.regime == Regime::Elliptic && sd.reversible && sd.m_star;
  rec.phase_scale =
      (sd.regime == Regime::Elliptic && m.nu * m.tau > 0) ? std::sqrt(m.nu / m.tau) : omega;

  double q = q0;
  double p = p0;
  double raw_prev = std::atan2(-p, rec.phase_scale * q);
  double phase = raw_prev;

  auto record = [&](std::size_t n) {
    TrajectorySample smp;
    smp.index = n;
    smp.t = static_cast<double>(n) * eps;
    smp.q = q;
    smp.p = p;
    smp.energy = 0.5 * p * p + 0.5 * omega * omega * q * q;
    if (has_h_a) smp.modified_energy = modified_hamiltonian(sd, q, p);
    smp.phase = phase;
    rec.samples.push_back(smp);
  };

  record(0);
  for (std::size_t n = 1; n <= steps; ++n) {
    advance(s, eps, omega, q, p);
    const double raw = std::atan2(-p, rec.phase_scale * q);
    phase += wrap(raw - raw_prev);
    raw_prev = raw;
    if (n % stride == 0 || n == steps) record(n);
  }
  return rec;
}

PhaseDrift phase_drift(const Scheme& s, double x, double periods) {
  const SpectralData sd = spectral(scheme_matrix<double>(s, x, 1.0), x);
  sd.require_elliptic();
  if (!sd.reversible) throw RegimeError("phase_drift: scheme is not time-reversible");

  PhaseDrift out;
  out.predicted = periods * 2.0 * kPi * (*sd.omega_a - 1.0);
  if (periods == 0.0) return out;

  const double t_end = periods * 2.0 * kPi;
  const auto before = static_cast<std::size_t>(std::floor(t_end / x));
  const TrajectoryRecord rec =
      iterate(s, 1.0, 0.0, x, 1.0, before + 1, before == 0 ? 1 : before);
  const TrajectorySample* a = nullptr;
  const TrajectorySample* b = nullptr;
  for (const auto& smp : rec.samples) {
    if (smp.index == before) a = &smp;
    if (smp.index == before + 1) b = &smp;
  }
  // The discrete phase advances by the same angle every step, so linear
  // interpolation between the bracketing steps is exact.
  const double frac = (t_end - a->t) / x;
  const double phase = a->phase + frac * (b->phase - a->phase);
  out.measured = phase - t_end;
  return out;
}

Portrait portrait(const Scheme& s, double q0, double p0, double eps, double omega,
                  std::size_t steps) {
  if (steps < 8) throw RegimeError("portrait: need at least 8 iterates for a conic fit");
  spectral(scheme_matrix<double>(s, eps, omega), eps).require_elliptic();

  const TrajectoryRecord rec = iterate(s, q0, p0, eps, omega, steps, 1);
  Portrait out;
  // Normal equations for min Σ (A q² + B qp + C p² - 1)².
  std::array<std::array<double, 3>, 3> n{};
  std::array<double, 3> rhs{};
  for (const auto& smp : rec.samples) {
    out.points.push_back({smp.q, smp.p});
    const std::array<double, 3> f{smp.q * smp.q, smp.q * smp.p, smp.p * smp.p};
    for (int i = 0; i < 3; ++i) {
      rhs[i] += f[i];
      for (int j = 0; j < 3; ++j) n[i][j] += f[i] * f[j];
    }
  }
  const double d = det3(n);
  if (std::abs(d) < 1e-300) throw RegimeError("portrait: degenerate point cloud");
  std::array<double, 3> sol{};
  for (int k = 0; k < 3; ++k) {
    auto mk = n;
    for (int i = 0; i < 3; ++i) mk[i][k] = rhs[i];
    sol[k] = det3(mk) / d;
  }
  out.conic = {{{sol[0], 0.5 * sol[1]}, {0.5 * sol[1], sol[2]}}};
  out.tilt_degrees = ellipse_tilt_degrees(out.conic);
  out.axis_ratio = ellipse_axis_ratio(out.conic);
  return out;
}

}  // namespace splitmap
