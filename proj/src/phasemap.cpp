#include "splitmap/phasemap.hpp"

#include <cmath>
#include <numbers>

namespace splitmap {

Mat2 multiply(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

Mat2 identity2() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

Mat2 to_mat2(const PhaseMatrix<double>& m) { return {{{m.g, m.tau}, {-m.nu, m.h}}}; }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Elliptic:
      return "elliptic";
    case Regime::Parabolic:
      return "parabolic";
    case Regime::Hyperbolic:
      return "hyperbolic";
  }
  return "?";
}

void SpectralData::require_elliptic() const {
  if (regime != Regime::Elliptic) throw RegimeError(detail);
}

namespace {

// ντ - (g-h)²/4 equals 1 - (g+h)²/4 when det = 1, but is free of the
// cancellation in the trace near the identity.
double discriminant(const PhaseMatrix<double>& m) {
  const double skew = 0.5 * (m.g - m.h);
  return m.nu * m.tau - skew * skew;
}

Regime classify(const PhaseMatrix<double>& m) {
  const double margin = std::abs(m.g + m.h) - 2.0;
  if (std::abs(margin) <= kParabolicTol) {
    // Near ε = 0 the trace sits within rounding of 2 while the entries
    // still resolve a small positive θ².
    const double skew = 0.5 * (m.g - m.h);
    const double d = discriminant(m);
    const double scale = std::abs(m.nu * m.tau) + skew * skew;
    if (m.g + m.h > 0 && d > kParabolicTol * scale) return Regime::Elliptic;
    return Regime::Parabolic;
  }
  return margin > 0 ? Regime::Hyperbolic : Regime::Elliptic;
}

}  // namespace

SpectralData spectral(const PhaseMatrix<double>& m, double eps) {
  SpectralData sd;
  sd.eps = eps;
  sd.reversible = std::abs(m.g - m.h) <= kReversibleTol;

  const double half_trace = 0.5 * (m.g + m.h);
  sd.regime = classify(m);
  if (sd.regime == Regime::Parabolic) {
    sd.detail = "parabolic regime: |g + h| = 2, the eigen-angle is degenerate";
    return sd;
  }
  if (sd.regime == Regime::Hyperbolic) {
    sd.detail = "hyperbolic regime: |g + h| = " + std::to_string(std::abs(m.g + m.h)) +
                " > 2, the map is unstable";
    return sd;
  }

  const double xi = std::sqrt(std::max(discriminant(m), 0.0));
  // atan2 agrees with arccos(half_trace) when det = 1 and stays accurate
  // as θ -> 0.
  const double theta = std::atan2(xi, half_trace);
  sd.xi = xi;
  sd.theta = theta;
  sd.omega_a = theta / eps;

  if (m.nu * m.tau > 0) {
    const double ratio = std::sqrt(m.tau / m.nu);
    const double inv_mass = *sd.omega_a * ratio;
    sd.m_star = 1.0 / inv_mass;
    sd.k_star = *sd.omega_a / ratio;
  } else {
    sd.detail = "nu*tau <= 0: effective mass and spring constant undefined";
  }
  return sd;
}

namespace {

void require_elliptic(const PhaseMatrix<double>& m, const char* what) {
  if (classify(m) != Regime::Elliptic) {
    throw RegimeError(std::string(what) + ": map is not elliptic (|g + h| = " +
                      std::to_string(std::abs(m.g + m.h)) + ")");
  }
}

}  // namespace

Mat2 propagate_closed_form(const PhaseMatrix<double>& m, double eps, double t) {
  require_elliptic(m, "propagate_closed_form");
  const SpectralData sd = spectral(m, eps);
  const double angle = *sd.theta * t / eps;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double xi = *sd.xi;
  const double refl = (m.g - m.h) / (2.0 * xi) * s;
  return {{{c + refl, m.tau / xi * s}, {-m.nu / xi * s, c - refl}}};
}

double reflection_amplitude(const PhaseMatrix<double>& m, double eps, double t) {
  require_elliptic(m, "reflection_amplitude");
  const SpectralData sd = spectral(m, eps);
  return (m.g - m.h) / (2.0 * *sd.xi) * std::sin(*sd.theta * t / eps);
}

double modified_hamiltonian(const SpectralData& sd, double q, double p) {
  sd.require_elliptic();
  if (!sd.reversible) {
    throw RegimeError("modified_hamiltonian: map is not time-reversible (h != g)");
  }
  if (!sd.m_star || !sd.k_star) throw RegimeError("modified_hamiltonian: " + sd.detail);
  return p * p / (2.0 * *sd.m_star) + 0.5 * *sd.k_star * q * q;
}

Mat2 invariant_quadratic_form(const PhaseMatrix<double>& m) {
  require_elliptic(m, "invariant_quadratic_form");
  const double off = 0.5 * (m.g - m.h);
  return {{{m.nu, off}, {off, m.tau}}};
}

double ellipse_tilt_degrees(const Mat2& q) {
  // Direction of the larger eigenvalue is ½·atan2(2b, a - c); the major
  // axis of the level set is perpendicular to it.
  const double a = q[0][0];
  const double b = 0.5 * (q[0][1] + q[1][0]);
  const double c = q[1][1];
  double deg = (0.5 * std::atan2(2.0 * b, a - c) + std::numbers::pi / 2) * 180.0 /
               std::numbers::pi;
  while (deg > 90.0) deg -= 180.0;
  while (deg <= -90.0) deg += 180.0;
  return deg;
}

double ellipse_axis_ratio(const Mat2& q) {
  const double a = q[0][0];
  const double b = 0.5 * (q[0][1] + q[1][0]);
  const double c = q[1][1];
  const double mean = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), b);
  const double lo = mean - rad;
  const double hi = mean + rad;
  if (!(lo > 0)) throw RegimeError("ellipse_axis_ratio: form is not positive definite");
  return std::sqrt(hi / lo);
}

}  // namespace splitmap
