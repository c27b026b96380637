#pragma once

// The exact one-step map of a scheme applied to H = p²/2 + ω²q²/2.
//
// A scheme step is a shear of the (q, p) plane, so a whole time step is a
// 2×2 matrix [[g, τ], [-ν, h]] acting on the column (q, p). Entries can be
// numbers (for given ε, ω) or truncated series in x = εω with ω = 1.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>

#include "splitmap/scheme.hpp"
#include "splitmap/series.hpp"

namespace splitmap {

class RegimeError : public Error {
 public:
  using Error::Error;
};

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 multiply(const Mat2& a, const Mat2& b);
Mat2 identity2();

template <class T>
struct PhaseMatrix {
  T g;
  T tau;
  T nu;
  T h;

  T det() const { return g * h + tau * nu; }
  T trace() const { return g + h; }
};

/// Numeric entries as a plain 2×2 matrix.
Mat2 to_mat2(const PhaseMatrix<double>& m);

namespace detail {

template <class T>
T coefficient_as(const Coefficient& c) {
  if constexpr (std::is_same_v<T, double>) {
    return c.value();
  } else if constexpr (std::is_same_v<T, Rational>) {
    return c.exact();
  } else {
    return c.exact().template convert_to<T>();
  }
}

// Left-multiplies by each step in turn: the first step of the scheme ends
// up rightmost, i.e. it acts first on (q, p).
template <class T, class Shear, class Force>
PhaseMatrix<T> compose(const Scheme& s, PhaseMatrix<T> m, Shear drift_shear,
                       Force kick_shear) {
  for (const Step& st : s.steps()) {
    if (st.c.value() == 0.0 && st.u.value() == 0.0) continue;
    if (st.kind == StepKind::Drift) {
      const T sigma = drift_shear(st);
      m.g -= sigma * m.nu;
      m.tau += sigma * m.h;
    } else {
      const T mu = kick_shear(st);
      m.nu += mu * m.g;
      m.h -= mu * m.tau;
    }
  }
  return m;
}

}  // namespace detail

/// The single-factor matrix of one step.
template <class T>
PhaseMatrix<T> step_matrix(const Step& st, const T& eps, const T& omega) {
  const T c = detail::coefficient_as<T>(st.c);
  if (st.kind == StepKind::Drift) return {T(1), c * eps, T(0), T(1)};
  const T w2 = omega * omega;
  T mu = c * eps * w2;
  if (st.kind == StepKind::GradientKick) {
    mu += detail::coefficient_as<T>(st.u) * eps * eps * eps * w2 * w2;
  }
  return {T(1), T(0), mu, T(1)};
}

/// Product of the step matrices at step ε and frequency ω.
template <class T>
PhaseMatrix<T> scheme_matrix(const Scheme& s, const T& eps, const T& omega) {
  const T w2 = omega * omega;
  return detail::compose<T>(
      s, PhaseMatrix<T>{T(1), T(0), T(0), T(1)},
      [&](const Step& st) { return detail::coefficient_as<T>(st.c) * eps; },
      [&](const Step& st) {
        T mu = detail::coefficient_as<T>(st.c) * eps * w2;
        if (st.kind == StepKind::GradientKick) {
          mu += detail::coefficient_as<T>(st.u) * eps * eps * eps * w2 * w2;
        }
        return mu;
      });
}

/// Matrix entries as series in x = εω (ω = 1), truncated at order K.
/// S = double uses the double coefficients, S = Rational the exact ones.
template <class S>
PhaseMatrix<Series<S>> scheme_matrix_series(const Scheme& s, std::size_t order) {
  using Ser = Series<S>;
  const Ser x = Ser::variable(order);
  const Ser x3 = x * x * x;
  const Ser one = Ser::constant(order, S(1));
  const Ser zero(order);
  return detail::compose<Ser>(
      s, PhaseMatrix<Ser>{one, zero, zero, one},
      [&](const Step& st) { return x * detail::coefficient_as<S>(st.c); },
      [&](const Step& st) {
        Ser mu = x * detail::coefficient_as<S>(st.c);
        if (st.kind == StepKind::GradientKick) mu += x3 * detail::coefficient_as<S>(st.u);
        return mu;
      });
}

enum class Regime { Elliptic, Parabolic, Hyperbolic };

std::string to_string(Regime r);

struct SpectralData {
  Regime regime = Regime::Hyperbolic;
  bool reversible = false;
  double eps = 0.0;
  // Available in the elliptic regime only.
  std::optional<double> theta;
  std::optional<double> xi;
  std::optional<double> omega_a;
  // Additionally need ντ > 0.
  std::optional<double> m_star;
  std::optional<double> k_star;
  std::string detail;  // why quantities are missing, if any are

  /// Throws RegimeError carrying `detail` unless elliptic.
  void require_elliptic() const;
};

/// |g + h| within this distance of 2 counts as parabolic, except near the
/// identity when ντ - (g-h)²/4 is still resolved as positive.
inline constexpr double kParabolicTol = 1e-12;
/// |g - h| below this counts as reversible (h = g).
inline constexpr double kReversibleTol = 1e-12;

/// Eigen-angle, modified frequency and effective mass/spring constant of a
/// numeric one-step matrix with time step eps.
SpectralData spectral(const PhaseMatrix<double>& m, double eps);

/// M^{t/ε} in closed form as rotation plus reflection part, R + Σ; t
/// need not be a multiple of ε. Elliptic regime only.
Mat2 propagate_closed_form(const PhaseMatrix<double>& m, double eps, double t);

/// Σ coefficient (g - h)/(2ξ)·sin(θt/ε) of the closed-form evolution.
double reflection_amplitude(const PhaseMatrix<double>& m, double eps, double t);

/// H_A = p²/(2m*) + k* q²/2. Needs a reversible elliptic map with ντ > 0.
double modified_hamiltonian(const SpectralData& sd, double q, double p);

/// The conserved quadratic form Q = [[ν, (g-h)/2], [(g-h)/2, τ]], with
/// MᵀQM = Q. Elliptic regime only.
Mat2 invariant_quadratic_form(const PhaseMatrix<double>& m);

/// Angle in degrees, within (-90, 90], of the major axis of the ellipse
/// rᵀQr = const for a positive-definite symmetric Q.
double ellipse_tilt_degrees(const Mat2& q);

/// Ratio of the major to the minor axis of rᵀQr = const.
double ellipse_axis_ratio(const Mat2& q);

}  // namespace splitmap
