#pragma once

// Benchmark quantities of a scheme on the harmonic oscillator: modified
// frequency and effective parameters as series in x = εω, phase error,
// leading order coefficient, cost-normalized coefficient, stability limit
// and convergence of the frequency series.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splitmap/phasemap.hpp"
#include "splitmap/scheme.hpp"
#include "splitmap/series.hpp"

namespace splitmap {

class AnalysisError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultOrder = 10;

namespace detail {

inline void require_symmetric(const Scheme& s, const char* what) {
  if (!is_symmetric(s)) {
    throw AnalysisError(std::string(what) + ": scheme '" + s.name() +
                        "' is not time-reversible; series extraction assumes h = g");
  }
}

// ξ(x)/x as a series of order K - 1, from matrix entries of order K.
template <class S>
Series<S> reduced_xi(const PhaseMatrix<Series<S>>& m) {
  const Series<S> prod = m.tau.divided_by_x() * m.nu.divided_by_x();
  if (!(prod[0] > S(0))) {
    throw AnalysisError("series: leading coefficient of nu*tau/x^2 is not positive");
  }
  return sqrt(prod);
}

}  // namespace detail

/// ω_A/ω as a series in x, truncated at `order`. Symmetric schemes only.
template <class S>
Series<S> omega_a_series(const Scheme& s, std::size_t order = kDefaultOrder) {
  detail::require_symmetric(s, "omega_a_series");
  // One extra order is consumed by the two divisions by x.
  const auto m = scheme_matrix_series<S>(s, order + 1);
  const Series<S> reduced = detail::reduced_xi(m);  // ξ/x, order K
  Series<S> xi(order + 1);
  for (std::size_t i = 0; i <= order; ++i) xi[i + 1] = reduced[i];
  return compose_asin(xi).divided_by_x();
}

template <class S>
struct EffectiveParams {
  Series<S> inv_mass;  // 1/m*
  Series<S> k_star;    // k*/ω²
};

/// 1/m* = (ω_A/ω)·sqrt(τ/ν) and k*/ω² = (ω_A/ω)·sqrt(ν/τ) as series in x.
template <class S>
EffectiveParams<S> effective_param_series(const Scheme& s,
                                          std::size_t order = kDefaultOrder) {
  const Series<S> wa = omega_a_series<S>(s, order);
  const auto m = scheme_matrix_series<S>(s, order + 1);
  const Series<S> tau = m.tau.divided_by_x();
  const Series<S> nu = m.nu.divided_by_x();
  if (!(tau[0] > S(0)) || !(nu[0] > S(0))) {
    throw AnalysisError("effective_param_series: tau/x and nu/x must start positive");
  }
  const Series<S> ratio = tau * reciprocal(nu);  // τ/ν
  const Series<S> root = sqrt(ratio);
  return {wa * root, wa * reciprocal(root)};
}

/// Δφ = 2π(ω_A/ω - 1) per period at x = εω, from the closed form.
double phase_error(const Scheme& s, double x);

struct OrderCoefficient {
  int order = 0;          // n
  double value = 0.0;     // c_n from the series
  double numeric = 0.0;   // c_n from Richardson extrapolation
};

/// Leading error coefficient of ω_A/ω - 1 = c_n xⁿ + ...; the series value
/// is cross-checked against a high-precision Richardson extrapolation and
/// a relative disagreement above 1e-6 is an error.
OrderCoefficient order_coefficient(const Scheme& s, std::size_t order = kDefaultOrder);

/// Richardson estimate of c_n from (ω_A/ω - 1)/xⁿ at x = 1e-2, 5e-3, 2.5e-3.
double richardson_coefficient(const Scheme& s, int n);

/// c₄(s)·(force_evals/3)⁴ / |c₄(reference)|. Fourth-order schemes only.
double normalized_coefficient(const Scheme& s, const Scheme& reference);
double normalized_coefficient(const Scheme& s);  // reference FR

struct StabilityLimit {
  double x = 0.0;
  bool bounded = true;  // false: no crossing found in (0, 10]
};

/// Largest x* with |Tr M(x)/2| < 1 on (0, x*).
StabilityLimit stability_limit(const Scheme& s);

struct ConvergenceRow {
  std::size_t k = 0;
  double term = 0.0;                 // a_k x^k
  double partial_sum = 0.0;          // through x^k
  std::optional<double> abs_error;   // vs closed form, elliptic only
};

struct ConvergenceStudy {
  double x = 0.0;
  std::optional<double> closed_form;  // ω_A/ω
  std::vector<ConvergenceRow> rows;
  std::optional<double> radius_estimate;
};

/// Partial sums of the ω_A/ω series at x against the closed form, with a
/// ratio-test estimate of the radius of convergence.
ConvergenceStudy convergence_study(const Scheme& s, double x, std::size_t order);

struct PhaseErrorReport {
  std::string scheme;
  int order = 0;
  double c_n = 0.0;
  std::optional<double> c_star;
  StabilityLimit stability;
  Series<double> omega_a{0};
  Series<double> inv_mass{0};
  Series<double> k_star{0};
};

PhaseErrorReport analyze(const Scheme& s, std::size_t order = kDefaultOrder);

}  // namespace splitmap
