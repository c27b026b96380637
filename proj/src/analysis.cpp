#include "splitmap/analysis.hpp"

#include <cmath>
#include <numbers>

namespace splitmap {

namespace {

constexpr double kOrderThreshold = 1e-14;
constexpr double kCrossCheckTol = 1e-6;
constexpr double kBracketMax = 10.0;
constexpr double kScanStep = 1e-3;

double half_trace(const Scheme& s, double x) {
  const auto m = scheme_matrix<double>(s, x, 1.0);
  return 0.5 * (m.g + m.h);
}

// Coefficients read from decimal files sum to 1 only up to rounding, which
// leaves a constant offset in ω_A/ω of order 1e-16. Divided by x⁴ at small
// x that swamps c₄, so the extrapolation runs on the scheme rescaled to
// exact unit sums.
Scheme exactly_consistent(const Scheme& s) {
  const Rational drift = s.exact_drift_sum();
  const Rational kick = s.exact_kick_sum();
  std::vector<Step> steps;
  for (const Step& st : s.steps()) {
    Step r = st;
    r.c = Coefficient(st.c.exact() / (st.is_kick() ? kick : drift));
    steps.push_back(r);
  }
  return Scheme(s.name(), std::move(steps), s.order(), s.force_evals(), s.citation());
}

}  // namespace

double phase_error(const Scheme& s, double x) {
  const SpectralData sd = spectral(scheme_matrix<double>(s, x, 1.0), x);
  sd.require_elliptic();
  return 2.0 * std::numbers::pi * (*sd.omega_a - 1.0);
}

double richardson_coefficient(const Scheme& s, int n) {
  using HP = HighPrecision;
  const Scheme consistent = exactly_consistent(s);
  auto reduced = [&](const HP& x) {
    const auto m = scheme_matrix<HP>(consistent, x, HP(1));
    const HP skew = (m.g - m.h) / 2;
    const HP xi = boost::multiprecision::sqrt(m.nu * m.tau - skew * skew);
    const HP theta = boost::multiprecision::atan2(xi, (m.g + m.h) / 2);
    return (theta / x - 1) / boost::multiprecision::pow(x, n);
  };
  const HP x0("1e-2");
  const HP f0 = reduced(x0);
  const HP f1 = reduced(x0 / 2);
  const HP f2 = reduced(x0 / 4);
  // f(x) = c_n + a x² + b x⁴ + ...: eliminate x², then x⁴.
  const HP r0 = (4 * f1 - f0) / 3;
  const HP r1 = (4 * f2 - f1) / 3;
  return static_cast<double>((16 * r1 - r0) / 15);
}

OrderCoefficient order_coefficient(const Scheme& s, std::size_t order) {
  const Series<double> wa = omega_a_series<double>(s, order);
  for (std::size_t k = 1; k <= wa.order(); ++k) {
    if (std::abs(wa[k]) <= kOrderThreshold) continue;
    OrderCoefficient oc;
    oc.order = static_cast<int>(k);
    oc.value = wa[k];
    oc.numeric = richardson_coefficient(s, oc.order);
    if (std::abs(oc.numeric - oc.value) > kCrossCheckTol * std::abs(oc.value)) {
      throw AnalysisError("order_coefficient: series c_" + std::to_string(k) + " = " +
                          std::to_string(oc.value) + " disagrees with Richardson value " +
                          std::to_string(oc.numeric) + " for scheme '" + s.name() + "'");
    }
    return oc;
  }
  throw AnalysisError("order_coefficient: order exceeds truncation " +
                      std::to_string(order) + " for scheme '" + s.name() + "'");
}

double normalized_coefficient(const Scheme& s, const Scheme& reference) {
  const OrderCoefficient cs = order_coefficient(s);
  const OrderCoefficient cr = order_coefficient(reference);
  if (cs.order != 4 || cr.order != 4) {
    throw AnalysisError("normalized_coefficient: defined for fourth-order schemes only ('" +
                        s.name() + "' has order " + std::to_string(cs.order) + ", '" +
                        reference.name() + "' has order " + std::to_string(cr.order) + ")");
  }
  const double cost = s.force_evals() / 3.0;
  return cs.value * std::pow(cost, 4) / std::abs(cr.value);
}

double normalized_coefficient(const Scheme& s) {
  return normalized_coefficient(s, forest_ruth());
}

StabilityLimit stability_limit(const Scheme& s) {
  auto outside = [&](double x) { return std::abs(half_trace(s, x)) >= 1.0; };
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  const int steps = static_cast<int>(std::round(kBracketMax / kScanStep));
  for (int i = 1; i <= steps; ++i) {
    const double x = i * kScanStep;
    if (outside(x)) {
      hi = x;
      lo = (i - 1) * kScanStep;
      found = true;
      break;
    }
  }
  if (!found) return {kBracketMax, false};
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (outside(mid) ? hi : lo) = mid;
  }
  return {0.5 * (lo + hi), true};
}

ConvergenceStudy convergence_study(const Scheme& s, double x, std::size_t order) {
  // High precision: the series coefficients come out of large cancellations
  // at high order.
  const Series<HighPrecision> wa = omega_a_series<HighPrecision>(s, order);

  ConvergenceStudy study;
  study.x = x;
  const SpectralData sd = spectral(scheme_matrix<double>(s, x, 1.0), x);
  if (sd.regime == Regime::Elliptic) study.closed_form = *sd.omega_a;

  HighPrecision partial = 0;
  const HighPrecision hx = x;
  HighPrecision power = 1;
  for (std::size_t k = 0; k <= order; ++k) {
    const HighPrecision term = wa[k] * power;
    partial += term;
    power *= hx;
    ConvergenceRow row;
    row.k = k;
    row.term = static_cast<double>(term);
    row.partial_sum = static_cast<double>(partial);
    if (study.closed_form) {
      row.abs_error = static_cast<double>(abs(partial - HighPrecision(*study.closed_form)));
    }
    study.rows.push_back(row);
  }

  // Ratio test over the last four nonzero even coefficients.
  std::vector<std::size_t> idx;
  for (std::size_t k = order - order % 2; k >= 2 && idx.size() < 4; k -= 2) {
    if (wa[k] != 0) idx.insert(idx.begin(), k);
  }
  if (idx.size() == 4) {
    double log_sum = 0.0;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
      const double ratio = static_cast<double>(abs(wa[idx[i]] / wa[idx[i + 1]]));
      log_sum += std::log(ratio) / static_cast<double>(idx[i + 1] - idx[i]);
    }
    study.radius_estimate = std::exp(log_sum / 3.0);
  }
  return study;
}

PhaseErrorReport analyze(const Scheme& s, std::size_t order) {
  PhaseErrorReport r;
  r.scheme = s.name();
  const OrderCoefficient oc = order_coefficient(s, order);
  r.order = oc.order;
  r.c_n = oc.value;
  if (oc.order == 4) r.c_star = normalized_coefficient(s);
  r.stability = stability_limit(s);
  r.omega_a = omega_a_series<double>(s, order);
  const auto ep = effective_param_series<double>(s, order);
  r.inv_mass = ep.inv_mass;
  r.k_star = ep.k_star;
  return r;
}

}  // namespace splitmap
