#pragma once

// Factorization schemes: ordered products of drift, kick and
// gradient-kick factors approximating exp(ε(T + V)).

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "splitmap/scalar.hpp"

namespace splitmap {

class SchemeError : public Error {
 public:
  using Error::Error;
};

/// A real step coefficient kept both as a double and as an exact rational.
/// Built-in schemes with rational coefficients carry the true fraction;
/// everything else carries the exact binary value of the double.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(double value);  // NOLINT(google-explicit-constructor)
  explicit Coefficient(const Rational& exact);
  Coefficient(long long num, long long den);

  double value() const { return value_; }
  const Rational& exact() const { return exact_; }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.exact_ == b.exact_;
  }

 private:
  double value_ = 0.0;
  Rational exact_ = 0;
};

enum class StepKind { Drift, Kick, GradientKick };

std::string to_string(StepKind kind);

/// One factor of the product. A GradientKick with coefficients (c, u)
/// shears p by -(c ε ω² + u ε³ ω⁴) q.
struct Step {
  StepKind kind = StepKind::Drift;
  Coefficient c;
  Coefficient u;  // zero unless kind == GradientKick

  static Step drift(Coefficient c) { return {StepKind::Drift, c, {}}; }
  static Step kick(Coefficient c) { return {StepKind::Kick, c, {}}; }
  static Step gradient_kick(Coefficient c, Coefficient u) {
    return {StepKind::GradientKick, c, u};
  }

  bool is_kick() const { return kind != StepKind::Drift; }

  friend bool operator==(const Step&, const Step&) = default;
};

class Scheme {
 public:
  /// Validates finiteness and the first-order consistency sums
  /// (drifts and kicks each sum to 1 within 1e-12).
  Scheme(std::string name, std::vector<Step> steps, int order, int force_evals,
         std::string citation = {});

  const std::string& name() const { return name_; }
  const std::vector<Step>& steps() const { return steps_; }
  int order() const { return order_; }
  int force_evals() const { return force_evals_; }
  const std::string& citation() const { return citation_; }

  double drift_sum() const;
  double kick_sum() const;
  Rational exact_drift_sum() const;
  Rational exact_kick_sum() const;

  friend bool operator==(const Scheme&, const Scheme&) = default;

 private:
  std::string name_;
  std::vector<Step> steps_;
  int order_;
  int force_evals_;
  std::string citation_;
};

/// True iff the step list reads the same forwards and backwards once
/// zero-coefficient steps are dropped.
bool is_symmetric(const Scheme& s);

/// The scheme with its step list reversed.
Scheme adjoint(const Scheme& s);

// Built-in schemes.
Scheme stormer_verlet();
Scheme first_order();            // Drift 1, Kick 1
Scheme first_order_transpose();  // Kick 1, Drift 1
Scheme forest_ruth();
Scheme forward_c();

/// Directory holding the M and BM coefficient files: $SPLITMAP_DATA_DIR
/// when set, otherwise the data directory of the source tree.
std::filesystem::path default_data_dir();

struct RegistryEntry {
  std::string name;
  std::optional<Scheme> scheme;  // empty when the data file failed to load
  std::string error;
};

/// SV, LF1, LF1T, FR, C built in; M and BM loaded from `data_dir`.
std::vector<RegistryEntry> registry(const std::filesystem::path& data_dir = default_data_dir());

/// Registry lookup by name; throws SchemeError for unknown names and for
/// data files that failed to load.
Scheme find_scheme(const std::string& name,
                   const std::filesystem::path& data_dir = default_data_dir());

Scheme parse_scheme(const std::string& json_text);
Scheme load_scheme(const std::filesystem::path& path);
std::string to_json(const Scheme& s);

}  // namespace splitmap
