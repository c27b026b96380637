#include "splitmap/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#ifndef SPLITMAP_SOURCE_DATA_DIR
#define SPLITMAP_SOURCE_DATA_DIR "data/schemes"
#endif

namespace splitmap {

namespace {

constexpr double kConsistencyTol = 1e-12;
constexpr double kPalindromeTol = 1e-14;

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool same_step(const Step& a, const Step& b) {
  return a.kind == b.kind && std::abs(a.c.value() - b.c.value()) <= kPalindromeTol &&
         std::abs(a.u.value() - b.u.value()) <= kPalindromeTol;
}

bool is_zero_step(const Step& s) { return s.c.value() == 0.0 && s.u.value() == 0.0; }

}  // namespace

Coefficient::Coefficient(double value) : value_(value), exact_(0) {
  if (std::isfinite(value)) exact_ = Rational(value);
}

Coefficient::Coefficient(const Rational& exact)
    : value_(exact.convert_to<double>()), exact_(exact) {}

Coefficient::Coefficient(long long num, long long den)
    : Coefficient(Rational(num, den)) {}

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Drift:
      return "drift";
    case StepKind::Kick:
      return "kick";
    case StepKind::GradientKick:
      return "gkick";
  }
  return "?";
}

Scheme::Scheme(std::string name, std::vector<Step> steps, int order, int force_evals,
               std::string citation)
    : name_(std::move(name)),
      steps_(std::move(steps)),
      order_(order),
      force_evals_(force_evals),
      citation_(std::move(citation)) {
  if (steps_.empty()) throw SchemeError("scheme '" + name_ + "': no steps");
  if (order_ < 1) throw SchemeError("scheme '" + name_ + "': order must be positive");
  if (force_evals_ < 1) {
    throw SchemeError("scheme '" + name_ + "': force_evals must be positive");
  }
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& st = steps_[i];
    if (!std::isfinite(st.c.value()) || !std::isfinite(st.u.value())) {
      throw SchemeError("scheme '" + name_ + "': step " + std::to_string(i) +
                        " has a non-finite coefficient");
    }
    if (st.kind != StepKind::GradientKick && st.u.value() != 0.0) {
      throw SchemeError("scheme '" + name_ + "': step " + std::to_string(i) +
                        " carries a gradient coefficient but is not a gkick");
    }
  }
  if (std::abs(drift_sum() - 1.0) > kConsistencyTol) {
    throw SchemeError("scheme '" + name_ + "': drift coefficients sum to " +
                      format_double(drift_sum()) + ", expected 1");
  }
  if (std::abs(kick_sum() - 1.0) > kConsistencyTol) {
    throw SchemeError("scheme '" + name_ + "': kick coefficients sum to " +
                      format_double(kick_sum()) + ", expected 1");
  }
}

double Scheme::drift_sum() const {
  double s = 0.0;
  for (const auto& st : steps_)
    if (!st.is_kick()) s += st.c.value();
  return s;
}

double Scheme::kick_sum() const {
  double s = 0.0;
  for (const auto& st : steps_)
    if (st.is_kick()) s += st.c.value();
  return s;
}

Rational Scheme::exact_drift_sum() const {
  Rational s = 0;
  for (const auto& st : steps_)
    if (!st.is_kick()) s += st.c.exact();
  return s;
}

Rational Scheme::exact_kick_sum() const {
  Rational s = 0;
  for (const auto& st : steps_)
    if (st.is_kick()) s += st.c.exact();
  return s;
}

bool is_symmetric(const Scheme& s) {
  std::vector<Step> kept;
  std::copy_if(s.steps().begin(), s.steps().end(), std::back_inserter(kept),
               [](const Step& st) { return !is_zero_step(st); });
  for (std::size_t i = 0, j = kept.size(); i < j--; ++i) {
    if (!same_step(kept[i], kept[j])) return false;
  }
  return true;
}

Scheme adjoint(const Scheme& s) {
  std::vector<Step> steps(s.steps().rbegin(), s.steps().rend());
  return Scheme(s.name() + "*", std::move(steps), s.order(), s.force_evals(),
                s.citation());
}

Scheme stormer_verlet() {
  return Scheme("SV",
                {Step::kick({1, 2}), Step::drift({1, 1}), Step::kick({1, 2})}, 2, 1,
                "Stormer/Verlet, kick-drift-kick");
}

Scheme first_order() {
  return Scheme("LF1", {Step::drift({1, 1}), Step::kick({1, 1})}, 1, 1,
                "first-order drift-kick splitting");
}

Scheme first_order_transpose() {
  return Scheme("LF1T", {Step::kick({1, 1}), Step::drift({1, 1})}, 1, 1,
                "first-order kick-drift splitting");
}

Scheme forest_ruth() {
  const double theta = 1.0 / (2.0 - std::cbrt(2.0));
  const double outer = theta / 2;
  const double inner = (1 - theta) / 2;
  return Scheme("FR",
                {Step::drift(outer), Step::kick(theta), Step::drift(inner),
                 Step::kick(1 - 2 * theta), Step::drift(inner), Step::kick(theta),
                 Step::drift(outer)},
                4, 3, "Forest-Ruth, theta = 1/(2 - 2^(1/3))");
}

Scheme forward_c() {
  return Scheme("C",
                {Step::drift({1, 6}), Step::kick({3, 8}), Step::drift({1, 3}),
                 Step::gradient_kick({1, 4}, {-1, 96}), Step::drift({1, 3}),
                 Step::kick({3, 8}), Step::drift({1, 6})},
                4, 4,
                "Chin forward algorithm C: middle kick uses V + (eps^2/48)[V,[T,V]]");
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("SPLITMAP_DATA_DIR"); env && *env) return env;
  return SPLITMAP_SOURCE_DATA_DIR;
}

std::vector<RegistryEntry> registry(const std::filesystem::path& data_dir) {
  std::vector<RegistryEntry> out;
  for (auto&& s : {stormer_verlet(), first_order(), first_order_transpose(), forest_ruth(),
                   forward_c()}) {
    out.push_back({s.name(), s, {}});
  }
  for (const char* name : {"M", "BM"}) {
    RegistryEntry e{name, std::nullopt, {}};
    try {
      e.scheme = load_scheme(data_dir / (std::string(name) + ".json"));
    } catch (const Error& ex) {
      e.error = ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

Scheme find_scheme(const std::string& name, const std::filesystem::path& data_dir) {
  for (auto& e : registry(data_dir)) {
    if (e.name != name) continue;
    if (!e.scheme) throw SchemeError("scheme '" + name + "' unavailable: " + e.error);
    return *e.scheme;
  }
  throw SchemeError("unknown scheme '" + name + "'");
}

Scheme parse_scheme(const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw SchemeError(std::string("scheme file: parse error: ") + ex.what());
  }
  try {
    std::vector<Step> steps;
    const auto& arr = doc.at("steps");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& js = arr[i];
      const std::string kind = js.at("kind").get<std::string>();
      const double c = js.at("c").get<double>();
      if (kind == "drift") {
        steps.push_back(Step::drift(c));
      } else if (kind == "kick") {
        steps.push_back(Step::kick(c));
      } else if (kind == "gkick") {
        steps.push_back(Step::gradient_kick(c, js.at("u").get<double>()));
      } else {
        throw SchemeError("scheme file: step " + std::to_string(i) +
                          ": unknown step kind '" + kind + "'");
      }
      if (kind != "gkick" && js.contains("u")) {
        throw SchemeError("scheme file: step " + std::to_string(i) +
                          ": 'u' is only allowed on gkick steps");
      }
    }
    return Scheme(doc.at("name").get<std::string>(), std::move(steps),
                  doc.at("order").get<int>(), doc.at("force_evals").get<int>(),
                  doc.value("citation", std::string{}));
  } catch (const json::exception& ex) {
    throw SchemeError(std::string("scheme file: ") + ex.what());
  }
}

Scheme load_scheme(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemeError("cannot open scheme file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scheme(buf.str());
  } catch (const SchemeError& ex) {
    throw SchemeError(path.string() + ": " + ex.what());
  }
}

std::string to_json(const Scheme& s) {
  nlohmann::json doc;
  doc["name"] = s.name();
  doc["order"] = s.order();
  doc["force_evals"] = s.force_evals();
  doc["citation"] = s.citation();
  doc["steps"] = nlohmann::json::array();
  for (const auto& st : s.steps()) {
    nlohmann::json js{{"kind", to_string(st.kind)}, {"c", st.c.value()}};
    if (st.kind == StepKind::GradientKick) js["u"] = st.u.value();
    doc["steps"].push_back(js);
  }
  return doc.dump(2);
}

}  // namespace splitmap
