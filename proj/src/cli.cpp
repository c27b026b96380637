#include "splitmap/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "splitmap/analysis.hpp"
#include "splitmap/phasemap.hpp"
#include "splitmap/sim.hpp"

namespace splitmap::cli {

namespace {

using Cell = std::variant<std::monostate, std::string, long long, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
  return {};
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    if (!std::isfinite(v)) return nullptr;
    return std::stod(format_number(v));
  }
  return nullptr;
}

void render(std::ostream& out, const Table& t, Format fmt) {
  if (fmt == Format::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
      arr.push_back(obj);
    }
    out << arr.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

Cell opt(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

void add_series(Table& t, const std::string& name, const Series<double>& s) {
  for (std::size_t k = 0; k <= s.order(); ++k) {
    t.rows.push_back({name, static_cast<long long>(k), s[k]});
  }
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw Error("unknown format '" + s + "' (expected csv or json)");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", v);
  return buf;
}

void cmd_schemes(std::ostream& out, Format fmt, const std::filesystem::path& data_dir) {
  Table t{{"name", "order", "force_evals", "steps", "symmetric", "status"}, {}};
  for (const auto& e : registry(data_dir)) {
    if (e.scheme) {
      t.rows.push_back({e.name, static_cast<long long>(e.scheme->order()),
                        static_cast<long long>(e.scheme->force_evals()),
                        static_cast<long long>(e.scheme->steps().size()),
                        std::string(is_symmetric(*e.scheme) ? "true" : "false"),
                        std::string("ok")});
    } else {
      t.rows.push_back({e.name, std::monostate{}, std::monostate{}, std::monostate{},
                        std::monostate{}, std::string("coefficients unavailable")});
    }
  }
  render(out, t, fmt);
}

void cmd_analyze(std::ostream& out, std::ostream& err, const Scheme& s, std::size_t order,
                 Format fmt) {
  if (!is_symmetric(s)) {
    err << "scheme '" << s.name()
        << "' is not time-reversible: the series extraction of omega_A, 1/m* and k* "
           "needs h = g. Printing closed-form reflection diagnostics instead.\n";
    Table t{{"scheme", "x", "g_minus_h", "xi", "sigma_amplitude", "regime"}, {}};
    for (double x : {0.05, 0.1, 0.2, 0.3, 0.5, 1.0, 1.5}) {
      const auto m = scheme_matrix<double>(s, x, 1.0);
      const SpectralData sd = spectral(m, x);
      Cell amp = std::monostate{};
      if (sd.regime == Regime::Elliptic) amp = (m.g - m.h) / (2.0 * *sd.xi);
      t.rows.push_back({s.name(), x, m.g - m.h, opt(sd.xi), amp, to_string(sd.regime)});
    }
    render(out, t, fmt);
    return;
  }
  const PhaseErrorReport r = analyze(s, order);
  Table t{{"quantity", "k", "value"}, {}};
  t.rows.push_back({std::string("order"), std::monostate{}, static_cast<long long>(r.order)});
  t.rows.push_back({std::string("c_n"), static_cast<long long>(r.order), r.c_n});
  t.rows.push_back({std::string("c_star"), std::monostate{}, opt(r.c_star)});
  t.rows.push_back({std::string("stability_limit"), std::monostate{}, r.stability.x});
  add_series(t, "omega_a", r.omega_a);
  add_series(t, "inv_mass", r.inv_mass);
  add_series(t, "k_star", r.k_star);
  render(out, t, fmt);
}

void cmd_sweep(std::ostream& out, const Scheme& s, double x_min, double x_max,
               std::size_t points, const std::string& quantity, Format fmt) {
  static const std::vector<std::string> known{"omega_a", "det", "trace",
                                              "phase_error", "m_star", "k_star"};
  if (std::find(known.begin(), known.end(), quantity) == known.end()) {
    throw Error("sweep: unknown quantity '" + quantity + "'");
  }
  if (!(x_min > 0.0) || !(x_max > x_min)) throw Error("sweep: need 0 < x_min < x_max");
  if (points < 2) throw Error("sweep: need at least 2 points");

  Table t{{"scheme", "x", quantity, "regime"}, {}};
  for (std::size_t i = 0; i < points; ++i) {
    const double x = x_min + (x_max - x_min) * static_cast<double>(i) /
                                 static_cast<double>(points - 1);
    const auto m = scheme_matrix<double>(s, x, 1.0);
    const SpectralData sd = spectral(m, x);
    Cell v = std::monostate{};
    if (quantity == "det") {
      v = m.det();
    } else if (quantity == "trace") {
      v = m.trace();
    } else if (quantity == "omega_a") {
      v = opt(sd.omega_a);
    } else if (quantity == "phase_error") {
      if (sd.omega_a) v = 2.0 * std::numbers::pi * (*sd.omega_a - 1.0);
    } else if (quantity == "m_star") {
      v = opt(sd.m_star);
    } else {
      v = opt(sd.k_star);
    }
    t.rows.push_back({s.name(), x, v, to_string(sd.regime)});
  }
  render(out, t, fmt);
}

void cmd_simulate(std::ostream& out, const Scheme& s, double q0, double p0, double x,
                  double omega, std::size_t steps, std::size_t stride, Format fmt) {
  const double eps = x / omega;
  const auto m = scheme_matrix<double>(s, eps, omega);
  const SpectralData sd = spectral(m, eps);
  const bool elliptic = sd.regime == Regime::Elliptic;
  const bool reversible = sd.reversible;

  const TrajectoryRecord rec = iterate(s, q0, p0, eps, omega, steps, stride);
  Table t{{"t", "q", "p", "H", reversible ? "H_A" : "sigma", "closed_form_error"}, {}};
  for (const auto& smp : rec.samples) {
    Cell fifth = std::monostate{};
    Cell err = std::monostate{};
    if (reversible) {
      fifth = opt(smp.modified_energy);
    } else if (elliptic) {
      fifth = reflection_amplitude(m, eps, smp.t);
    }
    if (elliptic) {
      const Mat2 cf = propagate_closed_form(m, eps, smp.t);
      const double q = cf[0][0] * q0 + cf[0][1] * p0;
      const double p = cf[1][0] * q0 + cf[1][1] * p0;
      err = std::max(std::abs(q - smp.q), std::abs(p - smp.p));
    }
    t.rows.push_back({smp.t, smp.q, smp.p, smp.energy, fifth, err});
  }
  render(out, t, fmt);
}

void cmd_stability(std::ostream& out, const Scheme& s, Format fmt) {
  const StabilityLimit lim = stability_limit(s);
  Table t{{"scheme", "stability_limit", "bounded"}, {}};
  t.rows.push_back({s.name(), lim.x, std::string(lim.bounded ? "true" : "false")});
  render(out, t, fmt);
}

void cmd_convergence(std::ostream& out, const Scheme& s, double x, std::size_t order,
                     Format fmt) {
  const ConvergenceStudy st = convergence_study(s, x, order);
  Table t{{"k", "term", "partial_sum", "abs_error", "closed_form", "radius_estimate"}, {}};
  for (const auto& row : st.rows) {
    t.rows.push_back({static_cast<long long>(row.k), row.term, row.partial_sum,
                      opt(row.abs_error), opt(st.closed_form), opt(st.radius_estimate)});
  }
  render(out, t, fmt);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact phase-space maps of splitting integrators on the harmonic oscillator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string file;
  std::size_t order = kDefaultOrder;
  std::string output;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--file", file, "Scheme JSON file used instead of a registry name");
  app.add_option("-K", order, "Series truncation order");
  app.add_option("-o", output, "Write output to this path");

  std::string name;
  auto* schemes = app.add_subcommand("schemes", "List the built-in schemes");

  auto* analyze_cmd = app.add_subcommand("analyze", "Order and phase-error coefficients");
  analyze_cmd->add_option("scheme", name, "Registry name");

  double x_min = 0.01, x_max = 2.5;
  std::size_t points = 50;
  std::string quantity = "omega_a";
  auto* sweep = app.add_subcommand("sweep", "Tabulate a quantity over x = eps*omega");
  sweep->add_option("scheme", name, "Registry name");
  sweep->add_option("--x-min", x_min);
  sweep->add_option("--x-max", x_max);
  sweep->add_option("--points", points);
  sweep->add_option("--quantity", quantity)
      ->check(CLI::IsMember({"omega_a", "phase_error", "det", "trace", "m_star", "k_star"}));

  double q0 = 1.0, p0 = 0.0, x = 0.3, omega = 1.0;
  std::size_t steps = 1000, stride = 1;
  auto* simulate = app.add_subcommand("simulate", "Iterate a scheme and compare to closed form");
  simulate->add_option("scheme", name, "Registry name");
  simulate->add_option("--q0", q0);
  simulate->add_option("--p0", p0);
  simulate->add_option("--x", x, "eps*omega");
  simulate->add_option("--omega", omega);
  simulate->add_option("--steps,-N", steps);
  simulate->add_option("--stride", stride);

  auto* stability = app.add_subcommand("stability", "Largest stable eps*omega");
  stability->add_option("scheme", name, "Registry name");

  double conv_x = 1.0;
  auto* convergence = app.add_subcommand("convergence", "Partial sums of the omega_A series");
  convergence->add_option("scheme", name, "Registry name");
  convergence->add_option("--x", conv_x, "eps*omega");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const Format fmt = parse_format(format);
    std::ofstream file_out;
    std::ostream* sink = &out;
    if (!output.empty()) {
      file_out.open(output);
      if (!file_out) throw Error("cannot open output file " + output);
      sink = &file_out;
    }

    if (schemes->parsed()) {
      cmd_schemes(*sink, fmt, default_data_dir());
    } else {
      if (file.empty() && name.empty()) throw Error("a scheme name or --file is required");
      const Scheme s = file.empty() ? find_scheme(name) : load_scheme(file);
      if (analyze_cmd->parsed()) {
        cmd_analyze(*sink, err, s, order, fmt);
      } else if (sweep->parsed()) {
        cmd_sweep(*sink, s, x_min, x_max, points, quantity, fmt);
      } else if (simulate->parsed()) {
        cmd_simulate(*sink, s, q0, p0, x, omega, steps, stride, fmt);
      } else if (stability->parsed()) {
        cmd_stability(*sink, s, fmt);
      } else if (convergence->parsed()) {
        cmd_convergence(*sink, s, conv_x, order, fmt);
      }
    }
    if (file_out.is_open()) {
      file_out.flush();
      if (!file_out) throw Error("error writing output file " + output);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace splitmap::cli
