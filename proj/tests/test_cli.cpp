#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "splitmap/cli.hpp"

using namespace splitmap;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "splitmap");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

using Rows = std::vector<std::vector<std::string>>;

Rows parse_csv(const std::string& text) {
  Rows rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string lookup(const Rows& rows, const std::string& quantity, const std::string& k = "") {
  for (const auto& r : rows) {
    if (r.size() >= 3 && r[0] == quantity && r[1] == k) return r[2];
  }
  return "<missing>";
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(cli::format_number(1.0) == "1.00000000000");
  CHECK(cli::format_number(1.0 / 24) == "0.0416666666667");
  CHECK(cli::format_number(-9.02971072682e-05) == "-9.02971072682e-05");
  CHECK(cli::parse_format("json") == cli::Format::Json);
  CHECK_THROWS(cli::parse_format("xml"));
}

TEST_CASE("schemes listing") {
  const auto r = run_cli({"schemes"});
  CHECK(r.code == 0);
  const Rows rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"name", "order", "force_evals", "steps",
                                            "symmetric", "status"});
  std::vector<std::string> names;
  for (std::size_t i = 1; i < rows.size(); ++i) names.push_back(rows[i][0]);
  for (const char* n : {"SV", "FR", "M", "BM", "C", "LF1"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  CHECK(rows[1] == std::vector<std::string>{"SV", "2", "1", "3", "true", "ok"});

  const auto js = run_cli({"--format", "json", "schemes"});
  CHECK(js.code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 7);
  CHECK(doc[0]["name"] == "SV");
  CHECK(doc[0]["force_evals"] == 1);
}

TEST_CASE("schemes listing without data files") {
  const auto empty = std::filesystem::temp_directory_path() / "splitmap_cli_no_data";
  std::filesystem::create_directories(empty);
  std::ostringstream out;
  cli::cmd_schemes(out, cli::Format::Csv, empty);
  const Rows rows = parse_csv(out.str());
  int unavailable = 0;
  for (const auto& r : rows) {
    if (r.back() == "coefficients unavailable") ++unavailable;
  }
  CHECK(unavailable == 2);
  CHECK(rows.size() == 8);
}

TEST_CASE("analyze") {
  SUBCASE("SV") {
    const auto r = run_cli({"analyze", "SV", "-K", "6"});
    CHECK(r.code == 0);
    const Rows rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"quantity", "k", "value"});
    CHECK(lookup(rows, "order") == "2");
    CHECK(std::stod(lookup(rows, "c_n", "2")) == doctest::Approx(1.0 / 24).epsilon(1e-11));
    CHECK(lookup(rows, "c_n", "2").substr(0, 12) == "0.0416666666");
    CHECK(lookup(rows, "c_star") == "");
    CHECK(std::stod(lookup(rows, "stability_limit")) == doctest::Approx(2.0));
    CHECK(std::stod(lookup(rows, "omega_a", "6")) == doctest::Approx(5.0 / 7168));
    CHECK(std::stod(lookup(rows, "inv_mass", "4")) == doctest::Approx(1.0 / 30));
    CHECK(std::stod(lookup(rows, "k_star", "2")) == doctest::Approx(-1.0 / 12));
  }
  SUBCASE("FR") {
    const auto r = run_cli({"analyze", "FR"});
    const Rows rows = parse_csv(r.out);
    CHECK(std::abs(std::stod(lookup(rows, "c_n", "4")) - -0.0661431) < 1e-6);
    CHECK(std::stod(lookup(rows, "c_star")) == doctest::Approx(-1.0));
  }
  SUBCASE("C") {
    const auto r = run_cli({"analyze", "C"});
    const Rows rows = parse_csv(r.out);
    CHECK(std::stod(lookup(rows, "c_n", "4")) == doctest::Approx(1.30208e-4).epsilon(1e-5));
    CHECK(std::abs(std::stod(lookup(rows, "c_star")) - 0.0062) < 1e-4);
  }
  SUBCASE("non-symmetric scheme") {
    const auto r = run_cli({"analyze", "LF1"});
    CHECK(r.code == 0);
    CHECK(r.err.find("not time-reversible") != std::string::npos);
    const Rows rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"scheme", "x", "g_minus_h", "xi",
                                              "sigma_amplitude", "regime"});
    // |g - h| = x²
    CHECK(std::abs(std::stod(rows[1][2])) == doctest::Approx(0.0025).epsilon(1e-10));
    CHECK(std::stod(rows[1][4]) != 0.0);
  }
  SUBCASE("scheme from a file") {
    const auto path = std::filesystem::temp_directory_path() / "splitmap_cli_sv.json";
    std::ofstream(path) << to_json(stormer_verlet());
    const auto r = run_cli({"--file", path.string(), "analyze"});
    CHECK(r.code == 0);
    CHECK(lookup(parse_csv(r.out), "order") == "2");
  }
}

TEST_CASE("sweep") {
  SUBCASE("determinant is one everywhere") {
    const auto r = run_cli({"sweep", "FR", "--quantity", "det", "--points", "40"});
    CHECK(r.code == 0);
    const Rows rows = parse_csv(r.out);
    CHECK(rows.size() == 41);
    CHECK(rows[0] == std::vector<std::string>{"scheme", "x", "det", "regime"});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] == "1.00000000000");
  }
  SUBCASE("SV turns hyperbolic above 2") {
    const auto r = run_cli({"sweep", "SV", "--x-min", "1.9", "--x-max", "2.1", "--points", "21"});
    const Rows rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double x = std::stod(rows[i][1]);
      if (x < 2.0 - 1e-9) {
        CHECK(rows[i][3] == "elliptic");
        CHECK(std::stod(rows[i][2]) == doctest::Approx(oracle::sv_omega_ratio(x)));
      } else if (x > 2.0 + 1e-9) {
        CHECK(rows[i][3] == "hyperbolic");
        CHECK(rows[i][2] == "");
      }
    }
  }
  SUBCASE("phase error row at 0.1") {
    const auto r = run_cli({"sweep", "SV", "--quantity", "phase_error", "--x-min", "0.1",
                            "--x-max", "0.2", "--points", "2"});
    const Rows rows = parse_csv(r.out);
    CHECK(std::stod(rows[1][2]) == doctest::Approx(2.621e-3).epsilon(1e-3));
  }
  SUBCASE("bad range") {
    const auto r = run_cli({"sweep", "SV", "--x-min", "0"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") == 0);
    CHECK(r.out.empty());
  }
  SUBCASE("bad quantity") { CHECK(run_cli({"sweep", "SV", "--quantity", "energy"}).code != 0); }
}

TEST_CASE("simulate") {
  SUBCASE("SV") {
    const auto r = run_cli({"simulate", "SV", "--x", "0.3", "-N", "10000", "--stride", "1000"});
    CHECK(r.code == 0);
    const Rows rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"t", "q", "p", "H", "H_A", "closed_form_error"});
    CHECK(rows.size() == 12);
    CHECK(std::stod(rows.back()[5]) <= 1e-9);
    const double h0 = std::stod(rows[1][4]);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(std::abs(std::stod(rows[i][4]) - h0) <= 1e-10 * h0);
    }
  }
  SUBCASE("first-order scheme shows the reflection amplitude") {
    const auto r = run_cli({"simulate", "LF1", "-N", "10"});
    const Rows rows = parse_csv(r.out);
    CHECK(rows[0][4] == "sigma");
    CHECK(std::stod(rows[5][4]) != 0.0);
  }
  SUBCASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "splitmap_cli_sim.csv";
    const auto r = run_cli({"-o", path.string(), "simulate", "C", "-N", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(parse_csv(buf.str()).size() == 7);
  }
  SUBCASE("unwritable output") {
    const auto r = run_cli({"-o", "/nonexistent/dir/out.csv", "simulate", "SV"});
    CHECK(r.code == 1);
    CHECK(r.err.find("/nonexistent/dir/out.csv") != std::string::npos);
  }
}

TEST_CASE("stability and convergence") {
  const auto st = run_cli({"stability", "SV"});
  CHECK(st.code == 0);
  const Rows rows = parse_csv(st.out);
  CHECK(rows[1][0] == "SV");
  CHECK(std::stod(rows[1][1]) == doctest::Approx(2.0).epsilon(1e-11));

  const auto cv = run_cli({"convergence", "SV", "--x", "1.0", "-K", "20"});
  CHECK(cv.code == 0);
  const Rows cr = parse_csv(cv.out);
  CHECK(cr.size() == 22);
  CHECK(std::stod(cr.back()[3]) < 1e-6);
  CHECK(std::abs(std::stod(cr.back()[5]) - 2.0) < 0.2);
}

TEST_CASE("outputs are deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"analyze", "BM"}, {"sweep", "M"}, {"simulate", "FR"},
        {"--format", "json", "convergence", "C"}}) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("errors") {
  const auto unknown = run_cli({"analyze", "XYZ"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("unknown scheme 'XYZ'") != std::string::npos);
  CHECK(run_cli({"analyze"}).code == 1);
  CHECK(run_cli({}).code != 0);
  CHECK(run_cli({"--format", "xml", "schemes"}).code != 0);
  const auto missing = run_cli({"--file", "/nonexistent/s.json", "analyze"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("/nonexistent/s.json") != std::string::npos);
}
