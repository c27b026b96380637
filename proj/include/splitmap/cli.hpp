#pragma once

// Report renderers behind the splitmap command-line tool. Each command
// writes a complete CSV (header first) or JSON document to `out`; notes
// meant for a human go to `err`.

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>

#include "splitmap/scheme.hpp"

namespace splitmap::cli {

enum class Format { Csv, Json };

Format parse_format(const std::string& s);

/// 12 significant digits, trailing zeros kept ("%#.12g").
std::string format_number(double v);

void cmd_schemes(std::ostream& out, Format fmt, const std::filesystem::path& data_dir);

void cmd_analyze(std::ostream& out, std::ostream& err, const Scheme& s, std::size_t order,
                 Format fmt);

/// quantity: omega_a, phase_error, det, trace, m_star or k_star.
void cmd_sweep(std::ostream& out, const Scheme& s, double x_min, double x_max,
               std::size_t points, const std::string& quantity, Format fmt);

void cmd_simulate(std::ostream& out, const Scheme& s, double q0, double p0, double x,
                  double omega, std::size_t steps, std::size_t stride, Format fmt);

void cmd_stability(std::ostream& out, const Scheme& s, Format fmt);

void cmd_convergence(std::ostream& out, const Scheme& s, double x, std::size_t order,
                     Format fmt);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace splitmap::cli
