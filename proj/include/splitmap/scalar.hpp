#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace splitmap {

/// Exact rational scalar used by the rational series mode.
using Rational = boost::multiprecision::cpp_rational;

/// 50-digit binary float, for numeric checks that need more than double.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-scalar operations that differ between floating and exact modes.
template <class T>
struct ScalarTraits {
  static constexpr bool exact = false;

  static bool is_zero(const T& v, double tol = 1e-14) {
    using std::abs;
    return abs(v) <= T(tol);
  }

  static T sqrt(const T& v) {
    using std::sqrt;
    return sqrt(v);
  }

  static double to_double(const T& v) { return static_cast<double>(v); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;

  static bool is_zero(const Rational& v, double = 0.0) { return v == 0; }

  // Exact square root; fails unless numerator and denominator are both
  // perfect squares.
  static Rational sqrt(const Rational& v) {
    using boost::multiprecision::cpp_int;
    if (v < 0) throw Error("rational sqrt of a negative value");
    const cpp_int num = boost::multiprecision::numerator(v);
    const cpp_int den = boost::multiprecision::denominator(v);
    const cpp_int rn = boost::multiprecision::sqrt(num);
    const cpp_int rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) {
      throw Error("rational sqrt: " + v.str() + " is not a perfect square");
    }
    return Rational(rn, rd);
  }

  static double to_double(const Rational& v) { return v.convert_to<double>(); }
};

}  // namespace splitmap
