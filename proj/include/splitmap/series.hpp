#pragma once

// Truncated power series in the dimensionless step x = εω.
//
// A Series<T> of truncation order K stores a_0..a_K and behaves as an
// element of the ring T[x]/(x^{K+1}): no operation reads or produces a
// coefficient above index K. Operands of binary operations must share K.

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "splitmap/scalar.hpp"

namespace splitmap {

class SeriesError : public Error {
 public:
  using Error::Error;
};

template <class T>
class Series {
 public:
  using scalar_type = T;

  explicit Series(std::size_t order) : coeffs_(order + 1, T(0)) {}

  // Missing trailing coefficients are zero; surplus ones are an error.
  Series(std::size_t order, std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() > order + 1) {
      throw SeriesError("series: " + std::to_string(coeffs_.size()) +
                        " coefficients exceed truncation order " +
                        std::to_string(order));
    }
    coeffs_.resize(order + 1, T(0));
  }

  Series(std::size_t order, std::initializer_list<T> coeffs)
      : Series(order, std::vector<T>(coeffs)) {}

  static Series constant(std::size_t order, const T& value) {
    Series s(order);
    s.coeffs_[0] = value;
    return s;
  }

  /// The series "x" itself (zero at order 0).
  static Series variable(std::size_t order) {
    Series s(order);
    if (order >= 1) s.coeffs_[1] = T(1);
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](std::size_t i) const { return coeffs_.at(i); }
  T& operator[](std::size_t i) { return coeffs_.at(i); }

  bool is_even(double tol = 1e-14) const { return parity_zero(1, tol); }
  bool is_odd(double tol = 1e-14) const { return parity_zero(0, tol); }

  Series& operator+=(const Series& o) {
    require_same_order(o, "add");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }

  Series& operator-=(const Series& o) {
    require_same_order(o, "subtract");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }

  Series& operator*=(const T& k) {
    for (auto& c : coeffs_) c *= k;
    return *this;
  }

  Series& operator*=(const Series& o) { return *this = *this * o; }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const T& k) { return a *= k; }
  friend Series operator*(const T& k, Series a) { return a *= k; }

  friend Series operator-(Series a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  // Cauchy product, truncated at K.
  friend Series operator*(const Series& a, const Series& b) {
    a.require_same_order(b, "multiply");
    const std::size_t n = a.coeffs_.size();
    Series r(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (ScalarTraits<T>::exact && a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Drop coefficients above `order` (order must not exceed the current K).
  Series truncated(std::size_t order) const {
    if (order > this->order()) {
      throw SeriesError("series: cannot raise truncation order from " +
                        std::to_string(this->order()) + " to " +
                        std::to_string(order));
    }
    return Series(order, std::vector<T>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  /// a(x)/x for a series with zero constant term; the result has order K-1.
  Series divided_by_x() const {
    if (!ScalarTraits<T>::is_zero(coeffs_[0], 0.0)) {
      throw SeriesError("series: division by x needs a zero constant term");
    }
    if (order() == 0) throw SeriesError("series: division by x at order 0");
    return Series(order() - 1, std::vector<T>(coeffs_.begin() + 1, coeffs_.end()));
  }

  /// x·a(x) at the same truncation order (the top coefficient falls off).
  Series times_x() const {
    Series r(order());
    for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) r.coeffs_[i + 1] = coeffs_[i];
    return r;
  }

  /// Horner evaluation of the truncated polynomial.
  T evaluate(const T& x) const {
    T acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

 private:
  void require_same_order(const Series& o, const char* what) const {
    if (o.order() != order()) {
      throw SeriesError(std::string("series: cannot ") + what +
                        " series of truncation orders " + std::to_string(order()) +
                        " and " + std::to_string(o.order()));
    }
  }

  bool parity_zero(std::size_t first, double tol) const {
    for (std::size_t i = first; i < coeffs_.size(); i += 2) {
      if (!ScalarTraits<T>::is_zero(coeffs_[i], tol)) return false;
    }
    return true;
  }

  std::vector<T> coeffs_;
};

/// b with a·b = 1 to truncation order; needs a_0 != 0.
template <class T>
Series<T> reciprocal(const Series<T>& a) {
  if (ScalarTraits<T>::is_zero(a[0], 0.0)) {
    throw SeriesError("series reciprocal: constant term is zero");
  }
  const std::size_t n = a.order() + 1;
  Series<T> b(a.order());
  const T inv0 = T(1) / a[0];
  b[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    T acc(0);
    for (std::size_t i = 1; i <= k; ++i) acc += a[i] * b[k - i];
    b[k] = -acc * inv0;
  }
  return b;
}

/// Principal square root; needs a_0 > 0 (and, in rational mode, a_0 a
/// perfect square).
template <class T>
Series<T> sqrt(const Series<T>& a) {
  if (!(a[0] > T(0))) {
    throw SeriesError("series sqrt: constant term must be positive");
  }
  const std::size_t n = a.order() + 1;
  Series<T> b(a.order());
  b[0] = ScalarTraits<T>::sqrt(a[0]);
  const T two_b0 = T(2) * b[0];
  for (std::size_t k = 1; k < n; ++k) {
    T acc = a[k];
    for (std::size_t i = 1; i < k; ++i) acc -= b[i] * b[k - i];
    b[k] = acc / two_b0;
  }
  return b;
}

/// arcsin(u) by substituting u into the Maclaurin series
/// u + u³/6 + 3u⁵/40 + ...; needs u_0 = 0.
template <class T>
Series<T> compose_asin(const Series<T>& u) {
  if (!ScalarTraits<T>::is_zero(u[0], 0.0)) {
    throw SeriesError("series asin: argument must have a zero constant term");
  }
  const std::size_t order = u.order();
  const Series<T> u2 = u * u;
  Series<T> power = u;  // u^{2j+1}
  Series<T> result(order);
  T coeff(1);  // (2j)! / (4^j (j!)^2 (2j+1))
  for (std::size_t j = 0; 2 * j + 1 <= order; ++j) {
    result += power * coeff;
    const T a(2 * j + 1);
    coeff = coeff * a * a / (T(2 * j + 2) * T(2 * j + 3));
    power = power * u2;
  }
  return result;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Series<T>& s) {
  bool first = true;
  for (std::size_t i = 0; i <= s.order(); ++i) {
    if (ScalarTraits<T>::is_zero(s[i], 0.0)) continue;
    if (!first) os << " + ";
    os << s[i];
    if (i == 1) os << " x";
    if (i > 1) os << " x^" << i;
    first = false;
  }
  if (first) os << 0;
  return os << " + O(x^" << s.order() + 1 << ")";
}

}  // namespace splitmap
