#pragma once

// Exact Gaussian-rational scalars: a + b*i with arbitrary-precision rational
// a, b. This is the coefficient field for everything in the library.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cr {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p", "p/q". Throws on malformed input.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

struct Scalar {
  Rational re = 0;
  Rational im = 0;

  Scalar() = default;
  Scalar(long n) : re(n) {}  // NOLINT: implicit by design
  Scalar(Rational r) : re(std::move(r)) {}
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar I() { return Scalar(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  Scalar conj() const { return Scalar(re, -im); }

  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Scalar operator+(const Scalar& o) const {
    Scalar s(*this);
    return s += o;
  }
  Scalar operator-(const Scalar& o) const {
    Scalar s(*this);
    return s -= o;
  }
  Scalar operator*(const Scalar& o) const {
    return Scalar(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const {
    Rational n = re * re + im * im;
    if (n == 0) throw std::domain_error("division by zero scalar");
    return Scalar(re / n, -im / n);
  }
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Total order for canonical term ordering only; no analytic meaning.
  bool operator<(const Scalar& o) const {
    if (re != o.re) return re < o.re;
    return im < o.im;
  }

  Scalar pow(unsigned k) const {
    Scalar acc(1), base(*this);
    for (; k; k >>= 1) {
      if (k & 1) acc *= base;
      base *= base;
    }
    return acc;
  }
};

inline Scalar operator*(const Rational& r, const Scalar& s) {
  return Scalar(r) * s;
}

// "3", "-1/2", "3+2i", "-i", "1/2-5/3i" style; used by debug printing tests.
std::string scalar_to_string(const Scalar& s);

inline std::string scalar_to_string(const Scalar& s) {
  if (s.is_zero()) return "0";
  std::string out;
  if (s.re != 0) out += to_string(s.re);
  if (s.im != 0) {
    if (s.im == 1)
      out += out.empty() ? "i" : "+i";
    else if (s.im == -1)
      out += "-i";
    else {
      if (!out.empty() && s.im > 0) out += "+";
      out += to_string(s.im) + "i";
    }
  }
  return out;
}

}  // namespace cr
