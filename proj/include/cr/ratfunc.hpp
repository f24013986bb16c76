#pragma once

// Rational functions = pairs of polynomials kept in lowest terms with a
// canonically normalized (monic-leading-term) denominator, so equality is
// structural. Reduction uses a primitive-PRS multivariate gcd.

#include <stdexcept>
#include <string>

#include "cr/poly.hpp"

namespace cr {

// gcd over the Gaussian rationals, normalized so the leading coefficient in
// the canonical monomial order is 1. gcd(0,0) == 0.
Poly poly_gcd(const Poly& a, const Poly& b);

// Exact division; throws if b does not divide a.
Poly poly_exact_div(const Poly& a, const Poly& b);

// True (and sets q) iff b | a.
bool poly_try_div(const Poly& a, const Poly& b, Poly* q);

class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const Poly& num)
      : num_(num), den_(num.table(), Scalar(1)) {}
  RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
    reduce();
  }
  RatFunc(VarTablePtr table, const Scalar& c)
      : num_(table, c), den_(std::move(table), Scalar(1)) {}

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const VarTablePtr& table() const { return num_.table(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Poly as_polynomial() const {
    if (!is_polynomial()) throw std::domain_error("not a polynomial");
    return num_ * den_.constant_value().inverse();
  }

  RatFunc operator-() const { return RatFunc::reduced(-num_, den_); }
  RatFunc operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
  }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("rational function division by 0");
    return RatFunc(num_ * o.den_, den_ * o.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc operator*(const Scalar& c) const {
    return RatFunc(num_ * c, den_);
  }

  bool operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc derivative(int var) const {
    return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var),
                   den_ * den_);
  }
  RatFunc conj() const { return RatFunc::reduced_conj(*this); }

  std::string to_string() const {
    if (is_polynomial()) return as_polynomial().to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  static RatFunc reduced(Poly n, Poly d) {
    RatFunc r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;  // caller guarantees already-reduced inputs
  }
  static RatFunc reduced_conj(const RatFunc& f) {
    Poly n = f.num_.conj(), d = f.den_.conj();
    Scalar lc = d.is_zero() ? Scalar(1) : d.leading_coefficient();
    return reduced(n * lc.inverse(), d * lc.inverse());
  }
  void reduce();

  Poly num_, den_;
};

inline void RatFunc::reduce() {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(num_.table(), Scalar(1));
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = poly_exact_div(num_, g);
    den_ = poly_exact_div(den_, g);
  }
  Scalar lc = den_.leading_coefficient();
  num_ *= lc.inverse();
  den_ *= lc.inverse();
}

}  // namespace cr
