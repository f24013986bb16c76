#pragma once

// Multivariate polynomials over Gaussian rationals, with a shared variable
// table that knows each variable's conjugate partner. Terms are kept in a
// canonical ordered map keyed by exponent vector, so equality is structural.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cr/scalar.hpp"

namespace cr {

struct VarTable {
  std::vector<std::string> names;
  // conj_of[i] == j means conjugation maps variable i to variable j
  // (an involution; real variables are fixed points).
  std::vector<int> conj_of;

  int size() const { return static_cast<int>(names.size()); }
  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    return -1;
  }
  bool operator==(const VarTable& o) const {
    return names == o.names && conj_of == o.conj_of;
  }
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_table(std::vector<std::string> names,
                              std::vector<int> conj_of) {
  auto t = std::make_shared<VarTable>();
  t->names = std::move(names);
  t->conj_of = std::move(conj_of);
  for (int i = 0; i < t->size(); ++i)
    if (t->conj_of[t->conj_of[i]] != i)
      throw std::invalid_argument("conjugation map is not an involution");
  return t;
}

using Expo = std::vector<uint32_t>;

class Poly {
 public:
  Poly() = default;
  explicit Poly(VarTablePtr table) : table_(std::move(table)) {}
  Poly(VarTablePtr table, const Scalar& c) : table_(std::move(table)) {
    if (!c.is_zero()) terms_[Expo(table_->size(), 0)] = c;
  }

  static Poly var(const VarTablePtr& table, int idx, const Scalar& c = 1) {
    Poly p(table);
    if (!c.is_zero()) {
      Expo e(table->size(), 0);
      e[idx] = 1;
      p.terms_[e] = c;
    }
    return p;
  }

  const VarTablePtr& table() const { return table_; }
  const std::map<Expo, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const Expo& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
  }
  Scalar constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) throw std::domain_error("polynomial is not constant");
    return terms_.begin()->second;
  }

  void add_term(const Expo& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r(table_);
    for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  Poly& operator+=(const Poly& o) {
    check(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly operator+(const Poly& o) const {
    Poly r(*this);
    return r += o;
  }
  Poly operator-(const Poly& o) const {
    Poly r(*this);
    return r -= o;
  }
  Poly operator*(const Poly& o) const {
    check(o);
    Poly r(table_);
    for (auto& [e1, c1] : terms_)
      for (auto& [e2, c2] : o.terms_) {
        Expo e(e1);
        for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(const Scalar& c) const {
    Poly r(table_);
    if (c.is_zero()) return r;
    for (auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
  }
  Poly& operator*=(const Scalar& c) { return *this = *this * c; }

  bool operator==(const Poly& o) const {
    return table_check(o) && terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(unsigned k) const {
    Poly acc(table_, Scalar(1)), base(*this);
    for (; k; k >>= 1) {
      if (k & 1) acc *= base;
      base *= base;
    }
    return acc;
  }

  Poly derivative(int var) const {
    Poly r(table_);
    for (auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Expo e2(e);
      e2[var] -= 1;
      r.add_term(e2, Scalar(Rational(static_cast<long>(e[var]))) * c);
    }
    return r;
  }

  Poly conj() const {
    Poly r(table_);
    for (auto& [e, c] : terms_) {
      Expo e2(e.size(), 0);
      for (size_t i = 0; i < e.size(); ++i) e2[table_->conj_of[i]] += e[i];
      r.add_term(e2, c.conj());
    }
    return r;
  }
  bool is_real() const { return *this == conj(); }

  // Substitute each variable by the polynomial values[i] (over any table).
  Poly substitute(const std::vector<Poly>& values) const {
    if (values.size() != static_cast<size_t>(table_->size()))
      throw std::invalid_argument("substitute: arity mismatch");
    const VarTablePtr& tt = values.empty() ? table_ : values[0].table();
    Poly r(tt);
    for (auto& [e, c] : terms_) {
      Poly term(tt, c);
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) term *= values[i].pow(e[i]);
      r += term;
    }
    return r;
  }

  int degree_in(int var) const {
    int d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (auto& [e, c] : terms_)
      d = std::max(d, static_cast<int>(
                          std::accumulate(e.begin(), e.end(), uint32_t(0))));
    return d;
  }
  // Total degree with per-variable weights (used for the nonisotropic
  // grading where t counts twice).
  int weighted_degree(const std::vector<int>& wts) const {
    int d = INT32_MIN;
    for (auto& [e, c] : terms_) {
      int s = 0;
      for (size_t i = 0; i < e.size(); ++i)
        s += wts[i] * static_cast<int>(e[i]);
      d = std::max(d, s);
    }
    return terms_.empty() ? 0 : d;
  }

  // Coefficient of var^k, as a polynomial in the remaining variables
  // (still over the full table).
  Poly coefficient_of(int var, uint32_t k) const {
    Poly r(table_);
    for (auto& [e, c] : terms_) {
      if (e[var] != k) continue;
      Expo e2(e);
      e2[var] = 0;
      r.add_term(e2, c);
    }
    return r;
  }

  // Leading term in the canonical (map) order: the largest key.
  const Scalar& leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero");
    return terms_.rbegin()->second;
  }

  std::string to_string() const;

 private:
  bool table_check(const Poly& o) const {
    return table_ == o.table_ || (table_ && o.table_ && *table_ == *o.table_);
  }
  void check(const Poly& o) const {
    if (!table_check(o))
      throw std::invalid_argument("polynomial variable tables differ");
  }

  VarTablePtr table_;
  std::map<Expo, Scalar> terms_;
};

inline Poly operator*(const Scalar& c, const Poly& p) { return p * c; }

inline std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  // Print highest-order terms first for readability.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += table_->names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = scalar_to_string(c);
    bool leading_minus = false;
    if (!mono.empty() && c == Scalar(1)) {
      cs = "";
    } else if (!mono.empty() && c == Scalar(-1)) {
      cs = "";
      leading_minus = true;
    } else if (!c.is_real() && c.re != 0) {
      cs = "(" + cs + ")";
    }
    std::string term = cs;
    if (!mono.empty()) {
      if (!cs.empty()) term += "*";
      term += mono;
    }
    if (first) {
      out += (leading_minus ? "-" : "") + term;
      first = false;
    } else {
      if (leading_minus)
        out += " - " + term;
      else if (!term.empty() && term[0] == '-')
        out += " - " + term.substr(1);
      else
        out += " + " + term;
    }
  }
  return out;
}

}  // namespace cr
