#pragma once

// Scalar linear differential operators with polynomial coefficients, kept in
// normal order (all coefficients to the left of all partials), so equality is
// structural. Composition rewrites into normal order with the Leibniz rule.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cr/model.hpp"
#include "cr/poly.hpp"
#include "cr/weight.hpp"

namespace cr {

class DiffOp {
 public:
  DiffOp() = default;
  explicit DiffOp(VarTablePtr table) : table_(std::move(table)) {}

  static DiffOp identity(const VarTablePtr& table) {
    DiffOp d(table);
    d.terms_[Expo(table->size(), 0)] = Poly(table, Scalar(1));
    return d;
  }
  static DiffOp partial(const VarTablePtr& table, int var,
                        const Poly& coeff) {
    DiffOp d(table);
    Expo e(table->size(), 0);
    e[var] = 1;
    d.add_term(e, coeff);
    return d;
  }
  static DiffOp mult(const Poly& coeff) {
    DiffOp d(coeff.table());
    d.add_term(Expo(coeff.table()->size(), 0), coeff);
    return d;
  }

  const VarTablePtr& table() const { return table_; }
  const std::map<Expo, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Expo& e, const Poly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffOp operator-() const {
    DiffOp r(table_);
    for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  DiffOp& operator+=(const DiffOp& o) {
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  DiffOp operator+(const DiffOp& o) const {
    DiffOp r(*this);
    return r += o;
  }
  DiffOp operator-(const DiffOp& o) const {
    DiffOp r(*this);
    return r -= o;
  }
  DiffOp operator*(const Scalar& s) const {
    DiffOp r(table_);
    if (s.is_zero()) return r;
    for (auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }
  // Left multiplication by a function.
  DiffOp left_mul(const Poly& p) const {
    DiffOp r(table_);
    for (auto& [e, c] : terms_) r.add_term(e, p * c);
    return r;
  }

  bool operator==(const DiffOp& o) const { return terms_ == o.terms_; }
  bool operator!=(const DiffOp& o) const { return !(*this == o); }

  Poly apply(const Poly& p) const {
    Poly r(p.table());
    for (auto& [e, c] : terms_) {
      Poly d = p;
      for (size_t v = 0; v < e.size() && !d.is_zero(); ++v)
        for (uint32_t k = 0; k < e[v]; ++k) d = d.derivative(static_cast<int>(v));
      r += c * d;
    }
    return r;
  }

  // this o rhs (apply rhs first), normal-ordered.
  DiffOp compose(const DiffOp& rhs) const {
    DiffOp out(table_);
    for (auto& [I, p] : terms_) {
      for (auto& [J, q] : rhs.terms_) {
        // d^I (q d^J u) = sum_{K <= I} binom(I,K) (d^{I-K} q) d^{K+J} u
        walk_subindices(I, q, [&](const Expo& K, const Rational& binom,
                                  const Poly& dq) {
          Expo e(K);
          for (size_t v = 0; v < e.size(); ++v) e[v] += J[v];
          out.add_term(e, p * dq * Scalar(binom));
        });
      }
    }
    return out;
  }

  DiffOp pow(unsigned k) const {
    DiffOp acc = identity(table_);
    for (unsigned i = 0; i < k; ++i) acc = compose(acc);
    return acc;
  }

  // Coefficient-wise conjugation: conj o this o conj. Swaps the holomorphic
  // and antiholomorphic parts of each multi-index via the table involution.
  DiffOp conjugated() const {
    DiffOp r(table_);
    for (auto& [e, c] : terms_) {
      Expo e2(e.size(), 0);
      for (size_t v = 0; v < e.size(); ++v)
        e2[table_->conj_of[v]] += e[v];
      r.add_term(e2, c.conj());
    }
    return r;
  }

  // Formal adjoint for the pairing <u,v> = integral of u * conj(v) with
  // Lebesgue measure: (d/dz)* = -d/dzb, (d/dt)* = -d/dt, (c .)* = conj(c) .
  DiffOp formal_adjoint() const {
    DiffOp r(table_);
    for (auto& [e, c] : terms_) {
      Expo e2(e.size(), 0);
      uint32_t order = 0;
      for (size_t v = 0; v < e.size(); ++v) {
        e2[table_->conj_of[v]] += e[v];
        order += e[v];
      }
      DiffOp d(table_);
      d.terms_[e2] = Poly(table_, Scalar(order % 2 ? -1 : 1));
      r += d.compose(mult(c.conj()));
    }
    return r;
  }

  // Top part in the grading deg(d/dv) = +grade[v], deg(v) = -grade[v].
  DiffOp graded_top(const std::vector<int>& grade) const {
    int best = INT32_MIN;
    DiffOp r(table_);
    for (auto& [e, c] : terms_) {
      int base = 0;
      for (size_t v = 0; v < e.size(); ++v)
        base += grade[v] * static_cast<int>(e[v]);
      for (auto& [mono, s] : c.terms()) {
        int g = base;
        for (size_t v = 0; v < mono.size(); ++v)
          g -= grade[v] * static_cast<int>(mono[v]);
        if (g > best) {
          best = g;
          r = DiffOp(table_);
        }
        if (g == best) {
          Poly piece(table_);
          piece.add_term(mono, s);
          r.add_term(e, piece);
        }
      }
    }
    return r;
  }

  // Terms of maximal derivative order (every variable counting once).
  DiffOp order_top() const {
    uint32_t best = 0;
    for (auto& [e, c] : terms_) {
      uint32_t o = 0;
      for (uint32_t k : e) o += k;
      best = std::max(best, o);
    }
    DiffOp r(table_);
    for (auto& [e, c] : terms_) {
      uint32_t o = 0;
      for (uint32_t k : e) o += k;
      if (o == best) r.add_term(e, c);
    }
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      if (!out.empty()) out += " + ";
      std::string ds;
      for (size_t v = 0; v < e.size(); ++v) {
        if (!e[v]) continue;
        if (!ds.empty()) ds += "*";
        ds += "D[" + table_->names[v] + "]";
        if (e[v] > 1) ds += "^" + std::to_string(e[v]);
      }
      if (ds.empty())
        out += "(" + c.to_string() + ")";
      else
        out += "(" + c.to_string() + ")*" + ds;
    }
    return out;
  }

 private:
  template <class F>
  static void walk_subindices(const Expo& I, const Poly& q, F&& emit) {
    // Iterate K <= I, tracking binom(I,K) and d^{I-K} q incrementally over
    // one variable at a time (recursively).
    struct Rec {
      const Expo& I;
      F& emit;
      Expo K;
      Rec(const Expo& i, F& f) : I(i), emit(f), K(i.size(), 0) {}
      void go(size_t v, const Rational& binom, const Poly& dq) {
        if (dq.is_zero()) return;
        if (v == I.size()) {
          emit(K, binom, dq);
          return;
        }
        Poly cur = dq;
        Rational b = binom;
        // j = number of derivatives falling on u in variable v; I[v]-j hit q.
        // Walk j from I[v] down to 0 so cur accumulates derivatives of q.
        for (int j = static_cast<int>(I[v]); j >= 0; --j) {
          K[v] = static_cast<uint32_t>(j);
          go(v + 1, b, cur);
          if (j > 0) {
            b = b * j / (static_cast<int>(I[v]) - j + 1);
            cur = cur.derivative(static_cast<int>(v));
            if (cur.is_zero()) break;
          }
        }
        K[v] = 0;
      }
    } rec(I, emit);
    rec.go(0, 1, q);
  }

  VarTablePtr table_;
  std::map<Expo, Poly> terms_;
};

inline DiffOp operator*(const Scalar& s, const DiffOp& d) { return d * s; }

// Frame vector fields as operators.
inline DiffOp frame_op(const Model& m, Dir d) {
  switch (d.kind) {
    case Dir::Hol: {
      DiffOp r = DiffOp::partial(m.table, m.z(d.a), m.const_poly(Scalar(1)));
      r += DiffOp::partial(
          m.table, m.t(),
          m.zb_poly(d.a) * (Scalar::I() * Scalar(rat(m.sig.eps[d.a], 2))));
      return r;
    }
    case Dir::AHol: {
      DiffOp r = DiffOp::partial(m.table, m.zb(d.a), m.const_poly(Scalar(1)));
      r -= DiffOp::partial(
          m.table, m.t(),
          m.z_poly(d.a) * (Scalar::I() * Scalar(rat(m.sig.eps[d.a], 2))));
      return r;
    }
    case Dir::Vert:
      return DiffOp::partial(m.table, m.t(), m.const_poly(Scalar(1)));
  }
  return DiffOp(m.table);
}

inline DiffOp frame_diff(const Model& m, Dir d, const DiffOp& op) {
  return frame_op(m, d).compose(op);
}

}  // namespace cr
