#pragma once

// Deterministic pseudo-random generation of exact test data (rationals,
// polynomials, operators, fields). Same seed => same data on every platform.

#include <cstdint>
#include <vector>

#include "cr/field.hpp"
#include "cr/diffop.hpp"
#include "cr/model.hpp"

namespace cr {

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi] inclusive.
  int64_t int_in(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  Rational rational() { return rat(int_in(-4, 4), int_in(1, 3)); }
  Rational nonzero_rational() {
    for (;;) {
      Rational r = rational();
      if (r != 0) return r;
    }
  }
  Scalar scalar() { return Scalar(rational(), rational()); }

  // Random polynomial of total degree <= deg (possibly zero).
  Poly poly(const ModelPtr& m, int deg, int terms = 4) {
    Poly p(m->table);
    size_t nv = m->table->size();
    for (int k = 0; k < terms; ++k) {
      Expo e(nv, 0);
      int budget = static_cast<int>(int_in(0, deg));
      for (int j = 0; j < budget; ++j)
        e[static_cast<size_t>(int_in(0, static_cast<int64_t>(nv) - 1))] += 1;
      Poly mono(m->table);
      mono.add_term(e, scalar());
      p += mono;
    }
    return p;
  }

  Poly nonzero_poly(const ModelPtr& m, int deg, int terms = 4) {
    for (;;) {
      Poly p = poly(m, deg, terms);
      if (!p.is_zero()) return p;
    }
  }

  // Random real polynomial (candidate rescaling exponent).
  Poly real_poly(const ModelPtr& m, int deg, int terms = 4) {
    Poly p = poly(m, deg, terms);
    return (p + p.conj()) * Scalar(rat(1, 2));
  }

  // Random operator: sum of `terms` coefficient*partial^I terms.
  DiffOp diffop(const ModelPtr& m, int order, int coeff_deg, int terms = 3) {
    DiffOp d(m->table);
    size_t nv = m->table->size();
    for (int k = 0; k < terms; ++k) {
      Expo e(nv, 0);
      int budget = static_cast<int>(int_in(0, order));
      for (int j = 0; j < budget; ++j)
        e[static_cast<size_t>(int_in(0, static_cast<int64_t>(nv) - 1))] += 1;
      d.add_term(e, poly(m, coeff_deg, 2));
    }
    return d;
  }

  // Random field with the given slot kinds; every component filled.
  Field field(const ModelPtr& m, const Weight& wt,
              const std::vector<IndexKind>& kinds, int deg) {
    Field f(m, wt, kinds);
    std::vector<int> idx(kinds.size(), 0);
    fill_rec(f, kinds, idx, 0, deg);
    return f;
  }

 private:
  void fill_rec(Field& f, const std::vector<IndexKind>& kinds,
                std::vector<int>& idx, size_t slot, int deg) {
    if (slot == kinds.size()) {
      f.set_comp(idx, poly(f.model(), deg, 3));
      return;
    }
    int count = slot_range(kinds[slot], f.model()->n());
    for (int v = 0; v < count; ++v) {
      idx[slot] = v;
      fill_rec(f, kinds, idx, slot + 1, deg);
    }
  }

  uint64_t state_;
};

// All monomials z^a zb^b t^c with weighted degree (|a|+|b|+2c) <= N,
// in a fixed deterministic order.
inline std::vector<Poly> graded_basis(const Model& m, int N) {
  std::vector<Expo> expos;
  Expo cur(m.table->size(), 0);
  struct Rec {
    const Model& m;
    std::vector<Expo>& out;
    Expo& cur;
    void go(size_t v, int budget) {
      if (v == cur.size()) {
        out.push_back(cur);
        return;
      }
      int wgt = (static_cast<int>(v) == m.t()) ? 2 : 1;
      for (int k = 0; k * wgt <= budget; ++k) {
        cur[v] = static_cast<uint32_t>(k);
        go(v + 1, budget - k * wgt);
      }
      cur[v] = 0;
    }
  } rec{m, expos, cur};
  rec.go(0, N);
  std::vector<Poly> basis;
  for (auto& e : expos) {
    Poly p(m.table);
    p.add_term(e, Scalar(1));
    basis.push_back(p);
  }
  return basis;
}

// Matrix of op on the span of a monomial basis; throws if the image leaves it.
inline std::vector<std::vector<Scalar>> operator_matrix(
    const DiffOp& op, const std::vector<Poly>& basis) {
  std::map<Expo, size_t> pos;
  for (size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].terms().size() != 1)
      throw std::invalid_argument("basis must consist of monomials");
    pos[basis[j].terms().begin()->first] = j;
  }
  size_t N = basis.size();
  std::vector<std::vector<Scalar>> M(N, std::vector<Scalar>(N, Scalar(0)));
  for (size_t j = 0; j < N; ++j) {
    Poly img = op.apply(basis[j]);
    for (auto& [e, c] : img.terms()) {
      auto it = pos.find(e);
      if (it == pos.end())
        throw std::runtime_error("operator image leaves the monomial span");
      M[it->second][j] = c;
    }
  }
  return M;
}

}  // namespace cr
