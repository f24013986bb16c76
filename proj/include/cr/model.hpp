#pragma once

// The flat model: coordinates (z^1..z^n, zb^1..zb^n, t) with the frame
//   Z_a    = d/dz^a   + (i/2) eps_a zb^a d/dt
//   Zbar_a = d/dzb^a  - (i/2) eps_a z^a  d/dt
//   T      = d/dt
// so that [Z_a, Zbar_b] = -i h_{ab} T with h = diag(eps).

#include <memory>
#include <string>

#include "cr/poly.hpp"
#include "cr/weight.hpp"

namespace cr {

struct Model {
  Signature sig;
  VarTablePtr table;

  int n() const { return sig.n; }
  int z(int a) const { return a; }            // a in [0, n)
  int zb(int a) const { return sig.n + a; }
  int t() const { return 2 * sig.n; }

  Poly zero_poly() const { return Poly(table); }
  Poly const_poly(const Scalar& c) const { return Poly(table, c); }
  Poly z_poly(int a) const { return Poly::var(table, z(a)); }
  Poly zb_poly(int a) const { return Poly::var(table, zb(a)); }
  Poly t_poly() const { return Poly::var(table, t()); }

  bool operator==(const Model& o) const {
    return sig == o.sig && (table == o.table || *table == *o.table);
  }
};

using ModelPtr = std::shared_ptr<const Model>;

inline ModelPtr make_model(const Signature& sig) {
  std::vector<std::string> names;
  std::vector<int> conj;
  for (int a = 0; a < sig.n; ++a) names.push_back("z" + std::to_string(a + 1));
  for (int a = 0; a < sig.n; ++a) names.push_back("zb" + std::to_string(a + 1));
  names.push_back("t");
  for (int a = 0; a < sig.n; ++a) conj.push_back(sig.n + a);
  for (int a = 0; a < sig.n; ++a) conj.push_back(a);
  conj.push_back(2 * sig.n);
  auto m = std::make_shared<Model>();
  m->sig = sig;
  m->table = make_table(std::move(names), std::move(conj));
  return m;
}

// A frame direction: Z_a, Zbar_a, or T.
struct Dir {
  enum Kind { Hol, AHol, Vert } kind = Vert;
  int a = 0;
  static Dir hol(int a) { return Dir{Hol, a}; }
  static Dir ahol(int a) { return Dir{AHol, a}; }
  static Dir vert() { return Dir{Vert, 0}; }
};

inline Poly frame_diff(const Model& m, Dir d, const Poly& p) {
  switch (d.kind) {
    case Dir::Hol: {
      Poly r = p.derivative(m.z(d.a));
      Poly dt = p.derivative(m.t());
      if (!dt.is_zero())
        r += m.zb_poly(d.a) * dt *
             (Scalar::I() * Scalar(rat(m.sig.eps[d.a], 2)));
      return r;
    }
    case Dir::AHol: {
      Poly r = p.derivative(m.zb(d.a));
      Poly dt = p.derivative(m.t());
      if (!dt.is_zero())
        r -= m.z_poly(d.a) * dt *
             (Scalar::I() * Scalar(rat(m.sig.eps[d.a], 2)));
      return r;
    }
    case Dir::Vert:
      return p.derivative(m.t());
  }
  return Poly(m.table);
}

}  // namespace cr
