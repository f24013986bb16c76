#pragma once

// Pseudohermitian structures over the flat model as chains of conformal
// rescalings theta -> e^Upsilon theta, the induced connection on weighted
// fields (with per-slot correction terms), the curvature data of a rescaled
// structure, and the tractor extension of the connection.
//
// Everything is componentwise in the fixed flat trivialization: the flat
// connection is the frame derivative, and each rescaling contributes the
// standard correction terms built from derivatives of Upsilon taken with the
// connection of the structure below it in the chain.

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cr/field.hpp"

namespace cr {

struct UpsilonData {
  std::vector<Poly> ua, uab;               // U_a, U_abar
  Poly u0, u00;                            // U_0, U_00
  std::vector<Poly> u0a, u0ab;             // U_{0 a}, U_{0 abar}
  std::vector<std::vector<Poly>> uaa;      // [b][a] = U_{a b}
  std::vector<std::vector<Poly>> uab_a;    // [b][a] = U_{abar b}
  std::vector<std::vector<Poly>> ua_ab;    // [b][a] = U_{a bbar}
  Poly ug2;                                // U_g U^g
  Poly tr_hol;                             // U^g{}_g
  Poly tr_ahol;                            // U^gbar{}_gbar
};

struct CurvatureData {
  Field P;        // (HolDown, AHolDown), weight (0,0)
  Field A;        // (HolDown, HolDown), weight (0,0), symmetric
  Field Tv;       // (HolDown), weight (-1,-1)
  Field S;        // scalar, weight (-2,-2)
  Field Pscalar;  // scalar trace of P, weight (-1,-1)
  Field Ricci;    // (HolDown, AHolDown), weight (0,0)
};

class Structure;
using StructurePtr = std::shared_ptr<const Structure>;

class Structure : public std::enable_shared_from_this<Structure> {
 public:
  static StructurePtr flat(ModelPtr m) {
    auto s = std::shared_ptr<Structure>(new Structure);
    s->model_ = std::move(m);
    return s;
  }
  static StructurePtr rescale(StructurePtr base, Poly upsilon) {
    if (!upsilon.is_real())
      throw std::invalid_argument("rescaling factor must be real");
    auto s = std::shared_ptr<Structure>(new Structure);
    s->model_ = base->model_;
    s->base_ = std::move(base);
    s->upsilon_ = std::move(upsilon);
    return s;
  }

  const ModelPtr& model() const { return model_; }
  const StructurePtr& base() const { return base_; }
  const Poly& upsilon() const { return upsilon_; }
  bool is_flat() const { return !base_; }
  int depth() const { return base_ ? base_->depth() + 1 : 0; }
  // Sum of all rescaling factors from the flat model up to here.
  Poly total_upsilon() const {
    return base_ ? base_->total_upsilon() + upsilon_ : Poly(model_->table);
  }

  const UpsilonData& upsilon_data() const;
  const CurvatureData& curvature() const;

 private:
  Structure() = default;
  ModelPtr model_;
  StructurePtr base_;
  Poly upsilon_;
  mutable std::optional<UpsilonData> ud_;
  mutable std::optional<CurvatureData> cd_;
};

template <class C>
struct CovTriple {
  FieldT<C> d;   // new leading HolDown slot
  FieldT<C> db;  // new leading AHolDown slot
  FieldT<C> d0;  // same slots, weight shifted by (-1,-1)
};

namespace detail {
inline std::vector<int> cat(int head, const std::vector<int>& tail) {
  std::vector<int> k;
  k.reserve(tail.size() + 1);
  k.push_back(head);
  k.insert(k.end(), tail.begin(), tail.end());
  return k;
}
inline std::vector<IndexKind> cat(IndexKind head,
                                  const std::vector<IndexKind>& tail) {
  std::vector<IndexKind> k;
  k.reserve(tail.size() + 1);
  k.push_back(head);
  k.insert(k.end(), tail.begin(), tail.end());
  return k;
}
}  // namespace detail

// Pseudohermitian covariant derivative of the structure on the effective
// component bundles: density weights (including tractor slot offsets) and
// holomorphic-type indices (including those carried by middle tractor
// values). Tractor-slot coupling terms are NOT included here; see
// cov_derivative.
template <class C>
CovTriple<C> ph_derivative(const StructurePtr& st, const FieldT<C>& f) {
  const Model& m = *f.model();
  const int n = m.n();
  const Scalar I = Scalar::I();
  CovTriple<C> out;

  if (st->is_flat()) {
    out.d = FieldT<C>(f.model(), f.weight(),
                      detail::cat(IndexKind::HolDown, f.sig()));
    out.db = FieldT<C>(f.model(), f.weight(),
                       detail::cat(IndexKind::AHolDown, f.sig()));
    out.d0 = FieldT<C>(f.model(), f.weight() - Weight(1, 1), f.sig());
    for (auto& [k, v] : f.comps()) {
      for (int a = 0; a < n; ++a) {
        out.d.add_comp(detail::cat(a, k), frame_diff(m, Dir::hol(a), v));
        out.db.add_comp(detail::cat(a, k), frame_diff(m, Dir::ahol(a), v));
      }
      out.d0.add_comp(k, frame_diff(m, Dir::vert(), v));
    }
    return out;
  }

  out = ph_derivative(st->base(), f);
  const UpsilonData& U = st->upsilon_data();
  const auto& eps = m.sig.eps;

  // Global vertical term: i U^gbar nabla_gbar f - i U^g nabla_g f,
  // with base-connection derivatives of f.
  {
    CovTriple<C> base_t = out;  // copy of the base derivative (pre-correction)
    for (auto& [k, v] : base_t.db.comps()) {
      int g = k[0];
      std::vector<int> rest(k.begin() + 1, k.end());
      out.d0.add_comp(rest,
                      CompOps<C>::mul(U.ua[g] * (I * Scalar(eps[g])), v));
    }
    for (auto& [k, v] : base_t.d.comps()) {
      int g = k[0];
      std::vector<int> rest(k.begin() + 1, k.end());
      out.d0.add_comp(rest,
                      CompOps<C>::mul(U.uab[g] * (-(I * Scalar(eps[g]))), v));
    }
  }

  const Scalar inv_n2(rat(1, n + 2));
  for (auto& [K, v] : f.comps()) {
    const Weight cw = f.component_weight(K);
    // Density corrections at the component's true weight.
    for (int a = 0; a < n; ++a) {
      if (cw.w != 0)
        out.d.add_comp(detail::cat(a, K),
                       CompOps<C>::mul(U.ua[a] * Scalar(cw.w), v));
      if (cw.wp != 0)
        out.db.add_comp(detail::cat(a, K),
                        CompOps<C>::mul(U.uab[a] * Scalar(cw.wp), v));
    }
    {
      Poly dens = U.u0 * Scalar(cw.w + cw.wp) + U.tr_hol * (I * Scalar(cw.w)) -
                  U.tr_ahol * (I * Scalar(cw.wp)) +
                  U.ug2 * (I * Scalar(cw.wp - cw.w));
      if (!dens.is_zero())
        out.d0.add_comp(K, CompOps<C>::mul(dens * inv_n2, v));
    }
    // Per-slot corrections on effective holomorphic-type indices.
    for (int s = 0; s < f.rank(); ++s) {
      IndexKind k0 = f.sig()[s];
      int val = K[s];
      IndexKind ek;
      int c, off;
      if (is_tractor(k0)) {
        if (val == 0 || val == n + 1) continue;
        ek = mid_kind(k0);
        c = val - 1;
        off = 1;
      } else {
        ek = k0;
        c = val;
        off = 0;
      }
      auto K_with = [&](int idx) {
        std::vector<int> k2(K);
        k2[s] = idx + off;
        return k2;
      };
      switch (ek) {
        case IndexKind::HolDown:
          for (int b = 0; b < n; ++b)
            out.d.add_comp(detail::cat(c, K_with(b)),
                           CompOps<C>::mul(-U.ua[b], v));
          for (int a = 0; a < n; ++a)
            out.d.add_comp(detail::cat(a, K), CompOps<C>::mul(-U.ua[a], v));
          for (int a = 0; a < n; ++a)
            out.db.add_comp(
                detail::cat(a, K_with(a)),
                CompOps<C>::mul(U.uab[c] * Scalar(eps[a] * eps[c]), v));
          for (int b = 0; b < n; ++b)
            out.d0.add_comp(
                K_with(b),
                CompOps<C>::mul((U.uab_a[b][c] - U.uab[c] * U.ua[b]) *
                                    (-(I * Scalar(eps[c]))),
                                v));
          break;
        case IndexKind::HolUp:
          for (int a = 0; a < n; ++a)
            out.d.add_comp(detail::cat(a, K), CompOps<C>::mul(U.ua[a], v));
          for (int a = 0; a < n; ++a)
            out.d.add_comp(detail::cat(a, K_with(a)),
                           CompOps<C>::mul(U.ua[c], v));
          for (int b = 0; b < n; ++b)
            out.db.add_comp(
                detail::cat(c, K_with(b)),
                CompOps<C>::mul(U.uab[b] * Scalar(-eps[c] * eps[b]), v));
          for (int b = 0; b < n; ++b)
            out.d0.add_comp(
                K_with(b),
                CompOps<C>::mul(
                    (U.uab_a[c][b] - U.uab[b] * U.ua[c]) * (I * Scalar(eps[b])),
                    v));
          break;
        case IndexKind::AHolDown:
          for (int b = 0; b < n; ++b)
            out.db.add_comp(detail::cat(c, K_with(b)),
                            CompOps<C>::mul(-U.uab[b], v));
          for (int a = 0; a < n; ++a)
            out.db.add_comp(detail::cat(a, K), CompOps<C>::mul(-U.uab[a], v));
          for (int a = 0; a < n; ++a)
            out.d.add_comp(
                detail::cat(a, K_with(a)),
                CompOps<C>::mul(U.ua[c] * Scalar(eps[a] * eps[c]), v));
          for (int b = 0; b < n; ++b)
            out.d0.add_comp(
                K_with(b),
                CompOps<C>::mul(
                    (U.ua_ab[b][c] - U.ua[c] * U.uab[b]) * (I * Scalar(eps[c])),
                    v));
          break;
        case IndexKind::AHolUp:
          for (int a = 0; a < n; ++a)
            out.db.add_comp(detail::cat(a, K), CompOps<C>::mul(U.uab[a], v));
          for (int a = 0; a < n; ++a)
            out.db.add_comp(detail::cat(a, K_with(a)),
                            CompOps<C>::mul(U.uab[c], v));
          for (int b = 0; b < n; ++b)
            out.d.add_comp(
                detail::cat(c, K_with(b)),
                CompOps<C>::mul(U.ua[b] * Scalar(-eps[c] * eps[b]), v));
          for (int b = 0; b < n; ++b)
            out.d0.add_comp(
                K_with(b),
                CompOps<C>::mul((U.ua_ab[c][b] - U.ua[b] * U.uab[c]) *
                                    (-(I * Scalar(eps[b]))),
                                v));
          break;
        default:
          throw std::logic_error("unexpected effective kind");
      }
    }
  }
  return out;
}

namespace detail {

struct TracEntry {
  int out, in;
  Poly coeff;
};

// Correction matrix of the tractor connection on a single lower tractor slot
// (entries (out value <- in value) with polynomial coefficients), per
// direction: dir_kind 0 = holomorphic index b, 1 = antiholomorphic index b,
// 2 = vertical.
inline std::vector<TracEntry> trac_matrix_down(const Model& m,
                                               const CurvatureData& cd,
                                               int dir_kind, int b) {
  const int n = m.n();
  const auto& eps = m.sig.eps;
  const Scalar I = Scalar::I();
  const int top = 0, bot = n + 1;
  auto P = [&](int x, int y) { return cd.P.get({x, y}); };
  auto A = [&](int x, int y) { return cd.A.get({x, y}); };
  auto Tv = [&](int x) { return cd.Tv.get({x}); };
  std::vector<TracEntry> out;
  if (dir_kind == 0) {
    // nabla_b (sigma, tau_a, rho) =
    //   (nabla sigma - tau_b, nabla tau_a + i A_{ab} sigma,
    //    nabla rho - P_b^a tau_a + T_b sigma)
    out.push_back({top, 1 + b, Poly(m.table, Scalar(-1))});
    for (int a = 0; a < n; ++a)
      out.push_back({1 + a, top, A(a, b) * I});
    for (int a = 0; a < n; ++a)
      out.push_back({bot, 1 + a, P(b, a) * Scalar(-eps[a])});
    out.push_back({bot, top, Tv(b)});
  } else if (dir_kind == 1) {
    // nabla_bbar: (nabla sigma, nabla tau_a + h_{a bbar} rho + P_{a bbar}
    // sigma, nabla rho + i A_bbar^a tau_a - T_bbar sigma)
    out.push_back({1 + b, bot, Poly(m.table, Scalar(eps[b]))});
    for (int a = 0; a < n; ++a)
      out.push_back({1 + a, top, P(a, b)});
    for (int a = 0; a < n; ++a)
      out.push_back({bot, 1 + a, A(b, a).conj() * (I * Scalar(eps[a]))});
    out.push_back({bot, top, -Tv(b).conj()});
  } else {
    // nabla_0: (nabla sigma + i/(n+2) P sigma - i rho,
    //           nabla tau_a - i P_a^g tau_g + i/(n+2) P tau_a + 2i T_a sigma,
    //           nabla rho + i/(n+2) P rho + 2i T^a tau_a + i S sigma)
    Poly Psc = cd.Pscalar.get({});
    Poly S0 = cd.S.get({});
    Scalar c = I * Scalar(rat(1, n + 2));
    out.push_back({top, top, Psc * c});
    out.push_back({top, bot, Poly(m.table, -I)});
    for (int a = 0; a < n; ++a) {
      for (int g = 0; g < n; ++g)
        out.push_back({1 + a, 1 + g, P(a, g) * (-(I * Scalar(eps[g])))});
      out.push_back({1 + a, 1 + a, Psc * c});
      out.push_back({1 + a, top, Tv(a) * (Scalar(2) * I)});
    }
    out.push_back({bot, bot, Psc * c});
    for (int a = 0; a < n; ++a)
      out.push_back(
          {bot, 1 + a, Tv(a).conj() * (Scalar(2 * eps[a]) * I)});
    out.push_back({bot, top, S0 * I});
  }
  return out;
}

// Lower barred tractor slot: conjugate table with the holomorphic and
// antiholomorphic directions swapped.
inline std::vector<TracEntry> trac_matrix_down_bar(const Model& m,
                                                   const CurvatureData& cd,
                                                   int dir_kind, int b) {
  int swapped = dir_kind == 2 ? 2 : 1 - dir_kind;
  std::vector<TracEntry> out = trac_matrix_down(m, cd, swapped, b);
  for (auto& e : out) e.coeff = e.coeff.conj();
  return out;
}

template <class C>
void apply_trac_corrections(const StructurePtr& st, const FieldT<C>& f,
                            CovTriple<C>& out) {
  const Model& m = *f.model();
  const int n = m.n();
  bool any = false;
  for (IndexKind k : f.sig()) any = any || is_tractor(k);
  if (!any) return;
  const CurvatureData& cd = st->curvature();

  for (int s = 0; s < f.rank(); ++s) {
    IndexKind k0 = f.sig()[s];
    if (!is_tractor(k0)) continue;
    bool barred = is_barred(k0);
    bool up = is_up(k0);
    for (int dir_kind = 0; dir_kind < 3; ++dir_kind) {
      int nb = dir_kind == 2 ? 1 : n;
      for (int b = 0; b < nb; ++b) {
        auto mat = barred ? trac_matrix_down_bar(m, cd, dir_kind, b)
                          : trac_matrix_down(m, cd, dir_kind, b);
        for (auto& e : mat) {
          int from = up ? e.out : e.in;
          int to = up ? e.in : e.out;
          Poly coeff = up ? -e.coeff : e.coeff;
          for (auto& [K, v] : f.comps()) {
            if (K[s] != from) continue;
            std::vector<int> K2(K);
            K2[s] = to;
            C add = CompOps<C>::mul(coeff, v);
            if (dir_kind == 0)
              out.d.add_comp(detail::cat(b, K2), add);
            else if (dir_kind == 1)
              out.db.add_comp(detail::cat(b, K2), add);
            else
              out.d0.add_comp(K2, add);
          }
        }
      }
    }
  }
}

}  // namespace detail

// Full covariant derivative: pseudohermitian action on weights and
// holomorphic-type slots plus the tractor coupling terms with the
// structure's curvature data.
template <class C>
CovTriple<C> cov_derivative(const StructurePtr& st, const FieldT<C>& f) {
  CovTriple<C> out = ph_derivative(st, f);
  detail::apply_trac_corrections(st, f, out);
  return out;
}

// --- lazily computed per-structure data -----------------------------------

inline const UpsilonData& Structure::upsilon_data() const {
  if (ud_) return *ud_;
  if (!base_) throw std::logic_error("flat structure has no rescaling data");
  const Model& m = *model_;
  const int n = m.n();
  const auto& eps = m.sig.eps;
  UpsilonData U;

  Field up = scalar_field(model_, Weight(0, 0), upsilon_);
  auto d1 = ph_derivative(base_, up);
  U.ua.resize(n);
  U.uab.resize(n);
  for (int a = 0; a < n; ++a) {
    U.ua[a] = d1.d.get({a});
    U.uab[a] = d1.db.get({a});
  }
  U.u0 = d1.d0.get({});

  auto d2a = ph_derivative(base_, d1.d);    // nabla nabla_a U
  auto d2ab = ph_derivative(base_, d1.db);  // nabla nabla_abar U
  auto d20 = ph_derivative(base_, d1.d0);   // nabla nabla_0 U
  U.uaa.assign(n, std::vector<Poly>(n));
  U.uab_a.assign(n, std::vector<Poly>(n));
  U.ua_ab.assign(n, std::vector<Poly>(n));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      U.uaa[b][a] = d2a.d.get({b, a});
      U.uab_a[b][a] = d2ab.d.get({b, a});
      U.ua_ab[b][a] = d2a.db.get({b, a});
    }
  U.u0a.resize(n);
  U.u0ab.resize(n);
  for (int a = 0; a < n; ++a) {
    U.u0a[a] = d20.d.get({a});
    U.u0ab[a] = d20.db.get({a});
  }
  U.u00 = d20.d0.get({});

  U.ug2 = Poly(m.table);
  U.tr_hol = Poly(m.table);
  U.tr_ahol = Poly(m.table);
  for (int g = 0; g < n; ++g) {
    U.ug2 += U.ua[g] * U.uab[g] * Scalar(eps[g]);
    U.tr_hol += U.uab_a[g][g] * Scalar(eps[g]);
    U.tr_ahol += U.ua_ab[g][g] * Scalar(eps[g]);
  }
  ud_ = std::move(U);
  return *ud_;
}

inline const CurvatureData& Structure::curvature() const {
  if (cd_) return *cd_;
  const Model& m = *model_;
  const int n = m.n();
  const auto& eps = m.sig.eps;
  CurvatureData cd;
  cd.P = Field(model_, Weight(0, 0),
               {IndexKind::HolDown, IndexKind::AHolDown});
  cd.A = Field(model_, Weight(0, 0), {IndexKind::HolDown, IndexKind::HolDown});
  cd.Tv = Field(model_, Weight(-1, -1), {IndexKind::HolDown});
  cd.S = Field(model_, Weight(-2, -2));
  cd.Pscalar = Field(model_, Weight(-1, -1));
  cd.Ricci = Field(model_, Weight(0, 0),
                   {IndexKind::HolDown, IndexKind::AHolDown});

  if (base_) {
    const CurvatureData& bd = base_->curvature();
    const UpsilonData& U = upsilon_data();
    const Scalar I = Scalar::I();
    const Scalar half(rat(1, 2));

    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        // P_hat = P - (U_{a bbar} + U_{bbar a})/2 - U_g U^g h / 2
        Poly val = bd.P.get({a, b}) -
                   (U.ua_ab[b][a] + U.uab_a[a][b]) * half;
        if (a == b) val -= U.ug2 * (half * Scalar(eps[a]));
        cd.P.add_comp({a, b}, val);
        // A_hat = A + i U_{ab} - i U_a U_b
        cd.A.add_comp({a, b},
                      bd.A.get({a, b}) +
                          (U.uaa[b][a] - U.ua[a] * U.ua[b]) * I);
      }

    for (int a = 0; a < n; ++a) {
      // T_hat = T + i/2 U_{0a} + P_a^b U_b - i A_{ab} U^b
      //         + 1/2 U_{ab} U^b - 1/2 U_a^b U_b - 1/2 U_b U^b U_a
      Poly val = bd.Tv.get({a}) + U.u0a[a] * (half * I) -
                 U.ug2 * U.ua[a] * half;
      for (int b = 0; b < n; ++b) {
        val += bd.P.get({a, b}) * U.ua[b] * Scalar(eps[b]);
        val -= bd.A.get({a, b}) * U.uab[b] * (I * Scalar(eps[b]));
        val += U.uaa[b][a] * U.uab[b] * (half * Scalar(eps[b]));
        val -= U.ua_ab[b][a] * U.ua[b] * (half * Scalar(eps[b]));
      }
      cd.Tv.add_comp({a}, val);
    }

    {
      Poly val = bd.S.get({}) + U.u00 * half - U.u0 * U.u0 * Scalar(rat(1, 4));
      Poly X(m.table), Yterm(m.table);
      for (int a = 0; a < n; ++a) {
        val -= (U.uab[a] * bd.Tv.get({a}) + U.ua[a] * bd.Tv.get({a}).conj()) *
               Scalar(3 * eps[a]);
        val += (U.u0ab[a] * U.ua[a] - U.u0a[a] * U.uab[a]) *
               (I * Scalar(eps[a]));
        for (int b = 0; b < n; ++b) {
          X += bd.A.get({a, b}) * U.uab[a] * U.uab[b] *
               Scalar(eps[a] * eps[b]);
          val -= bd.P.get({a, b}) * U.uab[a] * U.ua[b] *
                 Scalar(3 * eps[a] * eps[b]);
          Yterm += U.uaa[b][a] * U.uab[a] * U.uab[b] *
                   Scalar(eps[a] * eps[b]);
          val += (U.ua_ab[b][a] + U.uab_a[a][b]) * U.uab[a] * U.ua[b] *
                 (half * Scalar(eps[a] * eps[b]));
        }
      }
      val += (X - X.conj()) * (Scalar(rat(3, 2)) * I);
      val -= (Yterm + Yterm.conj()) * half;
      val += U.ug2 * U.ug2 * Scalar(rat(3, 4));
      cd.S.add_comp({}, val);
    }
  }

  {
    Poly tr(m.table);
    for (int a = 0; a < n; ++a) tr += cd.P.get({a, a}) * Scalar(eps[a]);
    cd.Pscalar.add_comp({}, tr);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Poly val = cd.P.get({a, b}) * Scalar(n + 2);
        if (a == b) val += tr * Scalar(eps[a]);
        cd.Ricci.add_comp({a, b}, val);
      }
  }
  cd_ = std::move(cd);
  return *cd_;
}

}  // namespace cr
