// Multivariate gcd over the Gaussian rationals via recursive primitive
// pseudo-remainder sequences: pick the highest occurring variable as the main
// one, split into content and primitive part over the subring in the
// remaining variables, and recurse.

#include <stdexcept>
#include <vector>

#include "cr/ratfunc.hpp"

namespace cr {

namespace {

// Highest variable index occurring in either polynomial, or -1 if both are
// constants.
int main_variable(const Poly& a, const Poly& b) {
  int nv = a.table()->size();
  for (int v = nv - 1; v >= 0; --v)
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
  return -1;
}

Poly normalize_leading(const Poly& p) {
  if (p.is_zero()) return p;
  return p * p.leading_coefficient().inverse();
}

// p as a dense coefficient vector in variable v (coefficients are
// polynomials over the full table with v-degree 0).
std::vector<Poly> coeffs_in(const Poly& p, int v) {
  int d = p.degree_in(v);
  std::vector<Poly> c;
  c.reserve(d + 1);
  for (int k = 0; k <= d; ++k)
    c.push_back(p.coefficient_of(v, static_cast<uint32_t>(k)));
  return c;
}

Poly from_coeffs(const std::vector<Poly>& c, int v, const VarTablePtr& table) {
  Poly x = Poly::var(table, v);
  Poly r(table);
  Poly xk(table, Scalar(1));
  for (size_t k = 0; k < c.size(); ++k) {
    r += c[k] * xk;
    xk *= x;
  }
  return r;
}

// Pseudo-remainder of a by b in variable v: lc(b)^(da-db+1) * a mod b.
Poly pseudo_rem(const Poly& a, const Poly& b, int v) {
  std::vector<Poly> A = coeffs_in(a, v);
  std::vector<Poly> B = coeffs_in(b, v);
  const VarTablePtr& table = a.table();
  int db = static_cast<int>(B.size()) - 1;
  const Poly& lb = B.back();
  while (static_cast<int>(A.size()) - 1 >= db) {
    while (!A.empty() && A.back().is_zero()) A.pop_back();
    int da = static_cast<int>(A.size()) - 1;
    if (da < db) break;
    Poly top = A.back();
    for (auto& c : A) c *= lb;
    for (int k = 0; k <= db; ++k)
      A[da - db + k] -= top * B[k];
    A.pop_back();
  }
  return from_coeffs(A, v, table);
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_leading(b);
  if (b.is_zero()) return normalize_leading(a);
  int v = main_variable(a, b);
  if (v < 0) return Poly(a.table(), Scalar(1));
  if (a.degree_in(v) == 0 || b.degree_in(v) == 0) {
    // One side is free of the main variable: gcd divides that side's
    // coefficient content, and the other side's content in v.
    const Poly& flat = a.degree_in(v) == 0 ? a : b;
    const Poly& tall = a.degree_in(v) == 0 ? b : a;
    Poly g = flat;
    for (const Poly& c : coeffs_in(tall, v)) g = poly_gcd(g, c);
    return g;
  }

  auto content = [&](const Poly& p) {
    Poly g(p.table());
    for (const Poly& c : coeffs_in(p, v)) g = poly_gcd(g, c);
    return g;
  };

  Poly ca = content(a), cb = content(b);
  Poly A = poly_exact_div(a, ca), B = poly_exact_div(b, cb);
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  while (true) {
    Poly r = pseudo_rem(A, B, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      B = Poly(a.table(), Scalar(1));
      break;
    }
    Poly cr = content(r);
    A = B;
    B = poly_exact_div(r, cr);
  }
  Poly cg = poly_gcd(ca, cb);
  return normalize_leading(B * cg);
}

bool poly_try_div(const Poly& a, const Poly& b, Poly* q) {
  if (b.is_zero()) return false;
  const VarTablePtr& table = a.table();
  Poly r = a, quot(table);
  const Expo& eb = b.terms().rbegin()->first;
  const Scalar& cb = b.terms().rbegin()->second;
  while (!r.is_zero()) {
    const Expo& er = r.terms().rbegin()->first;
    Expo q_e(er.size(), 0);
    for (size_t i = 0; i < er.size(); ++i) {
      if (er[i] < eb[i]) return false;
      q_e[i] = er[i] - eb[i];
    }
    Scalar q_c = r.terms().rbegin()->second / cb;
    Poly m(table);
    m.add_term(q_e, q_c);
    quot += m;
    r -= m * b;
  }
  if (q) *q = quot;
  return true;
}

Poly poly_exact_div(const Poly& a, const Poly& b) {
  Poly q;
  if (!poly_try_div(a, b, &q))
    throw std::domain_error("polynomial division is not exact");
  return q;
}

}  // namespace cr
