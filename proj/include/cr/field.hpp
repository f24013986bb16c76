#pragma once

// Weighted fields on the model: a density weight, an ordered list of index
// slots, and a sparse map from index assignments to components. Components
// are polynomials for field values, or differential operators when the same
// machinery is used to extract operators symbolically.
//
// Index slot values: holomorphic-type slots take 0..n-1. Tractor slots take
// 0 (top), 1..n (middle, carrying an implicit holomorphic-type index), n+1
// (bottom). Middle/top/bottom components of a tractor slot carry weight
// offsets relative to the field's nominal weight.

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "cr/diffop.hpp"
#include "cr/model.hpp"

namespace cr {

enum class IndexKind : uint8_t {
  HolUp,
  HolDown,
  AHolUp,
  AHolDown,
  TracUp,
  TracDown,
  ATracUp,
  ATracDown,
};

inline bool is_tractor(IndexKind k) { return k >= IndexKind::TracUp; }
inline bool is_up(IndexKind k) {
  return k == IndexKind::HolUp || k == IndexKind::AHolUp ||
         k == IndexKind::TracUp || k == IndexKind::ATracUp;
}
inline bool is_barred(IndexKind k) {
  return k == IndexKind::AHolUp || k == IndexKind::AHolDown ||
         k == IndexKind::ATracUp || k == IndexKind::ATracDown;
}
inline IndexKind conj_kind(IndexKind k) {
  switch (k) {
    case IndexKind::HolUp: return IndexKind::AHolUp;
    case IndexKind::HolDown: return IndexKind::AHolDown;
    case IndexKind::AHolUp: return IndexKind::HolUp;
    case IndexKind::AHolDown: return IndexKind::HolDown;
    case IndexKind::TracUp: return IndexKind::ATracUp;
    case IndexKind::TracDown: return IndexKind::ATracDown;
    case IndexKind::ATracUp: return IndexKind::TracUp;
    case IndexKind::ATracDown: return IndexKind::TracDown;
  }
  throw std::logic_error("bad kind");
}
// Raising (for down slots) / lowering (for up slots) with the diagonal
// metric: flips variance and barredness.
inline IndexKind raised_kind(IndexKind k) {
  switch (k) {
    case IndexKind::HolUp: return IndexKind::AHolDown;
    case IndexKind::HolDown: return IndexKind::AHolUp;
    case IndexKind::AHolUp: return IndexKind::HolDown;
    case IndexKind::AHolDown: return IndexKind::HolUp;
    case IndexKind::TracUp: return IndexKind::ATracDown;
    case IndexKind::TracDown: return IndexKind::ATracUp;
    case IndexKind::ATracUp: return IndexKind::TracDown;
    case IndexKind::ATracDown: return IndexKind::TracUp;
  }
  throw std::logic_error("bad kind");
}
inline bool dual_kinds(IndexKind a, IndexKind b) {
  return (is_tractor(a) == is_tractor(b)) && (is_barred(a) == is_barred(b)) &&
         (is_up(a) != is_up(b));
}

inline int slot_range(IndexKind k, int n) {
  return is_tractor(k) ? n + 2 : n;
}

// Weight offset of a tractor slot value relative to the nominal weight.
inline Weight tractor_offset(IndexKind k, int value, int n) {
  bool bot = value == n + 1;
  bool top_or_mid = !bot;
  switch (k) {
    case IndexKind::TracDown:
      return top_or_mid ? Weight(1, 0) : Weight(0, -1);
    case IndexKind::ATracDown:
      return top_or_mid ? Weight(0, 1) : Weight(-1, 0);
    case IndexKind::TracUp:
      return top_or_mid ? Weight(-1, 0) : Weight(0, 1);
    case IndexKind::ATracUp:
      return top_or_mid ? Weight(0, -1) : Weight(1, 0);
    default:
      return Weight(0, 0);
  }
}

// Effective holomorphic-type kind carried by a middle tractor value.
inline IndexKind mid_kind(IndexKind k) {
  switch (k) {
    case IndexKind::TracDown: return IndexKind::HolDown;
    case IndexKind::ATracDown: return IndexKind::AHolDown;
    case IndexKind::TracUp: return IndexKind::HolUp;
    case IndexKind::ATracUp: return IndexKind::AHolUp;
    default: throw std::logic_error("mid_kind of non-tractor slot");
  }
}

template <class C>
struct CompOps;

template <>
struct CompOps<Poly> {
  static Poly zero(const Model& m) { return Poly(m.table); }
  static Poly mul(const Poly& p, const Poly& x) { return p * x; }
  static Poly conj(const Poly& x) { return x.conj(); }
};

template <>
struct CompOps<DiffOp> {
  static DiffOp zero(const Model& m) { return DiffOp(m.table); }
  static DiffOp mul(const Poly& p, const DiffOp& x) { return x.left_mul(p); }
  static DiffOp conj(const DiffOp& x) { return x.conjugated(); }
};

template <class C>
class FieldT {
 public:
  using Key = std::vector<int>;

  FieldT() = default;
  FieldT(ModelPtr model, Weight weight, std::vector<IndexKind> sig = {})
      : model_(std::move(model)), weight_(weight), sig_(std::move(sig)) {}

  const ModelPtr& model() const { return model_; }
  const Weight& weight() const { return weight_; }
  const std::vector<IndexKind>& sig() const { return sig_; }
  int rank() const { return static_cast<int>(sig_.size()); }
  const std::map<Key, C>& comps() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }
  bool is_scalar() const { return sig_.empty(); }

  C get(const Key& k) const {
    auto it = comps_.find(k);
    return it == comps_.end() ? CompOps<C>::zero(*model_) : it->second;
  }
  const C& scalar_value() const {
    static const C zero{};
    if (!is_scalar()) throw std::domain_error("field is not scalar");
    if (comps_.empty()) {
      static thread_local C z;
      z = CompOps<C>::zero(*model_);
      return z;
    }
    return comps_.begin()->second;
  }

  void add_comp(const Key& k, const C& v) {
    if (v.is_zero()) return;
    if (static_cast<int>(k.size()) != rank())
      throw std::invalid_argument("component key arity mismatch");
    auto it = comps_.find(k);
    if (it == comps_.end()) {
      comps_.emplace(k, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }
  void set_comp(const Key& k, const C& v) {
    comps_.erase(k);
    add_comp(k, v);
  }

  // True weight of the component at key k (nominal + tractor offsets).
  Weight component_weight(const Key& k) const {
    Weight w = weight_;
    for (int i = 0; i < rank(); ++i)
      if (is_tractor(sig_[i])) w = w + tractor_offset(sig_[i], k[i], model_->n());
    return w;
  }

  FieldT operator-() const {
    FieldT r(model_, weight_, sig_);
    for (auto& [k, v] : comps_) r.comps_.emplace(k, -v);
    return r;
  }
  FieldT& operator+=(const FieldT& o) {
    require_shape(o);
    for (auto& [k, v] : o.comps_) add_comp(k, v);
    return *this;
  }
  FieldT& operator-=(const FieldT& o) {
    require_shape(o);
    for (auto& [k, v] : o.comps_) add_comp(k, -v);
    return *this;
  }
  FieldT operator+(const FieldT& o) const {
    FieldT r(*this);
    return r += o;
  }
  FieldT operator-(const FieldT& o) const {
    FieldT r(*this);
    return r -= o;
  }
  FieldT operator*(const Scalar& s) const {
    FieldT r(model_, weight_, sig_);
    if (s.is_zero()) return r;
    for (auto& [k, v] : comps_) r.comps_.emplace(k, v * s);
    return r;
  }
  FieldT mul_poly(const Poly& p) const {
    FieldT r(model_, weight_, sig_);
    for (auto& [k, v] : comps_) r.add_comp(k, CompOps<C>::mul(p, v));
    return r;
  }

  bool operator==(const FieldT& o) const {
    return weight_ == o.weight_ && sig_ == o.sig_ && comps_ == o.comps_;
  }
  bool operator!=(const FieldT& o) const { return !(*this == o); }

  FieldT conj() const {
    std::vector<IndexKind> s2;
    for (IndexKind k : sig_) s2.push_back(conj_kind(k));
    FieldT r(model_, Weight(weight_.wp, weight_.w), s2);
    for (auto& [k, v] : comps_) r.add_comp(k, CompOps<C>::conj(v));
    return r;
  }

  // Insert the other field's slots after this field's slots; components
  // multiply. Only meaningful when at most one factor is operator-valued
  // (polynomial coefficients commute).
  FieldT tensor(const FieldT<Poly>& o) const {
    std::vector<IndexKind> s2 = sig_;
    s2.insert(s2.end(), o.sig().begin(), o.sig().end());
    FieldT r(model_, weight_ + o.weight(), s2);
    for (auto& [k1, v1] : comps_)
      for (auto& [k2, v2] : o.comps()) {
        Key k(k1);
        k.insert(k.end(), k2.begin(), k2.end());
        r.add_comp(k, CompOps<C>::mul(v2, v1));
      }
    return r;
  }

  // Contract two dual slots (plain sum over matching values; for tractor
  // pairs the pairing is the split one used throughout).
  FieldT contract(int i, int j) const {
    if (i == j || i >= rank() || j >= rank())
      throw std::invalid_argument("bad contraction slots");
    if (!dual_kinds(sig_[i], sig_[j]))
      throw std::invalid_argument("contracting non-dual slots");
    if (i > j) std::swap(i, j);
    std::vector<IndexKind> s2;
    for (int s = 0; s < rank(); ++s)
      if (s != i && s != j) s2.push_back(sig_[s]);
    FieldT r(model_, weight_, s2);
    for (auto& [k, v] : comps_) {
      if (k[i] != k[j]) continue;
      Key k2;
      for (int s = 0; s < rank(); ++s)
        if (s != i && s != j) k2.push_back(k[s]);
      r.add_comp(k2, v);
    }
    return r;
  }

  // Move a slot to a new position (components are unchanged up to key
  // permutation).
  FieldT move_slot(int from, int to) const {
    std::vector<int> perm;
    for (int s = 0; s < rank(); ++s)
      if (s != from) perm.push_back(s);
    perm.insert(perm.begin() + to, from);
    std::vector<IndexKind> s2;
    for (int s : perm) s2.push_back(sig_[s]);
    FieldT r(model_, weight_, s2);
    for (auto& [k, v] : comps_) {
      Key k2;
      for (int s : perm) k2.push_back(k[s]);
      r.add_comp(k2, v);
    }
    return r;
  }

  // Raise (down slot) or lower (up slot) slot i with the diagonal metric.
  // Holomorphic-type slots shift the weight by -(1,1) on raising and +(1,1)
  // on lowering; tractor slots keep the nominal weight.
  FieldT raise_lower(int i) const {
    if (i >= rank()) throw std::invalid_argument("bad slot");
    IndexKind k0 = sig_[i];
    std::vector<IndexKind> s2 = sig_;
    s2[i] = raised_kind(k0);
    Weight w2 = weight_;
    int n = model_->n();
    if (!is_tractor(k0))
      w2 = is_up(k0) ? w2 + Weight(1, 1) : w2 - Weight(1, 1);
    FieldT r(model_, w2, s2);
    for (auto& [k, v] : comps_) {
      Key k2(k);
      int eps;
      if (is_tractor(k0)) {
        // top <-> bottom swap, eps on the middle block.
        if (k[i] == 0) {
          k2[i] = n + 1;
          eps = 1;
        } else if (k[i] == n + 1) {
          k2[i] = 0;
          eps = 1;
        } else {
          eps = model_->sig.eps[k[i] - 1];
        }
      } else {
        eps = model_->sig.eps[k[i]];
      }
      r.add_comp(k2, eps == 1 ? v : -v);
    }
    return r;
  }

  // All index assignments for this signature.
  std::vector<Key> all_keys() const {
    std::vector<Key> out;
    Key k(rank(), 0);
    int n = model_->n();
    std::function<void(int)> rec = [&](int s) {
      if (s == rank()) {
        out.push_back(k);
        return;
      }
      for (int v = 0; v < slot_range(sig_[s], n); ++v) {
        k[s] = v;
        rec(s + 1);
      }
    };
    rec(0);
    return out;
  }

 private:
  void require_shape(const FieldT& o) const {
    if (!(weight_ == o.weight_) || sig_ != o.sig_)
      throw std::invalid_argument("field shape mismatch");
  }

  ModelPtr model_;
  Weight weight_;
  std::vector<IndexKind> sig_;
  std::map<Key, C> comps_;
};

using Field = FieldT<Poly>;
using OpField = FieldT<DiffOp>;

template <class C>
FieldT<C> operator*(const Scalar& s, const FieldT<C>& f) {
  return f * s;
}

// Scalar field of given weight from a single component.
template <class C>
FieldT<C> scalar_field(const ModelPtr& m, const Weight& w, const C& v) {
  FieldT<C> f(m, w);
  f.add_comp({}, v);
  return f;
}

}  // namespace cr
