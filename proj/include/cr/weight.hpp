#pragma once

// Density weights (w, w') and the Levi-form signature.

#include <stdexcept>
#include <string>
#include <vector>

#include "cr/scalar.hpp"

namespace cr {

struct Weight {
  Rational w = 0;
  Rational wp = 0;

  Weight() = default;
  Weight(Rational a, Rational b) : w(std::move(a)), wp(std::move(b)) {
    Rational d = w - wp;
    if (d.get_den() != 1)
      throw std::invalid_argument("weight difference w - w' must be integral");
  }

  Weight operator+(const Weight& o) const { return Weight(w + o.w, wp + o.wp); }
  Weight operator-(const Weight& o) const { return Weight(w - o.w, wp - o.wp); }
  bool operator==(const Weight& o) const { return w == o.w && wp == o.wp; }
  bool operator!=(const Weight& o) const { return !(*this == o); }
  std::string to_string() const {
    return "(" + cr::to_string(w) + "," + cr::to_string(wp) + ")";
  }
};

struct Signature {
  int n = 1;
  std::vector<int> eps;  // entries +1 / -1, length n

  Signature() : eps{1} {}
  explicit Signature(int n_) : n(n_), eps(n_, 1) {}
  Signature(int n_, std::vector<int> e) : n(n_), eps(std::move(e)) {
    if (static_cast<int>(eps.size()) != n)
      throw std::invalid_argument("signature length mismatch");
    for (int v : eps)
      if (v != 1 && v != -1)
        throw std::invalid_argument("signature entries must be +-1");
  }
  bool operator==(const Signature& o) const { return n == o.n && eps == o.eps; }
};

}  // namespace cr
