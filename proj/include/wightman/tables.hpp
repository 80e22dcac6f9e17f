#pragma once

#include <map>
#include <utility>

#include "wightman/core.hpp"

// Triangular coefficient tables (m,n) -> complex with m+n <= max_order.
// XiTable holds normal-ordered moments xi_mn = <(a^dag)^m a^n>; ChiTable holds
// the cumulant coefficients chi_mn extracted from Z_chi = ln Z_P.  Both obey
// the conjugate symmetry c_nm = conj(c_mn) for physical states.

namespace wightman {

class CoeffTable {
 public:
  CoeffTable() = default;
  explicit CoeffTable(int max_order) : max_order_(max_order) {
    if (max_order < 0) throw std::invalid_argument("max_order must be nonnegative");
  }

  int max_order() const { return max_order_; }

  bool in_range(int m, int n) const { return m >= 0 && n >= 0 && m + n <= max_order_; }

  Complex at(int m, int n) const {
    if (!in_range(m, n)) throw std::invalid_argument("table index beyond max_order");
    auto it = entries_.find({m, n});
    return it == entries_.end() ? Complex(0.0) : it->second;
  }

  void set(int m, int n, Complex v) {
    if (!in_range(m, n)) throw std::invalid_argument("table index beyond max_order");
    if (v == 0.0)
      entries_.erase({m, n});
    else
      entries_[{m, n}] = v;
  }

  // Sets (m,n) and its conjugate partner in one go.
  void set_hermitian(int m, int n, Complex v) {
    set(m, n, v);
    if (m != n) set(n, m, std::conj(v));
  }

  const std::map<std::pair<int, int>, Complex>& entries() const { return entries_; }

  double hermiticity_defect() const {
    double worst = 0.0;
    for (int m = 0; m <= max_order_; ++m)
      for (int n = 0; m + n <= max_order_; ++n)
        worst = std::max(worst, std::abs(at(m, n) - std::conj(at(n, m))));
    return worst;
  }

 private:
  int max_order_ = 0;
  std::map<std::pair<int, int>, Complex> entries_;
};

struct XiTable : CoeffTable {
  using CoeffTable::CoeffTable;
};

struct ChiTable : CoeffTable {
  using CoeffTable::CoeffTable;
};

}  // namespace wightman
