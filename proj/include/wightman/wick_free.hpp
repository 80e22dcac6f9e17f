#pragma once

#include <functional>
#include <mutex>
#include <span>

#include "wightman/states.hpp"
#include "wightman/time_label.hpp"

// Free-oscillator Wightman correlators.  Two independent symbolic routes:
//
//  * wightman_free      — generalized Wick theorem: sum over set partitions of
//                         products of cumulants C_n = sum_m chi_{m(n-m)} F_{n(n-m)}
//                         + delta_{n,2} f_{+-}.
//  * wightman_free_xi   — algorithmic normal ordering of
//                         prod_j (a e^{-iw t_j} + a^dag e^{+iw t_j}), weighting
//                         the monomial (a^dag)^m a^n by xi_mn.
//
// A cumulant block's arguments keep their left-to-right Wightman order; that
// is what makes the bi-dentate direction rule well defined for the
// non-symmetric f_{+-} part of C_2.

namespace wightman {

struct OperatorSlot {
  TimeLabel time;
};

using SetPartition = std::vector<std::vector<int>>;  // blocks of 0-based indices

namespace detail {

inline void gen_partitions(std::vector<int>& assignment, int i, int nblocks, std::vector<SetPartition>& out) {
  const int n = static_cast<int>(assignment.size());
  if (i == n) {
    SetPartition part(nblocks);
    for (int k = 0; k < n; ++k) part[assignment[k]].push_back(k);
    out.push_back(std::move(part));
    return;
  }
  // Restricted growth: element i may join blocks 0..nblocks (opening a new one).
  for (int b = 0; b <= nblocks; ++b) {
    assignment[i] = b;
    gen_partitions(assignment, i + 1, std::max(nblocks, b + 1), out);
  }
}

// Enumerates partitions whose block sizes all lie in `allowed_sizes` (bitmask
// over sizes 1..n).  Blocks are emitted ordered by their minima, elements
// ascending; each partition appears exactly once.
inline void gen_partitions_filtered(const std::vector<int>& remaining, unsigned allowed_sizes,
                                    SetPartition& current, const std::function<void(const SetPartition&)>& emit) {
  if (remaining.empty()) {
    emit(current);
    return;
  }
  const int pivot = remaining[0];
  const int m = static_cast<int>(remaining.size()) - 1;
  std::vector<int> comb;  // indices into remaining[1..], increasing
  for (int extra = 0; extra <= m; ++extra) {
    if (!(allowed_sizes & (1u << (extra + 1)))) continue;
    std::function<void(int)> choose = [&](int start) {
      if (static_cast<int>(comb.size()) == extra) {
        std::vector<int> block{pivot};
        for (int k : comb) block.push_back(remaining[k + 1]);
        std::vector<int> next;
        next.reserve(m - extra);
        std::size_t ci = 0;
        for (int r = 0; r < m; ++r) {
          if (ci < comb.size() && comb[ci] == r) {
            ++ci;
            continue;
          }
          next.push_back(remaining[r + 1]);
        }
        current.push_back(std::move(block));
        gen_partitions_filtered(next, allowed_sizes, current, emit);
        current.pop_back();
        return;
      }
      for (int k = start; k <= m - (extra - static_cast<int>(comb.size())); ++k) {
        comb.push_back(k);
        choose(k + 1);
        comb.pop_back();
      }
    };
    choose(0);
  }
}

}  // namespace detail

// All set partitions of an n-element set; count = Bell(n).  Memoized per n.
inline const std::vector<SetPartition>& set_partitions(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("set_partitions: n must be in 1..10");
  static std::map<int, std::vector<SetPartition>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<SetPartition> out;
    std::vector<int> assignment(n, 0);
    detail::gen_partitions(assignment, 0, 0, out);
    it = cache.emplace(n, std::move(out)).first;
  }
  return it->second;
}

// C_n = sum_{m=0}^{n} chi_{m(n-m)} F_{n(n-m)} + delta_{n,2} f_{+-}.
inline ExpSum cumulant_expsum(int n, const ChiTable& chi) {
  if (n < 1) throw std::invalid_argument("cumulant order must be >= 1");
  if (chi.max_order() < n) throw std::invalid_argument("chi table order insufficient for cumulant");
  ExpSum c(static_cast<std::size_t>(n));
  for (int m = 0; m <= n; ++m) {
    const Complex w = chi.at(m, n - m);
    if (w == 0.0) continue;
    c += w * make_F(static_cast<std::size_t>(n), static_cast<std::size_t>(n - m));
  }
  if (n == 2) c += make_f("+-");
  return c;
}

// Partition-sum route of the generalized Wick theorem.
inline ExpSum wightman_free(int n, const ChiTable& chi) {
  if (n < 1) throw std::invalid_argument("wightman_free: need at least one operator");
  std::vector<ExpSum> cumulants(n + 1);
  unsigned allowed = 0;
  for (int b = 1; b <= n; ++b) {
    cumulants[b] = cumulant_expsum(b, chi);
    if (!cumulants[b].empty()) allowed |= (1u << b);
  }
  ExpSum total(static_cast<std::size_t>(n));
  std::string key(static_cast<std::size_t>(n), '-');
  std::function<void(const SetPartition&, std::size_t, Complex)> expand = [&](const SetPartition& part,
                                                                              std::size_t bi, Complex c) {
    if (bi == part.size()) {
      total.add_term(SignVector(key), c);
      return;
    }
    const auto& block = part[bi];
    for (const auto& [sv, bc] : cumulants[block.size()].terms()) {
      for (std::size_t i = 0; i < block.size(); ++i) key[block[i]] = sv.packed()[i];
      expand(part, bi + 1, c * bc);
    }
  };
  std::vector<int> elements(n);
  for (int i = 0; i < n; ++i) elements[i] = i;
  SetPartition current;
  detail::gen_partitions_filtered(elements, allowed, current,
                                  [&](const SetPartition& part) { expand(part, 0, Complex(1.0)); });
  return total;
}

inline ExpSum wightman_free(std::span<const OperatorSlot> slots, const ChiTable& chi) {
  return wightman_free(static_cast<int>(slots.size()), chi);
}

// Normal-ordering route: expand the operator word over sign choices
// (a -> '+', a^dag -> '-'), normal-order with a (a^dag)^m = (a^dag)^m a +
// m (a^dag)^{m-1}, and weight (a^dag)^m a^k by xi_mk.
inline ExpSum wightman_free_xi(int n, const XiTable& xi) {
  if (n < 1) throw std::invalid_argument("wightman_free_xi: need at least one operator");
  if (xi.max_order() < n) throw std::invalid_argument("xi table order insufficient");
  ExpSum total(static_cast<std::size_t>(n));
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    // bit j set -> annihilation operator at slot j (sign '+').
    std::map<std::pair<int, int>, double> word;  // (m,k) -> coeff of (a^dag)^m a^k
    word[{0, 0}] = 1.0;
    std::string key(static_cast<std::size_t>(n), '-');
    for (int j = 0; j < n; ++j) {
      const bool is_a = (mask >> j) & 1u;
      if (is_a) key[j] = '+';
      std::map<std::pair<int, int>, double> next;
      for (const auto& [mk, c] : word) {
        const auto [m, k] = mk;
        if (is_a) {
          next[{m, k + 1}] += c;
        } else {
          next[{m + 1, k}] += c;
          if (k > 0) next[{m, k - 1}] += c * k;
        }
      }
      word = std::move(next);
    }
    Complex coeff(0.0);
    for (const auto& [mk, c] : word) coeff += c * xi.at(mk.first, mk.second);
    if (coeff != 0.0) total.add_term(SignVector(key), coeff);
  }
  return total;
}

inline ExpSum wightman_free_xi(std::span<const OperatorSlot> slots, const XiTable& xi) {
  return wightman_free_xi(static_cast<int>(slots.size()), xi);
}

}  // namespace wightman
