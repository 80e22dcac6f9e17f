#pragma once

#include <vector>

#include "wightman/tables.hpp"

// Moment <-> cumulant transform, realized as the truncated bivariate formal
// power series identity Z_chi = ln Z_P with the exponential normalization
// Z(l,lb) = sum c_mn l^m/m! lb^n/n!.  Implemented by direct series
// composition on graded coefficients; the set-partition route lives in
// wick_free and cross-checks this module.

namespace wightman {

class BivariateSeries {
 public:
  explicit BivariateSeries(int max_order) : n_(max_order), c_((max_order + 1) * (max_order + 1), Complex(0.0)) {}

  int max_order() const { return n_; }

  Complex& at(int m, int n) { return c_[idx(m, n)]; }
  Complex at(int m, int n) const { return c_[idx(m, n)]; }

  BivariateSeries& operator+=(const BivariateSeries& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  BivariateSeries& operator*=(Complex s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  // EGF product truncated to total order N: (A*B)_mn = sum C(m,i) C(n,j) A_ij B_(m-i)(n-j).
  friend BivariateSeries mul(const BivariateSeries& a, const BivariateSeries& b) {
    const int N = a.n_;
    if (b.n_ != N) throw std::invalid_argument("series order mismatch");
    BivariateSeries out(N);
    for (int m = 0; m <= N; ++m)
      for (int n = 0; m + n <= N; ++n) {
        Complex acc(0.0);
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j <= n; ++j) {
            const Complex aij = a.at(i, j);
            if (aij == 0.0) continue;
            acc += static_cast<double>(binomial(m, i)) * static_cast<double>(binomial(n, j)) * aij *
                   b.at(m - i, n - j);
          }
        out.at(m, n) = acc;
      }
    return out;
  }

 private:
  std::size_t idx(int m, int n) const {
    if (m < 0 || n < 0 || m + n > n_) throw std::invalid_argument("series index beyond order");
    return static_cast<std::size_t>(m) * (n_ + 1) + n;
  }

  int n_;
  std::vector<Complex> c_;
};

namespace detail {

// ln(1 + R) = sum_{k>=1} (-1)^{k+1} R^k / k; R has no constant term, so the
// sum terminates at k = N.
inline BivariateSeries series_log1p(const BivariateSeries& r) {
  const int N = r.max_order();
  BivariateSeries acc(N);
  BivariateSeries power = r;
  for (int k = 1; k <= N; ++k) {
    const double coeff = (k % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(k);
    BivariateSeries term = power;
    term *= Complex(coeff);
    acc += term;
    if (k < N) power = mul(power, r);
  }
  return acc;
}

// exp(Q) - 1 for Q with no constant term.
inline BivariateSeries series_expm1(const BivariateSeries& q) {
  const int N = q.max_order();
  BivariateSeries acc(N);
  BivariateSeries power = q;
  double factorial = 1.0;
  for (int k = 1; k <= N; ++k) {
    factorial *= k;
    BivariateSeries term = power;
    term *= Complex(1.0 / factorial);
    acc += term;
    if (k < N) power = mul(power, q);
  }
  return acc;
}

}  // namespace detail

inline ChiTable xi_to_chi(const XiTable& xi) {
  const int N = xi.max_order();
  if (std::abs(xi.at(0, 0) - Complex(1.0)) > 1e-9)
    throw normalization_error("xi_to_chi requires xi_00 = 1");
  BivariateSeries r(N);
  for (const auto& [mn, v] : xi.entries()) r.at(mn.first, mn.second) = v;
  r.at(0, 0) = 0.0;  // R = Z_P - 1
  const BivariateSeries zchi = detail::series_log1p(r);
  ChiTable chi(N);
  chi.set(0, 0, Complex(1.0));  // convention: chi_00 = xi_00 = 1
  for (int m = 0; m <= N; ++m)
    for (int n = 0; m + n <= N; ++n)
      if (m + n > 0) chi.set(m, n, zchi.at(m, n));
  return chi;
}

inline XiTable chi_to_xi(const ChiTable& chi) {
  const int N = chi.max_order();
  if (std::abs(chi.at(0, 0) - Complex(1.0)) > 1e-9)
    throw normalization_error("chi_to_xi requires chi_00 = 1");
  BivariateSeries q(N);
  for (const auto& [mn, v] : chi.entries()) q.at(mn.first, mn.second) = v;
  q.at(0, 0) = 0.0;  // chi_00 is a convention, not part of Z_chi
  const BivariateSeries zp = detail::series_expm1(q);
  XiTable xi(N);
  xi.set(0, 0, Complex(1.0));
  for (int m = 0; m <= N; ++m)
    for (int n = 0; m + n <= N; ++n)
      if (m + n > 0) xi.set(m, n, zp.at(m, n));
  return xi;
}

}  // namespace wightman
