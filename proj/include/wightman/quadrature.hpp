#pragma once

#include <functional>
#include <mutex>
#include <vector>

#include "wightman/core.hpp"

// Gauss-Legendre quadrature with adaptive node doubling, plus the two
// product-region shapes the perturbative expansion needs: a tensor box and a
// triangle cut out of a square by a single theta constraint.  Theta
// boundaries are never sampled across; the triangle is mapped to the unit
// square so every cell is smooth.

namespace wightman {

struct QuadratureSpec {
  int base_nodes = 32;
  double tol = 1e-9;
  int max_doublings = 6;
};

struct QuadResult {
  Complex value{};
  double last_delta = 0.0;  // |change| at the final doubling
  int nodes = 0;            // 1-d node count of the accepted rule
};

namespace quad_detail {

struct Rule {
  std::vector<double> x;  // nodes on [-1,1]
  std::vector<double> w;
};

// Newton iteration on the Legendre recurrence.
inline Rule compute_rule(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

inline const Rule& rule(int n) {
  static std::map<int, Rule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

template <class F>
Complex sum_1d(const F& f, double a, double b, int n) {
  const Rule& r = rule(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  Complex acc(0.0);
  for (int i = 0; i < n; ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return half * acc;
}

template <class F>
Complex sum_box2(const F& f, double a1, double b1, double a2, double b2, int n) {
  const Rule& r = rule(n);
  const double m1 = 0.5 * (a1 + b1), h1 = 0.5 * (b1 - a1);
  const double m2 = 0.5 * (a2 + b2), h2 = 0.5 * (b2 - a2);
  Complex acc(0.0);
  for (int i = 0; i < n; ++i) {
    const double u = m1 + h1 * r.x[i];
    Complex inner(0.0);
    for (int j = 0; j < n; ++j) inner += r.w[j] * f(u, m2 + h2 * r.x[j]);
    acc += r.w[i] * inner;
  }
  return h1 * h2 * acc;
}

// Triangle {(u,v) in [a,b]^2 : u > v} (or u < v), mapped smoothly onto the
// unit square: v = a + s(b-a), u = v + r(b-v).
template <class F>
Complex sum_triangle(const F& f, double a, double b, bool first_greater, int n) {
  const Rule& rl = rule(n);
  Complex acc(0.0);
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * (1.0 + rl.x[i]);
    const double v = a + s * (b - a);
    Complex inner(0.0);
    for (int j = 0; j < n; ++j) {
      const double r = 0.5 * (1.0 + rl.x[j]);
      const double u = v + r * (b - v);
      inner += rl.w[j] * (first_greater ? f(u, v) : f(v, u)) * (b - v);
    }
    acc += rl.w[i] * inner * (b - a);
  }
  return 0.25 * acc;  // two half-interval Jacobians from the [-1,1] maps
}

template <class Eval>
QuadResult adapt(const Eval& eval, const QuadratureSpec& spec) {
  int n = spec.base_nodes;
  Complex prev = eval(n);
  for (int k = 0; k < spec.max_doublings; ++k) {
    n *= 2;
    const Complex cur = eval(n);
    const double delta = std::abs(cur - prev);
    if (delta <= spec.tol * std::max(1.0, std::abs(cur))) return {cur, delta, n};
    prev = cur;
  }
  throw convergence_error("quadrature did not stabilize under node doubling");
}

}  // namespace quad_detail

template <class F>
QuadResult integrate_1d(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (a == b) return {Complex(0.0), 0.0, 0};
  return quad_detail::adapt([&](int n) { return quad_detail::sum_1d(f, a, b, n); }, spec);
}

template <class F>
QuadResult integrate_box2(const F& f, double a1, double b1, double a2, double b2,
                          const QuadratureSpec& spec = {}) {
  if (a1 == b1 || a2 == b2) return {Complex(0.0), 0.0, 0};
  return quad_detail::adapt([&](int n) { return quad_detail::sum_box2(f, a1, b1, a2, b2, n); }, spec);
}

template <class F>
QuadResult integrate_triangle(const F& f, double a, double b, bool first_greater,
                              const QuadratureSpec& spec = {}) {
  if (a == b) return {Complex(0.0), 0.0, 0};
  return quad_detail::adapt([&](int n) { return quad_detail::sum_triangle(f, a, b, first_greater, n); },
                            spec);
}

// theta constraint: coordinate `greater` exceeds coordinate `lesser`.
struct ThetaConstraint {
  int greater = 0;
  int lesser = 1;
};

// Generic entry point for product regions of dimension <= 2 with at most one
// theta constraint; regions are [lo,hi] intervals per coordinate.
inline QuadResult integrate(const std::vector<std::pair<double, double>>& region,
                            const std::vector<ThetaConstraint>& thetas,
                            const std::function<Complex(const std::vector<double>&)>& f,
                            const QuadratureSpec& spec = {}) {
  switch (region.size()) {
    case 0:
      return {f({}), 0.0, 0};
    case 1: {
      if (!thetas.empty()) throw std::invalid_argument("theta constraint needs two coordinates");
      return integrate_1d([&](double u) { return f({u}); }, region[0].first, region[0].second, spec);
    }
    case 2: {
      auto g = [&](double u, double v) { return f({u, v}); };
      if (thetas.empty())
        return integrate_box2(g, region[0].first, region[0].second, region[1].first, region[1].second, spec);
      if (thetas.size() > 1) throw std::invalid_argument("at most one theta constraint is supported");
      if (region[0] != region[1])
        throw std::invalid_argument("theta constraints require matching intervals");
      const bool first_greater = thetas[0].greater == 0;
      return integrate_triangle(g, region[0].first, region[0].second, first_greater, spec);
    }
    default:
      throw std::invalid_argument("regions beyond two dimensions are not supported");
  }
}

}  // namespace wightman
