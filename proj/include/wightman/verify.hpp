#pragma once

#include <chrono>
#include <cstdint>
#include <sstream>

#include "wightman/diagram.hpp"
#include "wightman/fock_oracle.hpp"
#include "wightman/parallel.hpp"
#include "wightman/perturbation.hpp"

// End-to-end verification suites.  Each criterion pins its tolerance in code
// and reports one pass/fail line; the randomized ones are reproducible from a
// seed.

namespace wightman {
namespace verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
  }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Complex complex_in_disk(double r) {
    while (true) {
      const double re = uniform(-r, r), im = uniform(-r, r);
      if (re * re + im * im <= r * r) return {re, im};
    }
  }

 private:
  std::uint64_t state_;
};

inline XiTable random_xi_table(Rng& rng, int order, double scale) {
  XiTable t(order);
  t.set(0, 0, 1.0);
  for (int m = 0; m <= order; ++m)
    for (int n = m; m + n <= order; ++n) {
      if (m == 0 && n == 0) continue;
      if (m == n)
        t.set(m, n, Complex(rng.uniform(-scale, scale), 0.0));
      else
        t.set_hermitian(m, n, rng.complex_in_disk(scale));
    }
  return t;
}

inline StateSpec random_state(Rng& rng) {
  switch (rng.uniform_int(0, 3)) {
    case 0:
      return StateSpec::vacuum();
    case 1:
      return StateSpec::coherent(rng.complex_in_disk(1.5));
    case 2:
      return StateSpec::thermal(rng.uniform(0.5, 2.5));
    default: {
      const double w = rng.uniform(0.2, 0.8);
      return StateSpec::mixture({{w, StateSpec::coherent(rng.complex_in_disk(1.0))},
                                 {1.0 - w, StateSpec::thermal(rng.uniform(0.6, 2.0))}});
    }
  }
}

template <class F>
CriterionResult timed(int id, const std::string& name, F&& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace detail

// 1. Closed-form cumulant tables match the numeric generating-function route
//    to 1e-10 for m+n <= 6 with auto-selected truncation.
inline CriterionResult criterion_closed_form_cumulants(std::uint64_t) {
  return detail::timed(1, "closed-form cumulants vs numeric route", [&](CriterionResult& r) {
    PhysicalParams p;
    const std::vector<StateSpec> states = {
        StateSpec::vacuum(),          StateSpec::coherent(Complex(0.5, 0.0)),
        StateSpec::coherent(Complex(0.9, -1.2)),  // |phi| = 1.5
        StateSpec::thermal(0.5),      StateSpec::thermal(1.0),
        StateSpec::thermal(2.0)};
    double worst = 0.0;
    for (const auto& s : states) {
      const ChiTable numeric = fock::chi_numeric(s, 6, p);
      for (int m = 0; m <= 6; ++m)
        for (int n = 0; m + n <= 6; ++n)
          worst = std::max(worst, std::abs(*chi_closed(s, m, n, p) - numeric.at(m, n)));
    }
    r.pass = worst < 1e-10;
    r.detail = "max |closed - numeric| = " + detail::fmt(worst) + " (tol 1e-10)";
  });
}

// 2. The closed-form moment/cumulant identities and their inversions hold on
//    100 random hermitian xi tables to relative 1e-12.
inline CriterionResult criterion_moment_cumulant_identities(std::uint64_t seed) {
  return detail::timed(2, "moment-cumulant identities", [&](CriterionResult& r) {
    detail::Rng rng(seed ^ 0x1234);
    double worst = 0.0;
    auto check = [&worst](Complex got, Complex expected) {
      worst = std::max(worst, std::abs(got - expected) / std::max(1.0, std::abs(expected)));
    };
    for (int rep = 0; rep < 100; ++rep) {
      const XiTable t = detail::random_xi_table(rng, 4, 0.6);
      const ChiTable chi = xi_to_chi(t);
      const Complex x01 = t.at(0, 1), x10 = t.at(1, 0), x02 = t.at(0, 2), x20 = t.at(2, 0);
      const Complex x11 = t.at(1, 1), x03 = t.at(0, 3), x12 = t.at(1, 2), x21 = t.at(2, 1);
      const Complex x04 = t.at(0, 4), x13 = t.at(1, 3), x22 = t.at(2, 2);
      check(chi.at(0, 0), Complex(1.0));
      check(chi.at(0, 1), x01);
      check(chi.at(0, 2), -x01 * x01 + x02);
      check(chi.at(1, 1), x11 - x01 * x10);
      check(chi.at(0, 3), 2.0 * x01 * x01 * x01 - 3.0 * x02 * x01 + x03);
      check(chi.at(1, 2), 2.0 * x10 * x01 * x01 - 2.0 * x11 * x01 - x02 * x10 + x12);
      check(chi.at(0, 4), -6.0 * x01 * x01 * x01 * x01 + 12.0 * x02 * x01 * x01 - 4.0 * x03 * x01 -
                              3.0 * x02 * x02 + x04);
      check(chi.at(1, 3), -6.0 * x10 * x01 * x01 * x01 + 6.0 * x11 * x01 * x01 + 6.0 * x02 * x10 * x01 -
                              3.0 * x12 * x01 - x03 * x10 - 3.0 * x02 * x11 + x13);
      check(chi.at(2, 2), -6.0 * x10 * x10 * x01 * x01 + 2.0 * x20 * x01 * x01 + 8.0 * x10 * x11 * x01 -
                              2.0 * x21 * x01 + 2.0 * x02 * x10 * x10 - 2.0 * x11 * x11 - 2.0 * x10 * x12 -
                              x02 * x20 + x22);
      // inversion list
      const XiTable back = chi_to_xi(chi);
      const Complex c01 = chi.at(0, 1), c10 = chi.at(1, 0), c02 = chi.at(0, 2), c20 = chi.at(2, 0);
      const Complex c11 = chi.at(1, 1), c03 = chi.at(0, 3), c12 = chi.at(1, 2), c21 = chi.at(2, 1);
      const Complex c04 = chi.at(0, 4), c13 = chi.at(1, 3), c22 = chi.at(2, 2);
      check(back.at(0, 1), c01);
      check(back.at(0, 2), c02 + c01 * c01);
      check(back.at(1, 1), c11 + c01 * c10);
      check(back.at(0, 3), c01 * c01 * c01 + 3.0 * c02 * c01 + c03);
      check(back.at(1, 2), c10 * c01 * c01 + 2.0 * c11 * c01 + c02 * c10 + c12);
      check(back.at(0, 4),
            c01 * c01 * c01 * c01 + 6.0 * c02 * c01 * c01 + 4.0 * c03 * c01 + 3.0 * c02 * c02 + c04);
      check(back.at(1, 3), c10 * c01 * c01 * c01 + 3.0 * c11 * c01 * c01 + 3.0 * c02 * c10 * c01 +
                               3.0 * c12 * c01 + c03 * c10 + 3.0 * c02 * c11 + c13);
      check(back.at(2, 2), c10 * c10 * c01 * c01 + c20 * c01 * c01 + 4.0 * c10 * c11 * c01 +
                               2.0 * c21 * c01 + c02 * c10 * c10 + 2.0 * c11 * c11 + 2.0 * c10 * c12 +
                               c02 * c20 + c22);
      // and the full round trips
      for (int m = 0; m <= 4; ++m)
        for (int n = 0; m + n <= 4; ++n) check(back.at(m, n), t.at(m, n));
    }
    r.pass = worst < 1e-12;
    r.detail = "max relative defect = " + detail::fmt(worst) + " over 100 tables (tol 1e-12)";
  });
}

// 3. Triple equivalence of the free-correlator routes: partition sum ==
//    normal ordering (symbolic, term-by-term) == fock oracle (numeric, rel
//    1e-8) for n <= 6 over randomized states and times.
inline CriterionResult criterion_triple_equivalence(std::uint64_t seed) {
  return detail::timed(3, "free-correlator triple equivalence", [&](CriterionResult& r) {
    detail::Rng rng(seed ^ 0x5678);
    PhysicalParams p;
    p.omega = 1.1;
    double worst_sym = 0.0, worst_num = 0.0;
    for (int trial = 0; trial < 24; ++trial) {
      const int n = rng.uniform_int(1, 6);
      const StateSpec state = detail::random_state(rng);
      const XiTable xi = xi_table(state, n, p);
      const ExpSum via_xi = wightman_free_xi(n, xi);
      const ExpSum via_chi = wightman_free(n, xi_to_chi(xi));
      double scale = 1.0;
      for (const auto& [sv, c] : via_xi.terms()) scale = std::max(scale, std::abs(c));
      const ExpSum diff = via_xi + (via_chi * Complex(-1.0));
      for (const auto& [sv, c] : diff.terms()) worst_sym = std::max(worst_sym, std::abs(c) / scale);

      std::vector<double> times(n);
      for (auto& t : times) t = rng.uniform(-5.0, 5.0);
      const Complex sym = eval_expsum(via_chi, times, p);
      const Complex num = fock::wightman_exact_free(state, times, p);
      worst_num = std::max(worst_num, std::abs(sym - num) / std::max(1.0, std::abs(num)));
    }
    r.pass = worst_sym < 1e-12 && worst_num < 1e-8;
    r.detail = "symbolic defect " + detail::fmt(worst_sym) + " (tol 1e-12), numeric defect " +
               detail::fmt(worst_num) + " (tol 1e-8)";
  });
}

// 4. Traditional Wick factorization for vacuum/thermal 4- and 6-point
//    correlators; the coherent deviation equals the C1-containing partition
//    terms.
inline CriterionResult criterion_wick_factorization(std::uint64_t seed) {
  return detail::timed(4, "Wick-factorization property", [&](CriterionResult& r) {
    detail::Rng rng(seed ^ 0x9abc);
    PhysicalParams p;
    double worst = 0.0;

    auto pair_sum = [&](const ExpSum& w2, const std::vector<double>& t) {
      // sum over perfect matchings of indices 0..n-1
      std::function<Complex(std::vector<int>)> rec = [&](std::vector<int> left) -> Complex {
        if (left.empty()) return Complex(1.0);
        Complex acc(0.0);
        const int a = left.front();
        for (std::size_t q = 1; q < left.size(); ++q) {
          const int b = left[q];
          std::vector<int> rest;
          for (std::size_t z = 1; z < left.size(); ++z)
            if (z != q) rest.push_back(left[z]);
          acc += eval_expsum(w2, {t[a], t[b]}, p) * rec(rest);
        }
        return acc;
      };
      std::vector<int> all(t.size());
      for (std::size_t q = 0; q < t.size(); ++q) all[q] = static_cast<int>(q);
      return rec(all);
    };

    for (int n : {4, 6}) {
      std::vector<double> t(n);
      for (auto& x : t) x = rng.uniform(-4.0, 4.0);
      for (const auto& state : {StateSpec::vacuum(), StateSpec::thermal(0.8)}) {
        const ChiTable chi = chi_table(state, n, p);
        const Complex full = eval_expsum(wightman_free(n, chi), t, p);
        const Complex pairs = pair_sum(cumulant_expsum(2, chi), t);
        worst = std::max(worst, std::abs(full - pairs) / std::max(1.0, std::abs(full)));
      }
      // coherent deviation = sum of partition terms containing C1 blocks
      const StateSpec coh = StateSpec::coherent(Complex(0.8, -0.5));
      const ChiTable chi = chi_table(coh, n, p);
      const Complex full = eval_expsum(wightman_free(n, chi), t, p);
      const Complex pairs = pair_sum(cumulant_expsum(2, chi), t);
      Complex c1_terms(0.0);
      std::vector<ExpSum> cum(n + 1);
      for (int b = 1; b <= n; ++b) cum[b] = cumulant_expsum(b, chi);
      for (const auto& part : set_partitions(n)) {
        bool has_singleton = false;
        for (const auto& block : part)
          if (block.size() == 1) has_singleton = true;
        if (!has_singleton) continue;
        Complex term(1.0);
        for (const auto& block : part) {
          std::vector<double> bt;
          for (int e : block) bt.push_back(t[e]);
          term *= eval_expsum(cum[block.size()], bt, p);
        }
        c1_terms += term;
      }
      worst = std::max(worst, std::abs((full - pairs) - c1_terms) / std::max(1.0, std::abs(full)));
    }
    r.pass = worst < 1e-10;
    r.detail = "max defect = " + detail::fmt(worst) + " (tol 1e-10)";
  });
}

// 5. |oracle - first-order value| scales as lambda^2: log-log slope 2.0 +/-
//    0.1 on lambda/w^3 in {1e-4..1e-2} for the coherent 2-point correlator.
inline CriterionResult criterion_order_scaling(std::uint64_t) {
  return detail::timed(5, "perturbative order scaling", [&](CriterionResult& r) {
    PhysicalParams base;
    const StateSpec state = StateSpec::coherent(Complex(0.7));
    const std::vector<double> times{1.3, 0.4};
    const ChiTable chi = chi_table(state, 6, base);
    const std::vector<double> rels{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
    std::vector<double> lx, ly;
    for (double rel : rels) {
      PhysicalParams p = base;
      p.lambda = rel * p.omega * p.omega * p.omega / p.hbar;
      const Complex exact = fock::wightman_exact_anharmonic(state, times, p);
      const auto pert = correlator_perturbative(chi, times, p, 1);
      lx.push_back(std::log(p.lambda));
      ly.push_back(std::log(std::abs(exact - pert.total)));
    }
    // least-squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    r.pass = std::abs(slope - 2.0) <= 0.1;
    std::ostringstream os;
    os.precision(4);
    os << "log-log slope = " << slope << " (target 2.0 +/- 0.1)";
    r.detail = os.str();
  });
}

// 6. Diagram-sum equivalence with the perturbative route for (n,K) in
//    {(2,1),(4,1),(2,2)} across vacuum/coherent/thermal, relative 1e-8 under
//    a shared quadrature spec.
inline CriterionResult criterion_diagram_equivalence(std::uint64_t) {
  return detail::timed(6, "diagram-sum equivalence", [&](CriterionResult& r) {
    PhysicalParams p;
    p.lambda = 0.05;
    const QuadratureSpec quad;  // shared
    const std::vector<std::pair<int, int>> cases{{2, 1}, {4, 1}, {2, 2}};
    const std::vector<StateSpec> states = {StateSpec::vacuum(), StateSpec::coherent(Complex(0.7, 0.2)),
                                           StateSpec::thermal(1.1)};
    double worst = 0.0;
    for (const auto& [n, K] : cases) {
      std::vector<double> times;
      for (int j = 0; j < n; ++j) times.push_back(1.4 - 0.35 * j);
      for (const auto& state : states) {
        const ChiTable chi = chi_table(state, n + 4 * K, p);
        const Complex d = diag::correlator_diagrammatic(chi, times, p, K, quad);
        const auto pert = correlator_perturbative(chi, times, p, K, quad);
        worst = std::max(worst, std::abs(d - pert.total) / std::max(1.0, std::abs(pert.total)));
      }
    }
    r.pass = worst < 1e-8;
    r.detail = "max relative gap = " + detail::fmt(worst) + " (tol 1e-8)";
  });
}

// 7. Paper-exact combinatorics: the label solver reproduces the worked label
//    sets and the symmetry factors come out 2, 2, 8, 4, 4, 6, 6.
inline CriterionResult criterion_combinatorics(std::uint64_t) {
  return detail::timed(7, "label sets and symmetry factors", [&](CriterionResult& r) {
    using namespace diag;
    const NodeRef E0 = NodeRef::external(0), E1 = NodeRef::external(1);
    const NodeRef V0 = NodeRef::vertex(0), V1 = NodeRef::vertex(1);
    auto mk = [](int n, int K, std::vector<DwEdge> es, std::vector<Blob> bs) {
      Diagram d;
      d.n_external = n;
      d.n_vertices = K;
      d.edges = std::move(es);
      d.blobs = std::move(bs);
      normalize(d);
      return d;
    };
    bool ok = true;
    std::ostringstream os;

    // single-vertex exchange diagram: {t1-, t2+}
    {
      const Diagram d = mk(2, 1, {{E0, V0}, {V0, E1}, {V0, V0}}, {});
      const auto as = label_assignments(d);
      ok &= as.size() == 2 && as[0][0] == TimeLabel::internal(1, -1) && as[1][0] == TimeLabel::internal(2, +1);
    }
    // two-vertex chain: rows (1-,1-), (1-,2+), (2+,2+)
    {
      const Diagram d = mk(2, 2, {{E0, V0}, {V0, V1}, {V1, E1}, {V0, V0}, {V1, V1}}, {});
      const auto as = label_assignments(d);
      ok &= as.size() == 3;
      int same_minus = 0, mixed = 0, same_plus = 0;
      for (const auto& a : as) {
        const bool m0 = a[0] == TimeLabel::internal(1, -1), m1 = a[1] == TimeLabel::internal(1, -1);
        const bool p0 = a[0] == TimeLabel::internal(2, +1), p1 = a[1] == TimeLabel::internal(2, +1);
        if (m0 && m1) ++same_minus;
        if (p0 && p1) ++same_plus;
        if ((m0 && p1) || (p0 && m1)) ++mixed;
      }
      ok &= same_minus == 1 && mixed == 1 && same_plus == 1;
    }
    // worked-example tadpole: {t1+, t1-, t2+}
    {
      const Diagram d = mk(2, 1, {{V0, E1}}, {Blob{{E0, V0}}, Blob{{V0, V0}}});
      const auto as = label_assignments(d);
      ok &= as.size() == 3 && as[0][0] == TimeLabel::internal(1, +1) &&
            as[1][0] == TimeLabel::internal(1, -1) && as[2][0] == TimeLabel::internal(2, +1);
    }
    // symmetry factors
    const std::vector<std::pair<Diagram, double>> sf = {
        {mk(2, 1, {{E0, V0}, {V0, V0}, {V0, E1}}, {}), 2.0},
        {mk(2, 1, {{E0, V0}, {V0, E1}}, {Blob{{V0, V0}}}), 2.0},
        {mk(2, 1, {{E0, E1}, {V0, V0}, {V0, V0}}, {}), 8.0},
        {mk(2, 1, {{E0, E1}, {V0, V0}}, {Blob{{V0, V0}}}), 4.0},
        {mk(2, 2, {{E0, V0}, {V0, V0}, {V0, V1}, {V1, V1}, {V1, E1}}, {}), 4.0},
        {mk(2, 2, {{E0, V0}, {V0, V1}, {V0, V1}, {V0, V1}, {V1, E1}}, {}), 6.0},
        {mk(1, 1, {{E0, V0}}, {Blob{{V0, V0, V0}}}), 6.0},
    };
    os << "S = ";
    for (const auto& [d, expected] : sf) {
      const double got = symmetry_factor(d);
      os << got << " ";
      ok &= got == expected;
    }
    os << "(expected 2 2 8 4 4 6 6)";
    r.pass = ok;
    r.detail = os.str();
  });
}

// 8. Worked-example cancellation: the t_{1+} and t_{1-} contributions of the
//    tadpole-with-blob diagram cancel below 1e-10 and the total matches the
//    boxed single-integral expression.
inline CriterionResult criterion_worked_example(std::uint64_t) {
  return detail::timed(8, "worked-example cancellation", [&](CriterionResult& r) {
    using namespace diag;
    PhysicalParams p;
    p.lambda = 0.08;
    const double beta = 0.9;
    const ChiTable chi = chi_table(StateSpec::thermal(beta), 10, p);
    Diagram d;
    d.n_external = 2;
    d.n_vertices = 1;
    d.edges = {{NodeRef::vertex(0), NodeRef::external(1)}};
    d.blobs = {Blob{{NodeRef::external(0), NodeRef::vertex(0)}}, Blob{{NodeRef::vertex(0), NodeRef::vertex(0)}}};
    normalize(d);
    const std::vector<double> times{1.4, 0.9};
    const auto as = label_assignments(d);
    if (as.size() != 3) {
      r.pass = false;
      r.detail = "unexpected label count";
      return;
    }
    const Complex a_plus = evaluate_assignment(d, as[0], chi, times, p);
    const Complex a_minus = evaluate_assignment(d, as[1], chi, times, p);
    const Complex a_2plus = evaluate_assignment(d, as[2], chi, times, p);
    const double cancel = std::abs(a_plus + a_minus);

    const double nb = bose_factor(beta, p);
    auto curly = [&](double ta, double tb) {
      return p.quantum() * nb *
             (std::exp(Complex(0, -p.omega * (ta - tb))) + std::exp(Complex(0, p.omega * (ta - tb))));
    };
    auto dw = [&](double ta, double tb) { return p.quantum() * std::exp(Complex(0, -p.omega * (ta - tb))); };
    const auto boxed = integrate_1d(
        [&](double u) { return curly(times[0], u) * curly(u, u) * dw(u, times[1]); }, 0.0, times[1]);
    const Complex expected = Complex(0, 0.5 * p.lambda / p.hbar) * boxed.value;
    const double total_gap = std::abs(a_plus + a_minus + a_2plus - expected);

    r.pass = cancel < 1e-10 && total_gap < 1e-8;
    r.detail = "|(a)+(b)| = " + detail::fmt(cancel) + " (tol 1e-10), |total - boxed| = " +
               detail::fmt(total_gap);
  });
}

// 9. Numerical hygiene: quadrature results stable to 1e-9 under node
//    doubling; oracle results stable to 1e-12 under D -> D+10.
inline CriterionResult criterion_numerical_hygiene(std::uint64_t) {
  return detail::timed(9, "numerical hygiene", [&](CriterionResult& r) {
    PhysicalParams p;
    p.lambda = 0.02;
    // quadrature side: the adaptive integrator reports its final delta
    const auto q1 = integrate_1d([](double t) { return std::exp(Complex(0, -2.3 * t)) * (t * t + 0.5); },
                                 0.0, 4.0);
    const auto q2 = integrate_triangle(
        [](double u, double v) { return std::exp(Complex(0, -1.3 * (u - v))) * std::cos(u + 0.2 * v); },
        0.0, 2.5, true);
    const double qd1 = q1.last_delta / std::max(1.0, std::abs(q1.value));
    const double qd2 = q2.last_delta / std::max(1.0, std::abs(q2.value));

    // oracle side: re-verify the D -> D+10 shift at the settled dimension
    double worst_oracle = 0.0;
    const std::vector<double> times{1.3, 0.4};
    for (const auto& state : {StateSpec::coherent(Complex(1.2, 0.4)), StateSpec::thermal(0.6)}) {
      const auto free_stable = fock::wightman_exact_free_stable(state, times, p);
      const Complex f0 = fock::wightman_free_at_dim(state, times, p, free_stable.dim);
      const Complex f1 = fock::wightman_free_at_dim(state, times, p, free_stable.dim + 10);
      worst_oracle = std::max(worst_oracle, std::abs(f0 - f1) / std::max(1.0, std::abs(f1)));
      const auto anh_stable = fock::wightman_exact_anharmonic_stable(state, times, p);
      const Complex a0 = fock::wightman_anharmonic_at_dim(state, times, p, anh_stable.dim);
      const Complex a1 = fock::wightman_anharmonic_at_dim(state, times, p, anh_stable.dim + 10);
      worst_oracle = std::max(worst_oracle, std::abs(a0 - a1) / std::max(1.0, std::abs(a1)));
    }
    r.pass = qd1 < 1e-9 && qd2 < 1e-9 && worst_oracle < 1e-12;
    r.detail = "quad deltas " + detail::fmt(qd1) + ", " + detail::fmt(qd2) +
               " (tol 1e-9); oracle D-shift " + detail::fmt(worst_oracle) + " (tol 1e-12)";
  });
}

inline std::vector<CriterionResult> run_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<CriterionResult> out;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("transforms")) {
    out.push_back(criterion_closed_form_cumulants(seed));
    out.push_back(criterion_moment_cumulant_identities(seed));
  }
  if (want("free")) {
    out.push_back(criterion_triple_equivalence(seed));
    out.push_back(criterion_wick_factorization(seed));
  }
  if (want("perturbation")) {
    out.push_back(criterion_order_scaling(seed));
    out.push_back(criterion_numerical_hygiene(seed));
  }
  if (want("diagrams")) {
    out.push_back(criterion_diagram_equivalence(seed));
    out.push_back(criterion_combinatorics(seed));
    out.push_back(criterion_worked_example(seed));
  }
  if (out.empty()) throw std::invalid_argument("unknown suite: " + suite);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

inline bool all_pass(const std::vector<CriterionResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

}  // namespace verify
}  // namespace wightman
