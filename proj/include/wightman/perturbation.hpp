#pragma once

#include "wightman/quadrature.hpp"
#include "wightman/wick_free.hpp"

// Direct interaction-picture expansion of anharmonic Wightman correlators.
// Each U^dag(t_j,t0) / U(t_j,t0) expands into x^4 insertions placed left /
// right of x(t_j); a plan records how many insertions each of the 2n slots
// received.  Time/anti-time ordering inside a slot is resolved with step
// functions against the copy order (copy 1 placed lefter), which fixes the
// canonical integration simplex and absorbs the 1/k! of the exponential
// series.  All phases run in t - t0; insertions carry -(+)i lambda/(hbar 4!)
// for U (U^dag).  This module is the normalization ground truth the diagram
// rules must reproduce.

namespace wightman {

struct InsertionPlan {
  int n = 0;                // number of external points
  std::vector<int> counts;  // size 2n; slot 2(j-1) is (j,+), slot 2(j-1)+1 is (j,-)

  explicit InsertionPlan(int n_) : n(n_), counts(2 * n_, 0) {}

  int total() const {
    int k = 0;
    for (int c : counts) k += c;
    return k;
  }
  int plus_count(int j) const { return counts[2 * (j - 1)]; }
  int minus_count(int j) const { return counts[2 * (j - 1) + 1]; }

  // prod (+i)^{k_{j+}} (-i)^{k_{j-}}
  Complex branch_sign() const {
    Complex s(1.0);
    for (int j = 1; j <= n; ++j) {
      for (int c = 0; c < plus_count(j); ++c) s *= Complex(0.0, 1.0);
      for (int c = 0; c < minus_count(j); ++c) s *= Complex(0.0, -1.0);
    }
    return s;
  }

  // Internal coordinates in sequence order: slot (1,+) copies, (1,-) copies,
  // (2,+) copies, ...  Each entry names its slot and copy index.
  std::vector<TimeLabel> internal_labels() const {
    std::vector<TimeLabel> out;
    for (int j = 1; j <= n; ++j) {
      for (int c = 1; c <= plus_count(j); ++c) out.push_back(TimeLabel::internal(j, +1, c));
      for (int c = 1; c <= minus_count(j); ++c) out.push_back(TimeLabel::internal(j, -1, c));
    }
    return out;
  }
};

// All distributions of exactly K insertions over the 2n slots.
inline std::vector<InsertionPlan> enumerate_insertions(int n, int K) {
  if (n < 1) throw std::invalid_argument("need at least one external point");
  if (K < 0 || K > 2) throw std::invalid_argument("perturbative order capped at K <= 2");
  std::vector<InsertionPlan> out;
  InsertionPlan plan(n);
  std::function<void(int, int)> place = [&](int slot, int left) {
    if (left == 0) {
      out.push_back(plan);
      return;
    }
    if (slot == 2 * n) return;
    for (int take = left; take >= 0; --take) {
      plan.counts[slot] = take;
      place(slot + 1, left - take);
    }
    plan.counts[slot] = 0;
  };
  place(0, K);
  return out;
}

namespace pert_detail {

// Operator-sequence layout of a plan: externals interleaved with 4-operator
// insertion blocks.  Coordinates: externals first (0..n-1), then internals in
// sequence order (n..n+K-1).
struct SequenceLayout {
  int n = 0;
  int K = 0;
  std::vector<int> slot_coord;  // per operator position: owning coordinate
  std::vector<TimeLabel> internals;
};

inline SequenceLayout layout(const InsertionPlan& plan) {
  SequenceLayout lay;
  lay.n = plan.n;
  lay.K = plan.total();
  lay.internals = plan.internal_labels();
  int internal_index = 0;
  for (int j = 1; j <= plan.n; ++j) {
    for (int c = 0; c < plan.plus_count(j); ++c) {
      for (int q = 0; q < 4; ++q) lay.slot_coord.push_back(plan.n + internal_index);
      ++internal_index;
    }
    lay.slot_coord.push_back(j - 1);
    for (int c = 0; c < plan.minus_count(j); ++c) {
      for (int q = 0; q < 4; ++q) lay.slot_coord.push_back(plan.n + internal_index);
      ++internal_index;
    }
  }
  return lay;
}

// ExpSum over n + 4K operator slots, compressed to net integer phase weights
// per coordinate.
class CompiledPlan {
 public:
  CompiledPlan(const InsertionPlan& plan, const ChiTable& chi) : lay_(layout(plan)) {
    const int n_ops = static_cast<int>(lay_.slot_coord.size());
    const ExpSum full = wightman_free(n_ops, chi);
    prefactor_power_ = 0.5 * n_ops;
    std::map<std::vector<int>, Complex> acc;
    std::vector<int> w(lay_.n + lay_.K);
    for (const auto& [sv, c] : full.terms()) {
      std::fill(w.begin(), w.end(), 0);
      for (int pos = 0; pos < n_ops; ++pos) w[lay_.slot_coord[pos]] += sv.sign(pos);
      acc[w] += c;
    }
    for (auto& [key, c] : acc)
      if (c != 0.0) terms_.push_back({key, c});
  }

  const SequenceLayout& layout_info() const { return lay_; }

  // Folds the fixed external phases in; returns an evaluator over the K
  // internal coordinates.  All times are relative to t0.
  std::function<Complex(const std::vector<double>&)> bind(const std::vector<double>& ext_times_rel,
                                                          const PhysicalParams& p) const {
    if (static_cast<int>(ext_times_rel.size()) != lay_.n)
      throw std::invalid_argument("external time count mismatch");
    const int n = lay_.n, K = lay_.K;
    std::map<std::vector<int>, Complex> folded;
    for (const auto& [w, c] : terms_) {
      double phase = 0.0;
      for (int j = 0; j < n; ++j) phase += w[j] * ext_times_rel[j];
      std::vector<int> wi(w.begin() + n, w.end());
      folded[wi] += c * std::exp(Complex(0.0, -p.omega * phase));
    }
    std::vector<std::pair<std::vector<int>, Complex>> fterms(folded.begin(), folded.end());
    const double pref = std::pow(p.quantum(), prefactor_power_);
    const double omega = p.omega;
    return [fterms = std::move(fterms), pref, omega, K](const std::vector<double>& u) {
      // powers e^{-i w omega u} for w in [-4,4] per internal coordinate
      Complex table[2][9];
      for (int c = 0; c < K; ++c) {
        const Complex z = std::exp(Complex(0.0, -omega * u[c]));
        Complex pw(1.0);
        table[c][4] = Complex(1.0);
        for (int k = 1; k <= 4; ++k) {
          pw *= z;
          table[c][4 + k] = pw;
          table[c][4 - k] = std::conj(pw);
        }
      }
      Complex acc(0.0);
      for (const auto& [w, c] : fterms) {
        Complex t = c;
        for (int q = 0; q < K; ++q) t *= table[q][w[q] + 4];
        acc += t;
      }
      return pref * acc;
    };
  }

 private:
  SequenceLayout lay_;
  double prefactor_power_ = 0.0;
  std::vector<std::pair<std::vector<int>, Complex>> terms_;
};

inline double theta(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

}  // namespace pert_detail

// Integrand of one plan at explicit internal times (absolute).  Includes the
// branch sign, lambda^K/(hbar 4!)^K, the step-function factor resolving same-
// slot orderings against copy order, and the free correlator over the full
// operator sequence.
inline Complex build_integrand(const InsertionPlan& plan, const std::vector<double>& internal_times,
                               const std::vector<double>& times, const ChiTable& chi,
                               const PhysicalParams& p) {
  p.validate();
  const auto labels = plan.internal_labels();
  if (internal_times.size() != labels.size()) throw std::invalid_argument("internal time count mismatch");
  if (static_cast<int>(times.size()) != plan.n) throw std::invalid_argument("external time count mismatch");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double hi = times[labels[i].j - 1];
    if (internal_times[i] < p.t0 - 1e-12 || internal_times[i] > hi + 1e-12)
      throw std::domain_error("internal time outside [t0, t_j]");
  }
  double theta_factor = 1.0;
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
    if (labels[i].same_slot(labels[i + 1])) {
      // copy 1 placed lefter: T (minus) wants it later, T* (plus) earlier
      const double d = internal_times[i] - internal_times[i + 1];
      theta_factor *= pert_detail::theta(labels[i].kind == TimeLabel::Kind::InternalMinus ? d : -d);
    }
  }
  if (theta_factor == 0.0) return Complex(0.0);

  const int K = plan.total();
  pert_detail::CompiledPlan compiled(plan, chi);
  std::vector<double> ext_rel(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) ext_rel[j] = times[j] - p.t0;
  std::vector<double> int_rel(internal_times.size());
  for (std::size_t i = 0; i < internal_times.size(); ++i) int_rel[i] = internal_times[i] - p.t0;
  const Complex w = compiled.bind(ext_rel, p)(int_rel);
  const double coupling = std::pow(p.lambda / (p.hbar * 24.0), K);
  return plan.branch_sign() * coupling * theta_factor * w;
}

struct PerturbativeResult {
  Complex total{};
  std::vector<Complex> by_order;  // contribution of each order 0..K
};

// Sum of all plans with 0..K insertions, numerically integrated.  Phases and
// integration variables run relative to t0.
inline PerturbativeResult correlator_perturbative(const ChiTable& chi, const std::vector<double>& times,
                                                  const PhysicalParams& p, int K,
                                                  const QuadratureSpec& quad = {}) {
  p.validate();
  if (times.empty()) throw std::invalid_argument("need at least one external time");
  if (K < 0 || K > 2) throw std::invalid_argument("perturbative order capped at K <= 2");
  for (double t : times)
    if (t < p.t0) throw std::domain_error("external times must not precede t0");
  const int n = static_cast<int>(times.size());
  if (chi.max_order() < n + 4 * K)
    throw std::invalid_argument("chi table order must reach n + 4K for the requested order");
  if (!p.perturbative() && p.lambda != 0.0) {
    // warned, not enforced (the expansion is asymptotic)
  }
  std::vector<double> ext_rel(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) ext_rel[j] = times[j] - p.t0;

  PerturbativeResult res;
  res.by_order.assign(K + 1, Complex(0.0));

  // K = 0: exact symbolic evaluation.
  res.by_order[0] = eval_expsum(wightman_free(n, chi), ext_rel, p);

  const double coupling1 = p.lambda / (p.hbar * 24.0);
  for (int order = 1; order <= K; ++order) {
    if (p.lambda == 0.0) break;
    for (const auto& plan : enumerate_insertions(n, order)) {
      const auto labels = plan.internal_labels();
      const pert_detail::CompiledPlan compiled(plan, chi);
      const auto f = compiled.bind(ext_rel, p);
      const Complex pref = plan.branch_sign() * std::pow(coupling1, order);
      if (order == 1) {
        const double hi = ext_rel[labels[0].j - 1];
        const auto r = integrate_1d([&](double u) { return f({u}); }, 0.0, hi, quad);
        res.by_order[1] += pref * r.value;
      } else {
        const double hi0 = ext_rel[labels[0].j - 1];
        const double hi1 = ext_rel[labels[1].j - 1];
        auto g = [&](double u, double v) { return f({u, v}); };
        if (labels[0].same_slot(labels[1])) {
          // canonical simplex: minus slot has copy 1 later, plus slot earlier
          const bool first_greater = labels[0].kind == TimeLabel::Kind::InternalMinus;
          const auto r = integrate_triangle(g, 0.0, hi0, first_greater, quad);
          res.by_order[2] += pref * r.value;
        } else {
          const auto r = integrate_box2(g, 0.0, hi0, 0.0, hi1, quad);
          res.by_order[2] += pref * r.value;
        }
      }
    }
  }
  for (const Complex& c : res.by_order) res.total += c;
  return res;
}

}  // namespace wightman
