#pragma once

#include <Eigen/Dense>
#include <mutex>
#include <tuple>

#include "wightman/states.hpp"
#include "wightman/transforms.hpp"

// Exact truncated-Fock-space reference.  Everything here is brute force on
// dense DxD matrices: density matrices for all states, Heisenberg position
// operators (free ones from the mode expansion, anharmonic ones by full
// eigendecomposition of H), normal-ordered moments, and the numeric
// generating functions.  Truncation dimensions are auto-selected and every
// observable must be stable under D -> D+10.

namespace wightman {
namespace fock {

using Matrix = Eigen::MatrixXcd;

struct LadderOps {
  Matrix a, a_dagger, x, p;
};

inline LadderOps ladder_ops(int dim, const PhysicalParams& par) {
  if (dim < 2) throw std::invalid_argument("fock dimension must be >= 2");
  par.validate();
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Matrix ad = a.adjoint();
  const double s = std::sqrt(par.hbar / (2.0 * par.omega));
  LadderOps out;
  out.a = a;
  out.a_dagger = ad;
  out.x = s * (a + ad);
  out.p = Complex(0.0, -1.0) * std::sqrt(par.omega * par.hbar / 2.0) * (a - ad);
  return out;
}

struct DensityRepr {
  int dim = 0;
  Matrix rho;
  double trace_deficit = 0.0;  // 1 - Tr rho before renormalization
};

// Truncation policy: D = max(40, 4*ceil(|phi|^2)+20, ceil(8/(beta hbar w))+20),
// doubled by the stability loop until observables settle.
inline int default_dim(const StateSpec& state, const PhysicalParams& par) {
  switch (state.kind) {
    case StateSpec::Kind::Coherent: {
      const double a2 = std::norm(state.phi);
      return std::max(40, 4 * static_cast<int>(std::ceil(a2)) + 20);
    }
    case StateSpec::Kind::Thermal: {
      const double bho = state.beta * par.hbar * par.omega;
      return std::max(40, static_cast<int>(std::ceil(8.0 / bho)) + 20);
    }
    case StateSpec::Kind::Number:
      return std::max(40, state.level + 20);
    case StateSpec::Kind::Mixture: {
      int d = 40;
      for (const auto& [w, s] : state.parts) d = std::max(d, default_dim(s, par));
      return d;
    }
    case StateSpec::Kind::CustomDensity:
      return state.density_dim;
    default:
      return 40;
  }
}

inline DensityRepr build_density(const StateSpec& state, int dim, const PhysicalParams& par) {
  state.validate();
  par.validate();
  if (dim < 2) throw std::invalid_argument("fock dimension must be >= 2");
  DensityRepr out;
  out.dim = dim;
  out.rho = Matrix::Zero(dim, dim);
  switch (state.kind) {
    case StateSpec::Kind::Vacuum:
      out.rho(0, 0) = 1.0;
      break;
    case StateSpec::Kind::Number:
      if (state.level >= dim) throw truncation_error("number state level exceeds truncation");
      out.rho(state.level, state.level) = 1.0;
      break;
    case StateSpec::Kind::Coherent: {
      Eigen::VectorXcd c(dim);
      c(0) = std::exp(-0.5 * std::norm(state.phi));
      for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * state.phi / std::sqrt(static_cast<double>(n));
      out.rho = c * c.adjoint();
      break;
    }
    case StateSpec::Kind::Thermal: {
      const double q = std::exp(-state.beta * par.hbar * par.omega);
      double w = 1.0 - q;  // Boltzmann weights normalized by the full Z
      for (int n = 0; n < dim; ++n) {
        out.rho(n, n) = w;
        w *= q;
      }
      break;
    }
    case StateSpec::Kind::Mixture: {
      for (const auto& [w, s] : state.parts) {
        const DensityRepr part = build_density(s, dim, par);
        out.rho += w * ((1.0 - part.trace_deficit) * part.rho);  // undo part renormalization
      }
      break;
    }
    case StateSpec::Kind::CustomDensity: {
      const int d0 = state.density_dim;
      if (dim < d0) throw std::invalid_argument("requested dimension below custom density size");
      for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d0; ++j) out.rho(i, j) = (*state.density)[i * d0 + j];
      break;
    }
    case StateSpec::Kind::CustomXi:
      throw std::invalid_argument("custom-xi states have no density matrix; use the symbolic routes");
  }
  const double tr = out.rho.trace().real();
  out.trace_deficit = 1.0 - tr;
  if (tr <= 0.0) throw truncation_error("density trace vanished under truncation");
  out.rho /= tr;
  // basic sanity on the construction
  if ((out.rho - Matrix(out.rho.adjoint())).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("density matrix is not hermitian");
  return out;
}

struct TruncationReport {
  bool pass = false;
  double deficit = 0.0;
  double top_occupation = 0.0;
};

inline TruncationReport truncation_check(const StateSpec& state, int dim, double tolerance,
                                         const PhysicalParams& par) {
  const DensityRepr d = build_density(state, dim, par);
  TruncationReport r;
  r.deficit = std::abs(d.trace_deficit);
  r.top_occupation = std::abs(d.rho(dim - 1, dim - 1));
  r.pass = r.deficit < tolerance && r.top_occupation < tolerance;
  return r;
}

namespace detail {

// <i|(a^dag)^m a^n|j> = delta_{i-m, j-n} sqrt(j!/(j-n)!) sqrt(i!/(i-m)!)
inline Matrix normal_ordered_monomial(int dim, int m, int n) {
  Matrix out = Matrix::Zero(dim, dim);
  for (int j = n; j < dim; ++j) {
    const int i = j - n + m;
    if (i < 0 || i >= dim) continue;
    double amp = 1.0;
    for (int k = 0; k < n; ++k) amp *= std::sqrt(static_cast<double>(j - k));
    for (int k = 0; k < m; ++k) amp *= std::sqrt(static_cast<double>(i - k));
    out(i, j) = amp;
  }
  return out;
}

struct StableValue {
  Complex value{};
  int dim = 0;        // dimension at which the observable settled
  double delta = 0.0; // |f(dim) - f(dim+10)|
};

// Doubles D until f(D) and f(D+10) agree to tol; returns the settled value.
template <class F>
StableValue stable_eval_full(F&& f, int d0, double tol = 1e-12, int dmax = 4096) {
  int d = d0;
  while (true) {
    if (d > dmax) throw truncation_error("required fock dimension exceeds the working limit");
    const Complex v0 = f(d);
    const Complex v1 = f(d + 10);
    const double delta = std::abs(v0 - v1);
    if (delta <= tol * std::max(1.0, std::abs(v1))) return {v1, d, delta};
    if (2 * d > dmax) throw truncation_error("observable not stable under fock-space growth");
    d *= 2;
  }
}

template <class F>
Complex stable_eval(F&& f, int d0, double tol = 1e-12, int dmax = 4096) {
  return stable_eval_full(f, d0, tol, dmax).value;
}

struct AnharmonicEigen {
  Eigen::VectorXd energies;
  Matrix vectors;        // columns are eigenvectors
  Matrix x_eigenbasis;   // V^dag x V
};

inline const AnharmonicEigen& anharmonic_eigensystem(int dim, const PhysicalParams& par) {
  using Key = std::tuple<int, double, double, double>;
  static std::map<Key, AnharmonicEigen> cache;
  static std::mutex mtx;
  const Key key{dim, par.omega, par.hbar, par.lambda};
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const LadderOps ops = ladder_ops(dim, par);
    Matrix h = 0.5 * ops.p * ops.p + 0.5 * par.omega * par.omega * ops.x * ops.x;
    if (par.lambda != 0.0) {
      const Matrix x2 = ops.x * ops.x;
      h += (par.lambda / 24.0) * x2 * x2;
    }
    h = 0.5 * (h + Matrix(h.adjoint()));  // kill rounding-level asymmetry
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    AnharmonicEigen sys;
    sys.energies = solver.eigenvalues();
    sys.vectors = solver.eigenvectors();
    sys.x_eigenbasis = sys.vectors.adjoint() * ops.x * sys.vectors;
    it = cache.emplace(key, std::move(sys)).first;
  }
  return it->second;
}

}  // namespace detail

// xi_mn = Tr[rho (a^dag)^m a^n], auto-sized so the value is stable to 1e-12
// under D -> D+10.
inline Complex xi_numeric(const StateSpec& state, int m, int n, const PhysicalParams& par, int dim = 0) {
  if (m < 0 || n < 0) throw std::invalid_argument("xi indices must be nonnegative");
  auto eval = [&](int d) {
    const DensityRepr rho = build_density(state, d, par);
    return Complex((rho.rho * detail::normal_ordered_monomial(d, m, n)).trace());
  };
  if (state.kind == StateSpec::Kind::CustomDensity) return eval(state.density_dim);
  const int d0 = std::max(dim, default_dim(state, par));
  return detail::stable_eval(eval, std::max(d0, m + n + 12));
}

// Tr[rho x(t_1)...x(t_n)] at a fixed truncation, with x(t) from the free mode
// expansion.  The state is prepared at t0, where all pictures coincide, so
// the mode phases run in t - t0 (the paper's formulas are the t0 = 0
// instance).
inline Complex wightman_free_at_dim(const StateSpec& state, const std::vector<double>& times,
                                    const PhysicalParams& par, int d) {
  const DensityRepr rho = build_density(state, d, par);
  const LadderOps ops = ladder_ops(d, par);
  Matrix prod = Matrix::Identity(d, d);
  for (double t : times) {
    const double tau = t - par.t0;
    const Complex e(std::cos(par.omega * tau), -std::sin(par.omega * tau));
    prod = prod * (e * ops.a + std::conj(e) * ops.a_dagger);
  }
  const double s = std::pow(par.hbar / (2.0 * par.omega), 0.5 * times.size());
  return Complex(s * (rho.rho * prod).trace());
}

inline detail::StableValue wightman_exact_free_stable(const StateSpec& state,
                                                      const std::vector<double>& times,
                                                      const PhysicalParams& par, int dim = 0) {
  auto eval = [&](int d) { return wightman_free_at_dim(state, times, par, d); };
  if (state.kind == StateSpec::Kind::CustomDensity)
    return {eval(state.density_dim), state.density_dim, 0.0};
  const int d0 = std::max(dim, default_dim(state, par));
  return detail::stable_eval_full(eval, d0 + static_cast<int>(times.size()));
}

inline Complex wightman_exact_free(const StateSpec& state, const std::vector<double>& times,
                                   const PhysicalParams& par, int dim = 0) {
  return wightman_exact_free_stable(state, times, par, dim).value;
}

// Tr[rho x_H(t_1)...x_H(t_n)] for the quartic oscillator at a fixed
// truncation; x_H(t) = e^{iH(t-t0)/hbar} x e^{-iH(t-t0)/hbar} via the
// eigendecomposition of H.
inline Complex wightman_anharmonic_at_dim(const StateSpec& state, const std::vector<double>& times,
                                          const PhysicalParams& par, int d) {
  const DensityRepr rho = build_density(state, d, par);
  const auto& sys = detail::anharmonic_eigensystem(d, par);
  // work in the eigenbasis: rho~ = V^dag rho V, x~(t)_{ij} = x~_{ij} e^{i(E_i-E_j)(t-t0)}
  Matrix prod = sys.vectors.adjoint() * rho.rho * sys.vectors;
  for (double t : times) {
    const double tau = t - par.t0;
    Matrix xt = sys.x_eigenbasis;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        xt(i, j) *= std::exp(Complex(0.0, (sys.energies(i) - sys.energies(j)) * tau / par.hbar));
    prod = prod * xt;
  }
  return Complex(prod.trace());
}

inline detail::StableValue wightman_exact_anharmonic_stable(const StateSpec& state,
                                                            const std::vector<double>& times,
                                                            const PhysicalParams& par, int dim = 0) {
  par.validate();
  auto eval = [&](int d) { return wightman_anharmonic_at_dim(state, times, par, d); };
  if (state.kind == StateSpec::Kind::CustomDensity)
    return {eval(state.density_dim), state.density_dim, 0.0};
  const int d0 = std::max(dim, default_dim(state, par));
  return detail::stable_eval_full(eval, d0 + static_cast<int>(times.size()));
}

inline Complex wightman_exact_anharmonic(const StateSpec& state, const std::vector<double>& times,
                                         const PhysicalParams& par, int dim = 0) {
  return wightman_exact_anharmonic_stable(state, times, par, dim).value;
}

// Z_chi(mu, mubar) = ln Tr[rho e^{mu a^dag} e^{mubar a}].  The truncated
// ladder operators are nilpotent, so the operator exponentials are exact
// finite sums.
inline Complex zchi_numeric(const DensityRepr& rho, Complex mu, Complex mu_bar) {
  const int d = rho.dim;
  Matrix eup = Matrix::Zero(d, d);   // e^{mu a^dag}
  Matrix edown = Matrix::Zero(d, d); // e^{mubar a}
  for (int n = 0; n < d; ++n) {
    Complex up(1.0), down(1.0);
    double fact = 1.0;
    for (int k = 0; n + k < d; ++k) {
      if (k > 0) {
        fact *= k;
        up *= mu;
        down *= mu_bar;
      }
      double amp = 1.0;
      for (int q = 0; q < k; ++q) amp *= std::sqrt(static_cast<double>(n + k - q));
      eup(n + k, n) = up / fact * amp;
      edown(n, n + k) = down / fact * amp;
    }
  }
  const Complex zp = (rho.rho * eup * edown).trace();
  return std::log(zp);
}

// Numeric chi table: xi_mn by matrix trace, then the series-log transform.
// (Chosen over finite differences of Z_chi; a spot check against the latter
// lives in the tests.)
inline ChiTable chi_numeric(const StateSpec& state, int max_order, const PhysicalParams& par, int dim = 0) {
  XiTable xi(max_order);
  for (int m = 0; m <= max_order; ++m)
    for (int n = 0; m + n <= max_order; ++n) xi.set(m, n, xi_numeric(state, m, n, par, dim));
  return xi_to_chi(xi);
}

// Thermal state of the *anharmonic* Hamiltonian, rho = e^{-beta H}/Z; the
// lambda-dependence of its cumulants is the content of the thermal-state
// observation in the interacting theory.  Which chi table to feed the
// diagrammatics for thermal initial states is a caller choice.
inline DensityRepr build_density_anharmonic_thermal(double beta, const PhysicalParams& par, int dim) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  const auto& sys = detail::anharmonic_eigensystem(dim, par);
  Eigen::VectorXd w(dim);
  const double e0 = sys.energies(0);
  for (int i = 0; i < dim; ++i) w(i) = std::exp(-beta * (sys.energies(i) - e0));
  w /= w.sum();
  DensityRepr out;
  out.dim = dim;
  out.rho = sys.vectors * w.asDiagonal() * sys.vectors.adjoint();
  out.trace_deficit = 0.0;
  return out;
}

inline XiTable xi_numeric_table(const DensityRepr& rho, int max_order) {
  XiTable xi(max_order);
  for (int m = 0; m <= max_order; ++m)
    for (int n = 0; m + n <= max_order; ++n)
      xi.set(m, n, Complex((rho.rho * detail::normal_ordered_monomial(rho.dim, m, n)).trace()));
  return xi;
}

}  // namespace fock
}  // namespace wightman
