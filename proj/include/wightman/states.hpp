#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wightman/tables.hpp"
#include "wightman/transforms.hpp"

// State specifications and the closed-form xi/chi coefficient tables of the
// special oscillator states.  Mixtures mix xi (expectations are trace-linear)
// and never chi; cumulants of non-special states go through the series-log
// transform.

namespace wightman {

struct StateSpec {
  enum class Kind { Vacuum, Coherent, Thermal, Number, Mixture, CustomXi, CustomDensity };

  Kind kind = Kind::Vacuum;
  Complex phi{};                                    // Coherent
  double beta = 0.0;                                // Thermal
  int level = 0;                                    // Number
  std::vector<std::pair<double, StateSpec>> parts;  // Mixture
  std::shared_ptr<const XiTable> xi;                // CustomXi
  std::shared_ptr<const std::vector<Complex>> density;  // CustomDensity, row-major
  int density_dim = 0;

  static StateSpec vacuum() { return {}; }
  static StateSpec coherent(Complex phi) {
    StateSpec s;
    s.kind = Kind::Coherent;
    s.phi = phi;
    return s;
  }
  static StateSpec thermal(double beta) {
    StateSpec s;
    s.kind = Kind::Thermal;
    s.beta = beta;
    return s;
  }
  static StateSpec number(int n) {
    StateSpec s;
    s.kind = Kind::Number;
    s.level = n;
    return s;
  }
  static StateSpec mixture(std::vector<std::pair<double, StateSpec>> parts) {
    StateSpec s;
    s.kind = Kind::Mixture;
    s.parts = std::move(parts);
    return s;
  }
  static StateSpec custom_xi(XiTable table) {
    StateSpec s;
    s.kind = Kind::CustomXi;
    s.xi = std::make_shared<XiTable>(std::move(table));
    return s;
  }
  static StateSpec custom_density(std::vector<Complex> rho_row_major, int dim) {
    if (dim < 2 || static_cast<int>(rho_row_major.size()) != dim * dim)
      throw std::invalid_argument("custom density must be a DxD matrix, D >= 2");
    StateSpec s;
    s.kind = Kind::CustomDensity;
    s.density = std::make_shared<std::vector<Complex>>(std::move(rho_row_major));
    s.density_dim = dim;
    return s;
  }

  void validate() const {
    switch (kind) {
      case Kind::Thermal:
        if (!(beta > 0.0)) throw std::invalid_argument("thermal state requires beta > 0");
        break;
      case Kind::Number:
        if (level < 0) throw std::invalid_argument("number state requires n >= 0");
        break;
      case Kind::Mixture: {
        if (parts.empty()) throw std::invalid_argument("mixture must have parts");
        double total = 0.0;
        for (const auto& [w, s] : parts) {
          if (w < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
          total += w;
          s.validate();
        }
        if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to 1");
        break;
      }
      default:
        break;
    }
  }
};

// Bose factor n_B = 1/(exp(beta hbar omega) - 1).
inline double bose_factor(double beta, const PhysicalParams& p) {
  if (!(beta > 0.0)) throw std::invalid_argument("bose_factor requires beta > 0");
  p.validate();
  return 1.0 / std::expm1(beta * p.hbar * p.omega);
}

namespace detail {
inline double falling_factorial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}
inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}
inline Complex ipow(Complex z, int k) {
  Complex r(1.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}
}  // namespace detail

// Closed-form xi_mn = <(a^dag)^m a^n>.  CustomDensity states have no closed
// form here; that path goes through the fock oracle.
inline Complex xi_closed(const StateSpec& state, int m, int n, const PhysicalParams& p) {
  if (m < 0 || n < 0) throw std::invalid_argument("xi indices must be nonnegative");
  state.validate();
  switch (state.kind) {
    case StateSpec::Kind::Vacuum:
      return (m == 0 && n == 0) ? Complex(1.0) : Complex(0.0);
    case StateSpec::Kind::Coherent:
      return detail::ipow(std::conj(state.phi), m) * detail::ipow(state.phi, n);
    case StateSpec::Kind::Thermal: {
      if (m != n) return Complex(0.0);
      const double nb = bose_factor(state.beta, p);
      return Complex(detail::factorial(n) * std::pow(nb, n));
    }
    case StateSpec::Kind::Number:
      if (m != n || n > state.level) return Complex(0.0);
      return Complex(detail::falling_factorial(state.level, n));
    case StateSpec::Kind::Mixture: {
      Complex acc(0.0);
      for (const auto& [w, s] : state.parts) acc += w * xi_closed(s, m, n, p);
      return acc;
    }
    case StateSpec::Kind::CustomXi:
      return state.xi->at(m, n);
    case StateSpec::Kind::CustomDensity:
      throw std::invalid_argument("custom density states have no closed-form xi; use fock_oracle::xi_numeric");
  }
  throw std::logic_error("unreachable");
}

// Closed-form chi for the states the paper works out (App. B); std::nullopt
// signals "fall back to the xi -> chi transform".
inline std::optional<Complex> chi_closed(const StateSpec& state, int m, int n, const PhysicalParams& p) {
  if (m < 0 || n < 0) throw std::invalid_argument("chi indices must be nonnegative");
  switch (state.kind) {
    case StateSpec::Kind::Vacuum:
      return (m == 0 && n == 0) ? Complex(1.0) : Complex(0.0);
    case StateSpec::Kind::Coherent:
      if (m == 0 && n == 0) return Complex(1.0);
      if (m == 0 && n == 1) return state.phi;
      if (m == 1 && n == 0) return std::conj(state.phi);
      return Complex(0.0);
    case StateSpec::Kind::Thermal:
      if (m == 0 && n == 0) return Complex(1.0);
      if (m == 1 && n == 1) return Complex(bose_factor(state.beta, p));
      return Complex(0.0);
    default:
      return std::nullopt;
  }
}

inline bool has_closed_chi(const StateSpec& state) {
  return state.kind == StateSpec::Kind::Vacuum || state.kind == StateSpec::Kind::Coherent ||
         state.kind == StateSpec::Kind::Thermal;
}

inline XiTable xi_table(const StateSpec& state, int max_order, const PhysicalParams& p) {
  XiTable t(max_order);
  for (int m = 0; m <= max_order; ++m)
    for (int n = 0; m + n <= max_order; ++n) t.set(m, n, xi_closed(state, m, n, p));
  return t;
}

// chi table via closed forms when the paper provides them, otherwise through
// the series-log transform of the xi table.
inline ChiTable chi_table(const StateSpec& state, int max_order, const PhysicalParams& p) {
  if (has_closed_chi(state)) {
    ChiTable t(max_order);
    for (int m = 0; m <= max_order; ++m)
      for (int n = 0; m + n <= max_order; ++n) t.set(m, n, *chi_closed(state, m, n, p));
    return t;
  }
  return xi_to_chi(xi_table(state, max_order, p));
}

}  // namespace wightman
