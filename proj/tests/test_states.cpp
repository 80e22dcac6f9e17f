#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "wightman/states.hpp"

using namespace wightman;

namespace {
double dist(Complex a, Complex b) { return std::abs(a - b); }
const PhysicalParams kUnit{};
}  // namespace

TEST_CASE("coherent xi is (phi*)^m phi^n") {
  const Complex phi(0.4, -0.3);
  const StateSpec s = StateSpec::coherent(phi);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      Complex expected(1.0);
      for (int i = 0; i < m; ++i) expected *= std::conj(phi);
      for (int i = 0; i < n; ++i) expected *= phi;
      CHECK(dist(xi_closed(s, m, n, kUnit), expected) < 1e-15);
    }
  CHECK(dist(xi_closed(StateSpec::coherent(Complex(0.5)), 2, 1, kUnit), Complex(0.125)) < 1e-15);
}

TEST_CASE("vacuum xi vanishes off (0,0)") {
  const StateSpec v = StateSpec::vacuum();
  CHECK(xi_closed(v, 0, 0, kUnit) == Complex(1.0));
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      if (m + n > 0) CHECK(xi_closed(v, m, n, kUnit) == Complex(0.0));
}

TEST_CASE("thermal xi is diagonal with n! n_B^n") {
  PhysicalParams p;
  const double beta = std::log(2.0);  // n_B = 1
  const StateSpec th = StateSpec::thermal(beta);
  CHECK(dist(xi_closed(th, 1, 1, p), Complex(1.0)) < 1e-14);
  CHECK(dist(xi_closed(th, 2, 2, p), Complex(2.0)) < 1e-14);
  CHECK(dist(xi_closed(th, 3, 3, p), Complex(6.0)) < 1e-14);
  CHECK(xi_closed(th, 2, 1, p) == Complex(0.0));
}

TEST_CASE("number state xi is the falling factorial") {
  const StateSpec n4 = StateSpec::number(4);
  CHECK(dist(xi_closed(n4, 1, 1, kUnit), Complex(4.0)) < 1e-15);
  CHECK(dist(xi_closed(n4, 2, 2, kUnit), Complex(12.0)) < 1e-15);
  CHECK(dist(xi_closed(n4, 4, 4, kUnit), Complex(24.0)) < 1e-15);
  CHECK(xi_closed(n4, 5, 5, kUnit) == Complex(0.0));
  CHECK(xi_closed(n4, 1, 2, kUnit) == Complex(0.0));
}

TEST_CASE("mixture xi is the weighted sum") {
  const StateSpec mix = StateSpec::mixture({{0.25, StateSpec::vacuum()}, {0.75, StateSpec::number(2)}});
  CHECK(dist(xi_closed(mix, 1, 1, kUnit), Complex(0.75 * 2.0)) < 1e-15);
  CHECK(dist(xi_closed(mix, 0, 0, kUnit), Complex(1.0)) < 1e-15);
}

TEST_CASE("mixture weight validation") {
  CHECK_THROWS_AS(StateSpec::mixture({{0.5, StateSpec::vacuum()}, {0.6, StateSpec::number(1)}}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(StateSpec::mixture({{-0.1, StateSpec::vacuum()}, {1.1, StateSpec::number(1)}}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(StateSpec::thermal(-1.0).validate(), std::invalid_argument);
}

TEST_CASE("custom density has no closed-form xi") {
  std::vector<Complex> rho(4, Complex(0.0));
  rho[0] = 1.0;
  const StateSpec s = StateSpec::custom_density(rho, 2);
  CHECK_THROWS_AS(xi_closed(s, 0, 0, kUnit), std::invalid_argument);
}

TEST_CASE("chi closed forms match the special-state results") {
  const Complex phi(0.5, 0.25);
  const StateSpec coh = StateSpec::coherent(phi);
  CHECK(*chi_closed(coh, 0, 1, kUnit) == phi);
  CHECK(*chi_closed(coh, 1, 0, kUnit) == std::conj(phi));
  CHECK(*chi_closed(coh, 0, 0, kUnit) == Complex(1.0));
  CHECK(*chi_closed(coh, 2, 1, kUnit) == Complex(0.0));

  const StateSpec v = StateSpec::vacuum();
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      if (m + n > 0) CHECK(*chi_closed(v, m, n, kUnit) == Complex(0.0));

  PhysicalParams p;
  const StateSpec th = StateSpec::thermal(std::log(2.0));
  CHECK(dist(*chi_closed(th, 1, 1, p), Complex(1.0)) < 1e-14);
  CHECK(*chi_closed(th, 2, 2, p) == Complex(0.0));

  CHECK(!chi_closed(StateSpec::number(3), 1, 1, kUnit).has_value());
}

TEST_CASE("bose factor") {
  PhysicalParams p;
  CHECK(dist(Complex(bose_factor(std::log(2.0), p)), Complex(1.0)) < 1e-14);
  CHECK(bose_factor(40.0, p) < 1e-15);
  CHECK(bose_factor(40.0, p) > 0.0);
  CHECK(std::abs(bose_factor(1.0, p) - 0.58197670686932642) < 1e-14);
  CHECK_THROWS_AS(bose_factor(0.0, p), std::invalid_argument);
}

TEST_CASE("chi_closed agrees with the xi->chi transform") {
  PhysicalParams p;
  p.omega = 1.2;
  p.hbar = 0.8;
  const int order = 6;
  const std::vector<StateSpec> states = {StateSpec::vacuum(), StateSpec::coherent(Complex(0.7, -0.4)),
                                         StateSpec::thermal(0.9)};
  for (const auto& s : states) {
    const ChiTable via_transform = xi_to_chi(xi_table(s, order, p));
    for (int m = 0; m <= order; ++m)
      for (int n = 0; m + n <= order; ++n) CHECK(dist(*chi_closed(s, m, n, p), via_transform.at(m, n)) < 1e-10);
  }
}

TEST_CASE("tables are hermitian and Coherent(0) equals Vacuum") {
  PhysicalParams p;
  const XiTable xc = xi_table(StateSpec::coherent(Complex(0.3, 0.6)), 6, p);
  CHECK(xc.hermiticity_defect() < 1e-12);
  const XiTable th = xi_table(StateSpec::thermal(0.7), 6, p);
  CHECK(th.hermiticity_defect() < 1e-12);

  const XiTable zero_coh = xi_table(StateSpec::coherent(Complex(0.0)), 5, p);
  const XiTable vac = xi_table(StateSpec::vacuum(), 5, p);
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; m + n <= 5; ++n) CHECK(zero_coh.at(m, n) == vac.at(m, n));
}

TEST_CASE("chi_table falls back to the transform for number states") {
  const StateSpec n2 = StateSpec::number(2);
  const ChiTable chi = chi_table(n2, 4, kUnit);
  // chi_11 = xi_11 - xi_01 xi_10 = 2
  CHECK(dist(chi.at(1, 1), Complex(2.0)) < 1e-13);
  // chi_22 = -2 xi_11^2 + xi_22 = -8 + 12 - ... all odd xi vanish:
  // chi_22 = xi_22 - 2 xi_11^2 - xi_02 xi_20 + 2 xi_20 xi_01^2 ... = 12 - 2*4 = 4... computed below
  const XiTable xt = xi_table(n2, 4, kUnit);
  const Complex x11 = xt.at(1, 1), x22 = xt.at(2, 2);
  CHECK(dist(chi.at(2, 2), x22 - 2.0 * x11 * x11) < 1e-13);
}
