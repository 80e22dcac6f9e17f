#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "wightman/transforms.hpp"

using namespace wightman;

namespace {
double dist(Complex a, Complex b) { return std::abs(a - b); }

Complex xi(const XiTable& t, int m, int n) { return t.at(m, n); }
}  // namespace

TEST_CASE("table range checks") {
  XiTable t(3);
  CHECK_THROWS_AS(t.at(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(t.set(4, 0, Complex(1.0)), std::invalid_argument);
  t.set_hermitian(0, 2, Complex(1.0, 2.0));
  CHECK(t.at(2, 0) == Complex(1.0, -2.0));
}

TEST_CASE("xi_to_chi reproduces the closed-form relations") {
  testutil::Rng rng(11);
  const XiTable t = testutil::random_xi_table(rng, 4);
  const ChiTable chi = xi_to_chi(t);

  const Complex x01 = xi(t, 0, 1), x10 = xi(t, 1, 0), x02 = xi(t, 0, 2), x11 = xi(t, 1, 1);
  const Complex x03 = xi(t, 0, 3), x12 = xi(t, 1, 2), x20 = xi(t, 2, 0), x21 = xi(t, 2, 1);

  CHECK(dist(chi.at(0, 0), Complex(1.0)) == 0.0);
  CHECK(dist(chi.at(0, 1), x01) < 1e-14);
  CHECK(dist(chi.at(0, 2), -x01 * x01 + x02) < 1e-14);
  CHECK(dist(chi.at(1, 1), x11 - x01 * x10) < 1e-14);
  CHECK(dist(chi.at(0, 3), 2.0 * x01 * x01 * x01 - 3.0 * x02 * x01 + x03) < 1e-14);
  CHECK(dist(chi.at(1, 2), 2.0 * x10 * x01 * x01 - 2.0 * x11 * x01 - x02 * x10 + x12) < 1e-14);

  // the nine-term chi_22 relation
  const Complex x22 = xi(t, 2, 2);
  const Complex expected22 = -6.0 * x10 * x10 * x01 * x01 + 2.0 * x20 * x01 * x01 + 8.0 * x10 * x11 * x01 -
                             2.0 * x21 * x01 + 2.0 * x02 * x10 * x10 - 2.0 * x11 * x11 - 2.0 * x10 * x12 -
                             x02 * x20 + x22;
  CHECK(dist(chi.at(2, 2), expected22) < 1e-13);
}

TEST_CASE("identity xi table maps to trivial chi table") {
  XiTable t(5);
  t.set(0, 0, Complex(1.0));
  const ChiTable chi = xi_to_chi(t);
  CHECK(chi.at(0, 0) == Complex(1.0));
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; m + n <= 5; ++n)
      if (m + n > 0) CHECK(chi.at(m, n) == Complex(0.0));
}

TEST_CASE("chi_to_xi reproduces the inversion formulas") {
  testutil::Rng rng(13);
  const ChiTable chi = testutil::random_chi_table(rng, 4);
  const XiTable t = chi_to_xi(chi);

  const Complex c01 = chi.at(0, 1), c10 = chi.at(1, 0), c02 = chi.at(0, 2), c11 = chi.at(1, 1);
  const Complex c03 = chi.at(0, 3), c12 = chi.at(1, 2), c13 = chi.at(1, 3);

  CHECK(dist(t.at(0, 3), c01 * c01 * c01 + 3.0 * c02 * c01 + c03) < 1e-14);
  // seven-term xi_13 inversion
  const Complex expected13 = c10 * c01 * c01 * c01 + 3.0 * c11 * c01 * c01 + 3.0 * c02 * c10 * c01 +
                             3.0 * c12 * c01 + c03 * c10 + 3.0 * c02 * c11 + c13;
  CHECK(dist(t.at(1, 3), expected13) < 1e-13);
}

TEST_CASE("round trips are the identity through order 8") {
  testutil::Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const int order = rng.uniform_int(2, 8);
    const XiTable t = testutil::random_xi_table(rng, order);
    const XiTable back = chi_to_xi(xi_to_chi(t));
    for (int m = 0; m <= order; ++m)
      for (int n = 0; m + n <= order; ++n) CHECK(dist(back.at(m, n), t.at(m, n)) < 1e-12);

    const ChiTable c = testutil::random_chi_table(rng, order);
    const ChiTable back2 = xi_to_chi(chi_to_xi(c));
    for (int m = 0; m <= order; ++m)
      for (int n = 0; m + n <= order; ++n) CHECK(dist(back2.at(m, n), c.at(m, n)) < 1e-12);
  }
}

TEST_CASE("transforms preserve hermitian symmetry") {
  testutil::Rng rng(23);
  const XiTable t = testutil::random_xi_table(rng, 6);
  CHECK(xi_to_chi(t).hermiticity_defect() < 1e-12);
  const ChiTable c = testutil::random_chi_table(rng, 6);
  CHECK(chi_to_xi(c).hermiticity_defect() < 1e-12);
}

TEST_CASE("normalization errors") {
  XiTable t(2);
  t.set(0, 0, Complex(0.5));
  CHECK_THROWS_AS(xi_to_chi(t), normalization_error);
  ChiTable c(2);
  c.set(0, 0, Complex(2.0));
  CHECK_THROWS_AS(chi_to_xi(c), normalization_error);
}
