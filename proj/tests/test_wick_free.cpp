#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "wightman/wick_free.hpp"

using namespace wightman;

namespace {
double dist(Complex a, Complex b) { return std::abs(a - b); }
const PhysicalParams kUnit{};

bool expsum_close(const ExpSum& a, const ExpSum& b, double tol) {
  const ExpSum diff = (a + (b * Complex(-1.0))).cleaned(tol);
  return diff.empty();
}
}  // namespace

TEST_CASE("set partition counts are Bell numbers") {
  CHECK(set_partitions(1).size() == 1);
  CHECK(set_partitions(3).size() == 5);
  CHECK(set_partitions(4).size() == 15);
  CHECK(set_partitions(6).size() == 203);
  CHECK_THROWS_AS(set_partitions(0), std::invalid_argument);
  CHECK_THROWS_AS(set_partitions(11), std::invalid_argument);
}

TEST_CASE("set partitions cover the ground set with disjoint blocks") {
  for (int n : {3, 5}) {
    for (const auto& part : set_partitions(n)) {
      std::vector<int> seen(n, 0);
      for (const auto& block : part) {
        CHECK(!block.empty());
        for (int e : block) seen[e] += 1;
      }
      for (int c : seen) CHECK(c == 1);
    }
  }
}

TEST_CASE("coherent second cumulant is the free Wightman propagator") {
  PhysicalParams p;
  p.omega = 1.4;
  p.hbar = 0.6;
  const ChiTable chi = chi_table(StateSpec::coherent(Complex(0.8, 0.1)), 4, p);
  const ExpSum c2 = cumulant_expsum(2, chi);
  REQUIRE(c2.size() == 1);
  const double t1 = 0.9, t2 = -0.4;
  const Complex expected = p.quantum() * std::exp(Complex(0, -p.omega * (t1 - t2)));
  CHECK(dist(eval_expsum(c2, {t1, t2}, p), expected) < 1e-14);
}

TEST_CASE("coherent third cumulant vanishes") {
  const ChiTable chi = chi_table(StateSpec::coherent(Complex(0.8, 0.1)), 4, kUnit);
  CHECK(cumulant_expsum(3, chi).empty());
}

TEST_CASE("generic third cumulant is chi03 F33 + chi12 F32 + chi21 F31 + chi30 F30") {
  testutil::Rng rng(5);
  const ChiTable chi = testutil::random_chi_table(rng, 3);
  const ExpSum c3 = cumulant_expsum(3, chi);
  ExpSum expected = chi.at(0, 3) * make_F(3, 3) + chi.at(1, 2) * make_F(3, 2) + chi.at(2, 1) * make_F(3, 1) +
                    chi.at(3, 0) * make_F(3, 0);
  CHECK(expsum_close(c3, expected, 1e-14));
}

TEST_CASE("cumulant order guard") {
  const ChiTable chi = chi_table(StateSpec::vacuum(), 2, kUnit);
  CHECK_THROWS_AS(cumulant_expsum(3, chi), std::invalid_argument);
  CHECK_THROWS_AS(cumulant_expsum(0, chi), std::invalid_argument);
}

TEST_CASE("three-point expansion matches C3 + 3 C1C2 + C1^3 by hand") {
  testutil::Rng rng(9);
  const ChiTable chi = testutil::random_chi_table(rng, 3);
  const ExpSum got = wightman_free(3, chi);

  const ExpSum c1 = cumulant_expsum(1, chi);
  const ExpSum c2 = cumulant_expsum(2, chi);
  const ExpSum c3 = cumulant_expsum(3, chi);
  ExpSum expected = c3;
  expected += ExpSum::product(c1, c2, {0}, {1, 2}, 3);
  expected += ExpSum::product(c1, c2, {1}, {0, 2}, 3);
  expected += ExpSum::product(c1, c2, {2}, {0, 1}, 3);
  expected += ExpSum::product(ExpSum::product(c1, c1, {0}, {1}, 2), c1, {0, 1}, {2}, 3);
  CHECK(expsum_close(got, expected, 1e-13));
}

TEST_CASE("vacuum two-point function is f+- only") {
  const ChiTable chi = chi_table(StateSpec::vacuum(), 4, kUnit);
  const ExpSum w2 = wightman_free(2, chi);
  REQUIRE(w2.size() == 1);
  CHECK(w2.coeff(SignVector("+-")) == Complex(1.0));
}

TEST_CASE("vacuum odd correlators vanish") {
  const ChiTable chi = chi_table(StateSpec::vacuum(), 6, kUnit);
  CHECK(wightman_free(1, chi).empty());
  CHECK(wightman_free(3, chi).empty());
  CHECK(wightman_free(5, chi).empty());
}

TEST_CASE("thermal four-point factorizes into pair products") {
  PhysicalParams p;
  const ChiTable chi = chi_table(StateSpec::thermal(0.8), 4, p);
  const ExpSum w4 = wightman_free(4, chi);
  const ExpSum w2 = wightman_free(2, chi);
  testutil::Rng rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    const auto t = testutil::random_times(rng, 4);
    const Complex lhs = eval_expsum(w4, t, p);
    auto pair2 = [&](int a, int b) { return eval_expsum(w2, {t[a], t[b]}, p); };
    const Complex rhs = pair2(0, 1) * pair2(2, 3) + pair2(0, 2) * pair2(1, 3) + pair2(0, 3) * pair2(1, 2);
    CHECK(dist(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("xi route matches the two-point normal-ordered expansion") {
  testutil::Rng rng(3);
  const XiTable xi = testutil::random_xi_table(rng, 2);
  const ExpSum w2 = wightman_free_xi(2, xi);
  ExpSum expected = xi.at(0, 2) * make_f("++") + xi.at(2, 0) * make_f("--") +
                    xi.at(1, 1) * (make_f("-+") + make_f("+-")) + make_f("+-");
  CHECK(expsum_close(w2, expected, 1e-14));
}

TEST_CASE("xi route three-point coefficient of f++- is xi12 + 2 xi01") {
  testutil::Rng rng(19);
  const XiTable xi = testutil::random_xi_table(rng, 3);
  const ExpSum w3 = wightman_free_xi(3, xi);
  CHECK(dist(w3.coeff(SignVector("++-")), xi.at(1, 2) + 2.0 * xi.at(0, 1)) < 1e-14);
}

TEST_CASE("xi route four-point constant part is f+-+- + 2 f++--") {
  XiTable xi(4);  // xi_00 = 1, everything else zero: vacuum
  xi.set(0, 0, Complex(1.0));
  const ExpSum w4 = wightman_free_xi(4, xi);
  REQUIRE(w4.size() == 2);
  CHECK(w4.coeff(SignVector("+-+-")) == Complex(1.0));
  CHECK(w4.coeff(SignVector("++--")) == Complex(2.0));
}

TEST_CASE("partition route and xi route agree term-by-term") {
  testutil::Rng rng(101);
  for (int n = 1; n <= 6; ++n) {
    const XiTable xi = testutil::random_xi_table(rng, n, 0.4);
    const ExpSum via_chi = wightman_free(n, xi_to_chi(xi));
    const ExpSum via_xi = wightman_free_xi(n, xi);
    CHECK(expsum_close(via_chi, via_xi, 1e-12));
  }
}

TEST_CASE("curly C2 = C2 - f+- is symmetric under argument swap") {
  testutil::Rng rng(77);
  const ChiTable chi = testutil::random_chi_table(rng, 2);
  ExpSum curly = cumulant_expsum(2, chi);
  curly += Complex(-1.0) * make_f("+-");
  ExpSum swapped(2);
  for (const auto& [sv, c] : curly.terms()) {
    std::string k = sv.packed();
    std::swap(k[0], k[1]);
    swapped.add_term(SignVector(k), c);
  }
  CHECK(expsum_close(curly, swapped, 1e-14));
}

TEST_CASE("hermiticity: conj of correlator equals reversed-order correlator") {
  testutil::Rng rng(55);
  PhysicalParams p;
  p.omega = 0.9;
  p.hbar = 1.1;
  for (int n : {2, 3, 4}) {
    const XiTable xi = testutil::random_xi_table(rng, n, 0.4);
    const ExpSum w = wightman_free_xi(n, xi);
    const auto t = testutil::random_times(rng, n);
    std::vector<double> rev(t.rbegin(), t.rend());
    CHECK(dist(std::conj(eval_expsum(w, t, p)), eval_expsum(w, rev, p)) < 1e-10);
  }
}

TEST_CASE("repeated times are legal slots") {
  const ChiTable chi = chi_table(StateSpec::thermal(1.0), 4, kUnit);
  const ExpSum w4 = wightman_free(4, chi);
  const Complex v = eval_expsum(w4, {0.7, 0.7, 0.7, 0.7}, kUnit);
  CHECK(std::abs(v.imag()) < 1e-12);  // equal-time moment of x is real
  CHECK(v.real() > 0.0);
}
