#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "wightman/core.hpp"

using namespace wightman;
using Catch::Approx;

namespace {
double dist(Complex a, Complex b) { return std::abs(a - b); }
}  // namespace

TEST_CASE("make_f single plus sign is sqrt(hbar/2w) exp(-iwt)") {
  PhysicalParams p;
  p.omega = 1.3;
  p.hbar = 0.7;
  const ExpSum f = make_f("+");
  REQUIRE(f.size() == 1);
  const double t1 = 0.83;
  const Complex expected = std::sqrt(p.hbar / (2 * p.omega)) * std::exp(Complex(0, -p.omega * t1));
  CHECK(dist(eval_expsum(f, {t1}, p), expected) < 1e-14);
}

TEST_CASE("make_f plus-minus at equal times gives hbar/2w") {
  PhysicalParams p;
  p.omega = 2.0;
  p.hbar = 1.5;
  const ExpSum f = make_f("+-");
  CHECK(dist(eval_expsum(f, {1.234, 1.234}, p), Complex(p.hbar / (2 * p.omega))) < 1e-14);
}

TEST_CASE("make_f all-minus at (1,2,3) with w=hbar=1") {
  PhysicalParams p;
  const ExpSum f = make_f("---");
  const Complex expected = std::pow(0.5, 1.5) * std::exp(Complex(0, 6.0));
  CHECK(dist(eval_expsum(f, {1.0, 2.0, 3.0}, p), expected) < 1e-14);
}

TEST_CASE("make_f rejects empty sign vector") { CHECK_THROWS_AS(make_f(SignVector(std::string())), std::invalid_argument); }

TEST_CASE("make_F term structure") {
  SECTION("F31 = f+-- + f-+- + f--+") {
    const ExpSum F = make_F(3, 1);
    REQUIRE(F.size() == 3);
    CHECK(F.coeff(SignVector("+--")) == Complex(1.0));
    CHECK(F.coeff(SignVector("-+-")) == Complex(1.0));
    CHECK(F.coeff(SignVector("--+")) == Complex(1.0));
  }
  SECTION("F42 has six unit terms") {
    const ExpSum F = make_F(4, 2);
    REQUIRE(F.size() == 6);
    for (const auto& [sv, c] : F.terms()) CHECK(c == Complex(1.0));
  }
  SECTION("Fnn is the single all-plus term") {
    const ExpSum F = make_F(5, 5);
    REQUIRE(F.size() == 1);
    CHECK(F.coeff(SignVector("+++++")) == Complex(1.0));
  }
  SECTION("term count equals binomial for n <= 8") {
    for (std::size_t n = 1; n <= 8; ++n)
      for (std::size_t k = 0; k <= n; ++k) CHECK(make_F(n, k).size() == binomial(n, k));
  }
  SECTION("k > n rejected") { CHECK_THROWS_AS(make_F(3, 4), std::invalid_argument); }
}

TEST_CASE("eval_expsum basics") {
  PhysicalParams p;
  SECTION("empty sum evaluates to zero") {
    const ExpSum e(3);
    CHECK(eval_expsum(e, {1.0, 2.0, 3.0}, p) == Complex(0.0));
  }
  SECTION("F31 at zero times with hbar = 2w is 3") {
    PhysicalParams q;
    q.omega = 0.7;
    q.hbar = 1.4;
    CHECK(dist(eval_expsum(make_F(3, 1), {0.0, 0.0, 0.0}, q), Complex(3.0)) < 1e-14);
  }
  SECTION("length mismatch rejected") {
    CHECK_THROWS_AS(eval_expsum(make_f("+-"), {1.0}, p), std::invalid_argument);
  }
}

TEST_CASE("conj_map matches complex conjugation on evaluation") {
  testutil::Rng rng(42);
  PhysicalParams p;
  p.omega = 1.1;
  p.hbar = 0.9;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = rng.uniform_int(1, 5);
    ExpSum e(n);
    for (int k = 0; k < 6; ++k) {
      std::string key;
      for (int i = 0; i < n; ++i) key.push_back(rng.next_double() < 0.5 ? '+' : '-');
      e.add_term(SignVector(key), rng.complex_in_disk(2.0));
    }
    const auto times = testutil::random_times(rng, n);
    CHECK(dist(std::conj(eval_expsum(e, times, p)), eval_expsum(e.conj_map(), times, p)) < 1e-12);
  }
}

TEST_CASE("addition commutes and evaluation is linear") {
  testutil::Rng rng(7);
  PhysicalParams p;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = rng.uniform_int(1, 4);
    auto random_sum = [&](int terms) {
      ExpSum e(n);
      for (int k = 0; k < terms; ++k) {
        std::string key;
        for (int i = 0; i < n; ++i) key.push_back(rng.next_double() < 0.5 ? '+' : '-');
        e.add_term(SignVector(key), rng.complex_in_disk(1.0));
      }
      return e;
    };
    const ExpSum a = random_sum(4), b = random_sum(4), c = random_sum(4);
    const auto times = testutil::random_times(rng, n);
    const Complex lhs = eval_expsum((a + b) + c, times, p);
    const Complex rhs = eval_expsum(a + (b + c), times, p);
    CHECK(dist(lhs, rhs) < 1e-12);
    CHECK(dist(eval_expsum(a + b, times, p), eval_expsum(b + a, times, p)) < 1e-12);
    const Complex s = rng.complex_in_disk(2.0);
    CHECK(dist(eval_expsum(a * s, times, p), s * eval_expsum(a, times, p)) < 1e-12);
  }
}

TEST_CASE("zero-coefficient terms are pruned") {
  ExpSum e(2);
  e.add_term(SignVector("+-"), Complex(1.0));
  e.add_term(SignVector("+-"), Complex(-1.0));
  CHECK(e.empty());
}

TEST_CASE("sign vector validation") {
  CHECK_THROWS_AS(SignVector("+x"), std::invalid_argument);
  CHECK_THROWS_AS(SignVector(std::vector<int>{1, 2}), std::invalid_argument);
  const SignVector s("+-+");
  CHECK(s.sign(0) == 1);
  CHECK(s.sign(1) == -1);
  CHECK(s.flipped().packed() == "-+-");
}
