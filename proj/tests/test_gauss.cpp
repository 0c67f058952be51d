#include <doctest.h>

#include <random>

#include "vhf/gauss.hpp"

using namespace vhf;

namespace {

GaussElem poly(long p, std::vector<long> num, std::vector<long> den = {1}, int N = 20) {
  IntPoly n(num.begin(), num.end()), d(den.begin(), den.end());
  return GaussElem::from_polys(p, N, n, d);
}

GaussElem random_elem(long p, std::mt19937_64& rng, int maxdeg, int N = 20) {
  std::uniform_int_distribution<long> c(-30, 30);
  std::uniform_int_distribution<int> deg(0, maxdeg);
  IntPoly n(deg(rng) + 1), d(deg(rng) + 1);
  for (auto& x : n) x = c(rng);
  for (auto& x : d) x = c(rng);
  d[0] = d[0] * p + 1;  // unit content
  return GaussElem::from_polys(p, N, n, d);
}

}  // namespace

TEST_CASE("gauss valuation and residue") {
  CHECK(poly(3, {1, 3}).valuation() == 0);      // 3t + 1
  CHECK(poly(3, {3, 9}).valuation() == 1);
  CHECK(poly(3, {0, 1}).valuation() == 0);      // t
  CHECK(poly(2, {4}, {1, 1}).valuation() == 2);
  const auto r = poly(3, {1, 3}, {2, 1}).residue();  // (1+3t)/(t+2)
  CHECK(r.num == std::vector<long>{1});
  CHECK(r.den == std::vector<long>{2, 1});
  CHECK(poly(3, {3, 9}).residue() == FpFrac{});
  CHECK_THROWS_AS(poly(3, {1}).times_p_pow(-1).residue(), Error);
}

TEST_CASE("gauss constructor errors") {
  CHECK_THROWS_AS(poly(3, {1}, {0}), Error);
  try {
    poly(3, {1}, {3, 6});
    FAIL("expected NonUnitDenominator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonUnitDenominator);
  }
  try {
    (void)GaussElem::zero(3, 10).inv();
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("gauss arithmetic") {
  const long p = 3;
  const auto t = GaussElem::t(p, 20);
  const auto one = GaussElem::from_int(p, 20, 1);
  CHECK(t * t.inv() == one);
  CHECK(t.inv().residue().den == std::vector<long>{0, 1});
  CHECK((t + one) * (t - one) == t * t - one);
  CHECK((t - t).is_exact_zero());
  CHECK(poly(p, {1, 1}) / poly(p, {1, 1}) == one);
  // (1 + 3t) - 1 = 3t has valuation 1
  CHECK((poly(p, {1, 3}) - one).valuation() == 1);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    const auto a = random_elem(p, rng, 3), b = random_elem(p, rng, 3), c = random_elem(p, rng, 3);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    if (!a.is_zero() && !b.is_zero()) {
      CHECK(a * a.inv() == one);
      CHECK((a * b).valuation() == *a.valuation() + *b.valuation());
    }
    if (!a.is_zero() && !b.is_zero() && !(a + b).is_zero())
      CHECK(*(a + b).valuation() >= std::min(*a.valuation(), *b.valuation()));
  }
}

TEST_CASE("p-independence") {
  const auto t = GaussElem::t(2, 20);
  CHECK(p_independent_check(t));
  CHECK_FALSE(p_independent_check(t.pow(2)));
  CHECK(p_independent_check(poly(2, {1, 1})));
  CHECK_FALSE(p_independent_check(poly(2, {1, 0, 1})));  // (1+t)^2 mod 2
  CHECK_FALSE(p_independent_check(poly(3, {1, 0, 0, 1}, {2, 0, 0, 0, 0, 0, 1})));
  CHECK(p_independent_check(poly(3, {1, 0, 0, 1}, {2, 1})));
  CHECK_FALSE(p_independent_set({t, t.pow(2)}));
  CHECK_FALSE(p_independent_set({t, t + GaussElem::from_int(2, 20, 1)}));
  CHECK(p_independent_set({t}));
  CHECK(p_independent_set({}));
}

TEST_CASE("p-basis expansion examples") {
  // t^3 with p = 2, l = 1: t^3 = (t)^2 * t
  const auto d = pbasis_expand_t(GaussElem::t(2, 20).pow(3), 1);
  REQUIRE(d.digits.size() == 2);
  CHECK(d.digits[0][0] == FpFrac{});
  CHECK(to_string(d.digits[0][1]) == "t");
  CHECK(d.digits[1][0] == FpFrac{});
  CHECK(d.digits[1][1] == FpFrac{});

  // a = 2: digits a_{1,0} = 1, all others 0
  const auto two = pbasis_expand_t(GaussElem::from_int(2, 20, 2), 1);
  CHECK(two.digits[0][0] == FpFrac{});
  CHECK(two.digits[1][0] == (FpFrac{{1}, {1}}));
  CHECK(two.digits[1][1] == FpFrac{});

  // 1/(1+t), p = 2, l = 1: (1+t)/(1+t^2) = (1/(1+t))^2 + t (1/(1+t))^2
  const auto a = poly(2, {1}, {1, 1});
  const auto e = pbasis_expand_t(a, 1);
  CHECK(to_string(e.digits[0][0]) == "(1)/(1 + t)");
  CHECK(to_string(e.digits[0][1]) == "(1)/(1 + t)");
  const auto back = pbasis_assemble(e, 20);
  CHECK(congruent_mod(back, a, 2));
}

TEST_CASE("p-basis expansion budget") {
  try {
    (void)pbasis_expand_t(GaussElem::t(2, 20), 4);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  CHECK_THROWS_AS(pbasis_expand_t(GaussElem::t(3, 20), 3), Error);
  CHECK_THROWS_AS(pbasis_expand_t(GaussElem::t(2, 20).pow(9), 1), Error);
  CHECK_THROWS_AS(pbasis_expand_t(GaussElem::t(2, 20).times_p_pow(-1), 1), Error);
}

TEST_CASE("p-basis expansion round trips") {
  std::mt19937_64 rng(17);
  int done = 0;
  for (long p : {2L, 3L})
    for (int l = 0; l <= 2; ++l)
      for (int it = 0; it < 20; ++it) {
        auto a = random_elem(p, rng, 4, 24);
        if (a.is_zero() || *a.valuation() < 0) continue;
        const auto d = pbasis_expand_t(a, l);
        const auto back = pbasis_assemble(d, 24);
        INFO("p=" << p << " l=" << l << " a=" << a.to_string());
        CHECK(congruent_mod(back, a, l + 1));
        CHECK_FALSE(congruent_mod(back + GaussElem::from_int(p, 24, 1).times_p_pow(l), a, l + 1));
        // each row has p^l entries
        long pl = 1;
        for (int i = 0; i < l; ++i) pl *= p;
        CHECK(d.digits.size() == static_cast<std::size_t>(l + 1));
        CHECK(d.digits[0].size() == static_cast<std::size_t>(pl));
        ++done;
      }
  CHECK(done >= 100);
}
