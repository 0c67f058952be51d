#include "doctest.h"
#include "fields.hpp"
#include "vhf/hyperfield.hpp"

#include <chrono>
#include <cstdio>

using namespace vhf;
using namespace testfields;

TEST_CASE("class_of examples") {
  auto q2 = qp(2);
  Hyperfield h(q2, 2);
  CHECK(h.class_of(FieldElem::zero(q2)).zero);
  auto c6 = h.class_of_int(6);
  CHECK(c6.gamma == 1);
  CHECK(c6.unit == Coeffs{3});
  CHECK(h.class_of_int(2) == h.class_of_int(10));
  CHECK(h.class_of_int(2) != h.class_of_int(6));
  CHECK_THROWS_AS(h.class_of(FieldElem::approx_zero(q2, 5)), Error);
}

TEST_CASE("multiplicative structure") {
  auto k = ramified(5, {-5, 0, 1});
  Hyperfield h(k, 1);
  auto pi = h.class_of(Pi(k));
  auto pp = h.mul(pi, pi);
  CHECK(pp.gamma == 2);
  CHECK(pp == h.class_of_int(5));
  Hyperfield h5(qp(5), 1);
  CHECK(h5.inv(h5.class_of_int(2)) == h5.class_of_int(3));
  CHECK(h5.neg(h5.zero()).zero);
  CHECK_THROWS_AS(h5.inv(h5.zero()), Error);
  CHECK(h5.pow(h5.class_of_int(2), 4) == h5.one());
}

TEST_CASE("multiadd examples in Q_2, n = 2") {
  auto q2 = qp(2);
  Hyperfield h(q2, 2);
  auto one = h.one();
  auto s = h.multiadd(one, one);
  CHECK(s.radius == 2);
  CHECK_FALSE(s.contains_zero);
  CHECK(h.center(s) == I(q2, 2));
  auto members = h.sum_members(s, 10);
  REQUIRE(members.size() == 2);
  CHECK(members[0] == h.class_of_int(2));
  CHECK(members[1] == h.class_of_int(6));
  CHECK(h.sum_contains(s, h.class_of_int(6)));
  CHECK_FALSE(h.sum_contains(s, h.one()));

  auto t = h.multiadd(one, h.class_of_int(3));
  CHECK(t.radius == 2);
  CHECK(t.contains_zero);
  CHECK(h.sum_contains(t, h.zero()));
  CHECK(h.sum_contains(t, h.class_of_int(4)));
  CHECK(h.sum_contains(t, h.class_of_int(12)));
  CHECK_FALSE(h.sum_contains(t, h.class_of_int(2)));

  CHECK(h.single_member(h.multiadd(one, h.zero())) == one);
}

TEST_CASE("sums contain the class of the sum") {
  std::mt19937_64 rng(3);
  for (auto k : {qp(3), ramified(2, {-2, 0, 1}), ramified(5, {-5, 0, 1})})
    for (int n = 1; n <= 3; ++n) {
      Hyperfield h(k, n);
      for (int t = 0; t < 200; ++t) {
        std::vector<FieldElem> xs;
        std::vector<HfClass> cs;
        FieldElem total = FieldElem::zero(k);
        for (int i = 0; i < 4; ++i) {
          xs.push_back(random_nonzero(k, rng, 3));
          cs.push_back(h.class_of(xs.back()));
          total += xs.back();
        }
        auto s = h.multi_sum(cs);
        if (!total.is_zero()) CHECK(h.sum_contains(s, h.class_of(total)));
        // permutation and re-association invariance
        auto rev = cs;
        std::reverse(rev.begin(), rev.end());
        CHECK(h.multi_sum(rev) == s);
        auto left = h.add_to(h.add_to(h.multiadd(cs[0], cs[1]), cs[2]), cs[3]);
        auto right = h.add_to(h.add_to(h.multiadd(cs[2], cs[3]), cs[1]), cs[0]);
        CHECK(left == s);
        CHECK(right == s);
        // rho = n
        auto p = h.multiadd(cs[0], cs[1]);
        CHECK(p.radius == n + std::min(cs[0].gamma, cs[1].gamma));
      }
    }
}

TEST_CASE("unit classes agree with congruence mod m^n") {
  auto q2 = qp(2);
  Hyperfield h(q2, 2);
  for (long a = 1; a < 64; a += 2)
    for (long b = 1; b < 64; b += 2) CHECK((h.class_of_int(a) == h.class_of_int(b)) == ((a - b) % 4 == 0));
}

TEST_CASE("units part and the level-1 residue isomorphism") {
  Hyperfield h(qp(5), 1);
  CHECK(units_part(h).size() == 5);
  auto table = residue_iso_level1(h);
  REQUIRE(table.size() == 5);
  CHECK(table[0].cls.zero);
  CHECK(table[0].residue == Coeffs{0});
  for (int i = 1; i <= 4; ++i) {
    CHECK(table[i].cls == h.class_of_int(i));
    CHECK(table[i].residue == Coeffs{i});
  }
  for (const auto& a : units_part(h))
    for (const auto& b : units_part(h)) {
      auto m = h.mul(a, b);
      CHECK((m.zero || m.gamma == 0));
    }
  Hyperfield f4(unramified(2, {1, 1, 1}), 1);
  CHECK(residue_iso_level1(f4).size() == 4);
  CHECK_THROWS_AS(residue_iso_level1(Hyperfield(qp(5), 2)), Error);
}

TEST_CASE("axiom suites on a small field") {
  Hyperfield h(qp(5), 1);
  AxiomBudget b;
  b.window = 3;
  auto t0 = std::chrono::steady_clock::now();
  auto r = check_hyperfield_axioms(h, b);
  auto v = check_valued_axioms(h, b);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("Q5 n=1 V=3 axioms took " << ms << " ms");
  for (const auto& x : r.results) {
    INFO(x.axiom << " " << x.witness);
    CHECK(x.pass);
  }
  for (const auto& x : v.results) {
    INFO(x.axiom << " " << x.witness);
    CHECK(x.pass);
  }
  CHECK(r.rho == 1);
  CHECK(r.ball_type == "closed");
}

TEST_CASE("compact form agrees with the direct implementation") {
  std::mt19937_64 rng(5);
  for (auto k : {qp(2), qp(3), ramified(2, {-2, 0, 1}), unramified(2, {1, 1, 1})})
    for (int n = 1; n <= 3; ++n) {
      Hyperfield h(k, n);
      CompactHyperfield c(h);
      auto g = h.grid(n + 2);
      for (int t = 0; t < 3000; ++t) {
        const auto& a = g[rng() % g.size()];
        const auto& b = g[rng() % g.size()];
        const auto& x = g[rng() % g.size()];
        auto ca = c.encode(a), cb = c.encode(b), cx = c.encode(x);
        CHECK(c.decode(ca) == a);
        auto s = h.multiadd(a, b);
        CHECK(c.decode(c.multiadd(ca, cb)) == s);
        CHECK(c.encode(s) == c.multiadd(ca, cb));
        CHECK(c.decode(c.add_to(c.multiadd(ca, cb), cx)) == h.add_to(s, x));
        CHECK(c.decode(c.scale(c.multiadd(ca, cb), cx)) == h.scale(s, x));
        CHECK(c.contains(c.multiadd(ca, cb), cx) == h.sum_contains(s, x));
        CHECK(c.decode(c.neg(ca)) == h.neg(a));
      }
    }
}

TEST_CASE("axiom timing on the largest grid" * doctest::skip(true)) {
  for (auto k : {qp(5), ramified(5, {-5, 0, 1})}) {
    Hyperfield h(k, 3);
    auto t0 = std::chrono::steady_clock::now();
    auto r = check_hyperfield_axioms(h);
    auto v = check_valued_axioms(h);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("n=3 axioms took " << ms << " ms, pass=" << (r.all_pass() && v.all_pass()));
  }
}

#include "oracle.hpp"

TEST_CASE("multiadd equals brute-force coset sums") {
  for (auto k : {qp(2), qp(3), ramified(2, {-2, 0, 1})})
    for (int n = 1; n <= 2; ++n) {
      Hyperfield h(k, n);
      auto st = oracle::check_multiadd(h, 2 * n + 2, 500, 9);
      INFO("n=" << n << " first mismatch: " << st.first_mismatch);
      CHECK(st.mismatches == 0);
      CHECK(st.pairs > 0);
    }
}

TEST_CASE("oracle timing on the largest grid" * doctest::skip(true)) {
  for (auto k : {qp(5), ramified(5, {-5, 0, 1})}) {
    Hyperfield h(k, 3);
    auto t0 = std::chrono::steady_clock::now();
    auto st = oracle::check_multiadd(h, 8, 20000, 9);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("oracle n=3 took " << ms << " ms, mismatches=" << st.mismatches << " pairs=" << st.pairs << " " << st.first_mismatch);
  }
}
