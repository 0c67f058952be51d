#include "doctest.h"
#include "fields.hpp"

#include <set>

using namespace vhf;
using namespace testfields;

namespace {

long as_long(const Int& z) { return z.get_si(); }

// Integer value of an element of Z_p known modulo p^k.
long int_mod(const FieldElem& a, int k) { return as_long(a.reduce_mod(k)[0]); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("make_field validates its input") {
  auto q5 = qp(5, 12);
  CHECK(q5->e() == 1);
  CHECK(q5->N() == 12);
  auto r5 = ramified(5, {-5, 0, 1}, 12);
  CHECK(r5->e() == 2);
  CHECK_NOTHROW(ramified(5, {-10, 0, 1}, 12));
  CHECK(kind_of([] { ramified(5, {-25, 0, 1}, 12); }) == ErrorKind::NotEisenstein);
  CHECK(kind_of([] { ramified(5, {-5, 1, 1}, 12); }) == ErrorKind::NotEisenstein);
  CHECK(kind_of([] { ramified(5, {-5, 0, 2}, 12); }) == ErrorKind::NotEisenstein);
  CHECK(kind_of([] { ramified(5, {-5, 0, 1}, 8); }) == ErrorKind::PrecisionTooSmall);
  // x^2 + 1 splits mod 5, x^2 + 2 does not.
  CHECK(kind_of([] { unramified(5, {1, 0, 1}); }) == ErrorKind::NotIrreducible);
  CHECK_NOTHROW(unramified(5, {2, 0, 1}));
  CHECK(kind_of([] { ramified(6, {-6, 1}, 12); }) == ErrorKind::InvalidInput);
}

TEST_CASE("basic arithmetic examples") {
  auto k = ramified(5, {-5, 0, 1}, 12);
  CHECK(Pi(k) * Pi(k) == I(k, 5));
  CHECK(*(Pi(k) * Pi(k)).valuation() == 2);

  auto q2 = qp(2, 12);
  auto i3 = I(q2, 3).inv();
  CHECK(int_mod(i3, 5) == 11);
  CHECK(I(q2, 3) * i3 == I(q2, 1));

  auto a = I(k, 7) + Pi(k, 3);
  CHECK((a + (-a)).is_exact_zero());
  CHECK((a - a).is_exact_zero());
  CHECK(FieldElem::zero(k).is_exact_zero());
}

TEST_CASE("mixed fields and division errors") {
  auto a = qp(5), b = qp(5);
  CHECK(kind_of([&] { I(a, 1) + I(b, 1); }) == ErrorKind::MixedFields);
  CHECK(kind_of([&] { FieldElem::zero(a).inv(); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([&] { FieldElem::approx_zero(a, 5).inv(); }) == ErrorKind::PrecisionExhausted);
}

TEST_CASE("valuation examples") {
  auto q2s = ramified(2, {-2, 0, 1});
  CHECK(*I(q2s, 2).valuation() == 2);
  CHECK(*(I(q2s, 2) + Pi(q2s)).valuation() == 1);
  CHECK_FALSE(FieldElem::zero(q2s).valuation().has_value());
  auto z = FieldElem::approx_zero(q2s, q2s->N());
  CHECK(z.is_zero());
  CHECK(kind_of([&] { z.valuation(); }) == ErrorKind::ZeroAtPrecision);
  CHECK(kind_of([&] { Pi(q2s, q2s->N() + 1).valuation(); }) == ErrorKind::ZeroAtPrecision);
  auto q7 = qp(7);
  CHECK(*I(q7, 7 * 7 * 3).valuation() == 2);
  CHECK(*FieldElem::from_rational(q7, 1, 49).valuation() == -2);
}

TEST_CASE("residue and reduce_mod") {
  auto q5 = qp(5, 12);
  CHECK(I(q5, 7).residue() == Coeffs{2});
  CHECK(int_mod(I(q5, 35), 2) == 10);
  auto r5 = ramified(5, {-5, 0, 1}, 12);
  CHECK(Pi(r5).residue() == Coeffs{0});
  CHECK(kind_of([&] { Pi(r5, -1).residue(); }) == ErrorKind::NegativeValuation);
  CHECK(kind_of([&] { Pi(r5, -1).reduce_mod(2); }) == ErrorKind::NegativeValuation);
  // In Q_5(sqrt 5), 7 + 3 pi + 11 pi^2 mod m^3 = 7 + 3 pi + 55 = 62 + 3pi, reduced: 62 mod 25 = 12.
  auto x = I(r5, 7) + I(r5, 3) * Pi(r5) + I(r5, 11) * Pi(r5, 2);
  CHECK(x.reduce_mod(3) == Coeffs{12, 3});
}

TEST_CASE("hensel_root examples") {
  auto q2 = qp(2);
  Poly q = poly_from_ints(q2, {-17, 0, 1});
  auto r = hensel_lift(q, I(q2, 1));
  // The root near 1 is 9 mod 16; its negative is the other root, 7 mod 16.
  CHECK(int_mod(r.root, 4) == 9);
  CHECK(int_mod(-r.root, 4) == 7);
  for (long x = 0; x < 32; ++x)
    if ((x * x - 17) % 32 == 0 && x % 4 == 1) CHECK(int_mod(r.root, 4) == x % 16);
  CHECK(poly_eval(q, r.root).valuation_lower_bound() >= q2->N());
  CHECK(r.steps > 0);

  auto q5 = qp(5);
  auto u = I(q5, 5) * I(q5, 3);
  Poly q2p{-(I(q5, 1) + u), FieldElem::zero(q5), I(q5, 1)};
  auto s = hensel_root(q2p, I(q5, 1));
  CHECK(s * s == I(q5, 16));
  CHECK(int_mod(s, 1) == 1);

  Poly bad = poly_from_ints(q2, {-2, 0, 1});
  CHECK(kind_of([&] { hensel_root(bad, I(q2, 1)); }) == ErrorKind::HenselPreconditionFailed);
}

TEST_CASE("hensel roots vanish modulo m^N") {
  // Cube roots of 2 in Q_5 (3 is invertible mod 4, so x^3 = 2 has a root) and in a ramified field.
  auto q5 = qp(5);
  Poly q = poly_from_ints(q5, {-2, 0, 0, 1});
  auto c = hensel_root(q, I(q5, 3));
  CHECK(poly_eval(q, c).valuation_lower_bound() >= q5->N());
  CHECK(c.abs_prec() >= q5->N());

  auto k = ramified(3, {-3, 0, 1});
  Poly q2 = poly_from_ints(k, {-7, 0, 1});  // 7 = 1 mod 3
  auto r = hensel_root(q2, I(k, 1));
  CHECK(r * r == I(k, 7));
}

TEST_CASE("enumerate_units examples") {
  auto q2 = qp(2);
  auto u = enumerate_unit_reps(*q2, 2);
  REQUIRE(u.size() == 2);
  CHECK(u[0] == Coeffs{1});
  CHECK(u[1] == Coeffs{3});
  auto q5 = qp(5);
  CHECK(enumerate_unit_reps(*q5, 1).size() == 4);
  auto q2s = ramified(2, {-2, 0, 1});
  auto v = enumerate_unit_reps(*q2s, 2);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == Coeffs{1, 0});
  CHECK(v[1] == Coeffs{1, 1});
  auto f4 = unramified(2, {1, 1, 1});
  CHECK(enumerate_unit_reps(*f4, 2).size() == 12);
  CHECK(unit_count(*f4, 3) == 48);
  CHECK(kind_of([&] { enumerate_unit_reps(*q5, 8, 1000); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937_64 rng(7);
  for (auto k : {qp(3), ramified(2, {-2, 0, 1}), ramified(3, {3, 3, 0, 1}), unramified(2, {1, 1, 1}),
                 [] {
                   FieldSpec s;
                   s.p = 2;
                   s.f = 2;
                   s.e = 2;
                   s.eis = {{-2, 0}, {0, 2}, {1}};
                   s.h = {1, 1, 1};
                   s.N = 24;
                   return FieldModel::make(s);
                 }()}) {
    for (int t = 0; t < 200; ++t) {
      auto a = random_nonzero(k, rng), b = random_nonzero(k, rng), c = random_nonzero(k, rng);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * a.inv() == FieldElem::one(k));
      CHECK(*(a * b).valuation() == *a.valuation() + *b.valuation());
      auto s = a + b;
      if (!s.is_zero()) {
        CHECK(*s.valuation() >= std::min(*a.valuation(), *b.valuation()));
        if (*a.valuation() != *b.valuation()) CHECK(*s.valuation() == std::min(*a.valuation(), *b.valuation()));
      }
    }
  }
}

TEST_CASE("valuation identities on units times powers of pi") {
  auto k = ramified(2, {-2, 0, 1});
  auto units = enumerate_units(k, 3);
  for (const auto& u : units)
    for (const auto& w : units)
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          auto a = u * Pi(k, i), b = w * Pi(k, j);
          CHECK(*(a * b).valuation() == i + j);
          auto s = a + b;
          if (i != j) CHECK(*s.valuation() == std::min(i, j));
          else if (!s.is_zero()) CHECK(*s.valuation() >= i);
        }
}

TEST_CASE("reduce_mod is a ring homomorphism (oracle: Z[sqrt2] mod 2^4)") {
  // O = Z_2[pi], pi^2 = 2. O/m^k with k = 7 is Z[pi]/(pi^7); compare with an int64 model
  // of pairs (a, b) = a + b*pi modulo (2^4, 2^3).
  auto k = ramified(2, {-2, 0, 1});
  std::mt19937_64 rng(11);
  auto oracle_mul = [](long a0, long a1, long b0, long b1) {
    return std::pair<long, long>{((a0 * b0 + 2 * a1 * b1) % 16 + 16) % 16, ((a0 * b1 + a1 * b0) % 8 + 8) % 8};
  };
  for (int t = 0; t < 500; ++t) {
    auto a = random_integral(k, rng), b = random_integral(k, rng);
    auto ra = a.reduce_mod(7), rb = b.reduce_mod(7);
    auto rs = (a + b).reduce_mod(7), rp = (a * b).reduce_mod(7);
    CHECK(as_long(rs[0]) == (as_long(ra[0]) + as_long(rb[0])) % 16);
    CHECK(as_long(rs[1]) == (as_long(ra[1]) + as_long(rb[1])) % 8);
    auto [p0, p1] = oracle_mul(as_long(ra[0]), as_long(ra[1]), as_long(rb[0]), as_long(rb[1]));
    CHECK(as_long(rp[0]) == p0);
    CHECK(as_long(rp[1]) == p1);
  }
}

TEST_CASE("inverse matches exhaustive search in Z/p^k") {
  for (long p : {2L, 3L, 5L}) {
    auto k = qp(p);
    long pk = p * p * p * p;
    for (long x = 1; x < pk; ++x) {
      if (x % p == 0) continue;
      long y = 1;
      while ((x * y) % pk != 1) ++y;
      CHECK(int_mod(I(k, x).inv(), 4) == y);
    }
  }
}

TEST_CASE("to_string rendering") {
  auto k = ramified(5, {-5, 0, 1}, 12);
  auto x = I(k, 3) + I(k, 2) * Pi(k);
  auto s = x.to_string();
  CHECK(s.find("3") != std::string::npos);
  CHECK(s.find("π") != std::string::npos);
  CHECK(FieldElem::zero(k).to_string() == "0");
}
