#include <doctest.h>

#include <random>

#include "fields.hpp"
#include "vhf/morphisms.hpp"
#include "vhf/ramification.hpp"

using namespace vhf;
using namespace testfields;

namespace {

HyperfieldPtr hf(const Field& k, int n) { return std::make_shared<const Hyperfield>(k, n); }

Field f4_tower(int N = 24) {
  FieldSpec s;
  s.p = 2;
  s.f = 2;
  s.e = 3;
  s.eis = {{-2, 0}, {0, 0}, {0, 0}, {1}};
  s.h = {1, 1, 1};
  s.N = N;
  return FieldModel::make(s);
}

Field f4_unramified(int N = 24) { return unramified(2, {1, 1, 1}, N); }

long product(const std::vector<long>& v) {
  long r = 1;
  for (long x : v) r *= x;
  return r;
}

}  // namespace

TEST_CASE("unit group presentations") {
  {
    const auto g = unit_group_gens(Hyperfield(qp(2), 3));
    CHECK(g.orders == std::vector<long>{2, 2});
    CHECK(g.size() == 4);
  }
  {
    const auto g = unit_group_gens(Hyperfield(qp(5), 1));
    CHECK(g.orders == std::vector<long>{4});
    CHECK(g.gens[0] == Coeffs{2});
  }
  {
    const auto k = ramified(2, {-2, 0, 1});
    const auto g = unit_group_gens(Hyperfield(k, 2));
    CHECK(g.orders == std::vector<long>{2});
    CHECK(g.gens[0] == Coeffs{1, 1});  // 1 + pi
  }
  for (const auto& [k, n] : std::vector<std::pair<Field, int>>{
           {qp(5), 3}, {qp(2), 5}, {ramified(2, {-2, 0, 1}), 5}, {f4_unramified(), 2}, {ramified(3, {3, 3, 0, 1}), 3}}) {
    const Hyperfield h(k, n);
    const auto g = unit_group_gens(h);
    CHECK(product(g.orders) == static_cast<long>(h.units().size()));
    // the exponent vectors reproduce every unit
    for (std::size_t i = 0; i < h.units().size(); ++i) {
      HfClass r = h.one();
      for (std::size_t j = 0; j < g.gens.size(); ++j) r = h.mul(r, h.pow(h.make(0, g.gens[j]), g.exps[i][j]));
      CHECK(r.unit == h.units()[i]);
    }
  }
}

TEST_CASE("identity homs pass") {
  for (const auto& [k, n] : std::vector<std::pair<Field, int>>{
           {qp(2), 1}, {qp(2), 3}, {ramified(5, {-5, 0, 1}), 2}, {f4_tower(), 1}, {ramified(2, {-2, 0, 1}), 3}}) {
    const auto h = hf(k, n);
    const auto rep = check_hom(identity_hom(h));
    CHECK(rep.all_pass());
    CHECK(rep.condition("3").checked > 0);
    CHECK(rep.condition("over_p").pass);
  }
}

TEST_CASE("Krasner quotient is not a valued hyperfield hom") {
  const Hyperfield h(qp(2), 1);
  const auto rep = check_krasner_quotient(h);
  CHECK(rep.condition("1").pass);
  CHECK(rep.condition("2").pass);
  CHECK(rep.condition("3").pass);
  CHECK_FALSE(rep.condition("4").pass);
  CHECK(rep.condition("4").witness == "([2], [1])");
}

TEST_CASE("violations are reported") {
  // order: generator 2 of F_3^x (order 2) sent to [2] in (Z/9)^x (order 6)
  {
    HomSpec s;
    s.source = hf(qp(3), 1);
    s.target = hf(qp(3), 2);
    s.over_p = false;
    s.unit_images = {s.target->class_of_int(2)};
    s.pi_image = s.target->class_of_int(3);
    const auto rep = check_hom(s);
    CHECK_FALSE(rep.condition("2").pass);
    try {
      rep.require_pass();
      FAIL("expected HomViolation");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::HomViolation);
      CHECK(std::string(e.what()).find("(2)") != std::string::npos);
    }
  }
  // u -> u^3 on F_5^x is multiplicative but not additive
  {
    const auto h = hf(qp(5), 1);
    HomSpec s;
    s.source = s.target = h;
    s.unit_images = {h->class_of_int(3)};
    s.pi_image = h->class_of_int(5);
    const auto rep = check_hom(s);
    CHECK(rep.condition("2").pass);
    CHECK_FALSE(rep.condition("3").pass);
  }
  // pi -> [2 pi] is not over p for Q5(sqrt5)
  {
    const auto k = ramified(5, {-5, 0, 1});
    const auto h = hf(k, 1);
    auto s = identity_hom(h);
    s.pi_image = h->class_of(Pi(k) * I(k, 2));
    CHECK_FALSE(check_hom(s).condition("over_p").pass);
  }
}

TEST_CASE("hom and iso search") {
  const auto a = hf(ramified(5, {-5, 0, 1}), 1);
  const auto b = hf(ramified(5, {-20, 0, 1}), 1);
  const auto c = hf(ramified(5, {-10, 0, 1}), 1);
  const auto ab = search_isos(a, b);
  CHECK(ab.size() == 2);
  CHECK(search_isos(a, c).empty());
  CHECK(search_homs(a, c).empty());
  const auto aa = search_isos(a, a);
  const auto id = identity_hom(a);
  bool has_identity = false;
  for (const auto& s : aa) has_identity = has_identity || (s.pi_image == id.pi_image && s.unit_images == id.unit_images);
  CHECK(has_identity);
  // threads give the same list
  SearchOptions opt;
  opt.threads = 3;
  const auto ab3 = search_isos(a, b, opt);
  REQUIRE(ab3.size() == ab.size());
  for (std::size_t i = 0; i < ab.size(); ++i) CHECK(to_string(ab[i]) == to_string(ab3[i]));
  // F_4 tower: identity and Frobenius on units, three choices of pi each
  const auto t = hf(f4_tower(), 1);
  CHECK(search_homs(t, t).size() == 6);
}

TEST_CASE("unramified lifting") {
  {
    const auto h = hf(qp(2, 20), 2);
    const auto phi = lift_unramified(identity_hom(h));
    CHECK(phi.x_image.is_zero());
    CHECK(phi.pi_image == I(h->field(), 2));
    CHECK(phi.agreement.mismatches == 0);
  }
  const auto k = f4_unramified();
  const auto h = hf(k, 1);
  const auto homs = search_homs(h, h);
  REQUIRE(homs.size() == 2);
  std::vector<FieldElem> xs;
  for (const auto& f : homs) {
    const auto phi = lift_unramified(f);
    const auto x = phi.x_image;
    CHECK((x * x + x + I(k, 1)).is_zero());
    CHECK(phi.agreement.mismatches == 0);
    xs.push_back(x);
  }
  CHECK_FALSE(xs[0] == xs[1]);
  // level 2: f([3]) = [Phi(3)] on 100 samples via the identity
  const auto h2 = hf(k, 2);
  const auto phi = lift_unramified(identity_hom(h2));
  CHECK(phi.agreement.samples == 100);
  CHECK(phi.agreement.mismatches == 0);
  CHECK(h2->class_of(phi.apply(I(k, 3))) == h2->class_of_int(3));
}

TEST_CASE("tame lifting") {
  const auto K = ramified(5, {-5, 0, 1});
  const auto L = ramified(5, {-20, 0, 1});
  const auto a = hf(K, 1), b = hf(L, 1);
  const auto isos = search_isos(a, b);
  REQUIRE_FALSE(isos.empty());
  for (const auto& f : isos) {
    const auto phi = lift_tame(f);
    CHECK(phi.pi_image * phi.pi_image == I(L, 5));
    CHECK(b->class_of(phi.pi_image) == f.pi_image);
    CHECK(phi.agreement.samples == 100);
    CHECK(phi.agreement.mismatches == 0);
    const auto again = lift_tame(f);
    CHECK(again.pi_image.to_string() == phi.pi_image.to_string());
    // homomorphism properties on random pairs
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
      const auto x = random_nonzero(K, rng, 3), y = random_nonzero(K, rng, 3);
      CHECK(phi.apply(x * y) == phi.apply(x) * phi.apply(y));
      CHECK(phi.apply(x + y) == phi.apply(x) + phi.apply(y));
      CHECK(phi.apply(x).valuation() == x.valuation());
    }
  }
  // identity: pi' = pi; pi -> [-pi]: pi' = -pi
  const auto id = identity_hom(a);
  CHECK(lift_tame(id).pi_image == Pi(K));
  auto neg = id;
  neg.pi_image = a->neg(id.pi_image);
  CHECK(lift_tame(neg).pi_image == -Pi(K));
  // preconditions
  CHECK_THROWS_AS(lift_tame(identity_hom(hf(ramified(2, {-2, 0, 1}), 3))), Error);
  try {
    (void)lift_tame(identity_hom(hf(ramified(5, {5, 5, 1}), 1)));
    FAIL("expected NotNormalForm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormalForm);
  }
}

TEST_CASE("tame normal form") {
  const auto k = ramified(5, {5, 5, 1});  // X^2 + 5X + 5
  const auto nf = tame_normal_form(k);
  const auto& eis = nf.field->spec().eis;
  CHECK(eis[1] == Coeffs{0});
  CHECK(nf.new_pi.valuation() == 1);
  // new_pi^2 = -eis[0] in the old field
  CHECK(nf.new_pi * nf.new_pi == FieldElem::from_int(k, -eis[0][0]));
  CHECK(m_nu(nf.field).M_int == m_nu(k).M_int);
  CHECK_THROWS_AS(tame_normal_form(ramified(2, {2, 2, 1})), Error);
}

TEST_CASE("lifting over a subfield") {
  {
    const auto K = ramified(5, {-5, 0, 1});
    const auto L = ramified(5, {-20, 0, 1});
    const auto f = search_isos(hf(K, 1), hf(L, 1)).front();
    const auto K0 = unramified_subfield(K);
    const EmbeddingSpec phi0{K0, L, FieldElem::zero(L), I(L, 5), {}};
    const auto over = lift_over(phi0, f);
    const auto tame = lift_tame(f);
    CHECK(over.pi_image == tame.pi_image);
    CHECK(over.agreement.mismatches == 0);
  }
  {
    const auto K = f4_tower();
    const auto h = hf(K, 1);
    const auto K0 = unramified_subfield(K);
    const auto x = FieldElem::from_coeffs(K, K->raw_basis(0, 1));
    const EmbeddingSpec frob{K0, K, -x - I(K, 1), I(K, 2), {}};
    const auto homs = search_homs(h, h);
    int extended = 0, mismatched = 0;
    for (const auto& f : homs) {
      try {
        const auto phi = lift_over(frob, f);
        CHECK(phi.x_image == -x - I(K, 1));
        CHECK(phi.pi_image.pow(3) == I(K, 2));
        CHECK(phi.agreement.mismatches == 0);
        ++extended;
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RestrictionMismatch);
        ++mismatched;
      }
    }
    CHECK(extended == 3);
    CHECK(mismatched == 3);
  }
}

TEST_CASE("wild lifting") {
  const auto K = ramified(2, {-2, 0, 1}, 40);
  CHECK_THROWS_AS(lift_wild(identity_hom(hf(K, 2))), Error);
  try {
    (void)lift_wild(identity_hom(hf(K, 2)));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ThresholdNotMet);
  }
  const auto h = hf(K, 13);
  const auto id = identity_hom(h);
  const auto phi = lift_wild(id);
  CHECK(phi.pi_image * phi.pi_image == I(K, 2));
  CHECK((phi.pi_image == Pi(K) || phi.pi_image == -Pi(K)));
  CHECK(phi.agreement.mismatches == 0);
  const auto seeded = lift_wild(id, Pi(K) * (I(K, 1) + Pi(K, 13)));
  CHECK(seeded.pi_image * seeded.pi_image == I(K, 2));
}
