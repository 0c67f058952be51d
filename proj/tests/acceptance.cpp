// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "fields.hpp"
#include "oracle.hpp"
#include "vhf/gauss.hpp"
#include "vhf/logic.hpp"
#include "vhf/morphisms.hpp"
#include "vhf/ramification.hpp"
#include "vhf/representatives.hpp"

using namespace vhf;
using namespace testfields;

namespace {

// Thrown by expect() with a description of the first failed check.
struct Failed {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failed{what};
}

HyperfieldPtr hf(const Field& k, int n) { return std::make_shared<const Hyperfield>(k, n); }

struct NamedField {
  std::string name;
  Field k;
};

std::vector<NamedField> grid_fields() {
  return {{"Q2", qp(2)}, {"Q3", qp(3)}, {"Q5", qp(5)},
          {"Q2(sqrt2)", ramified(2, {-2, 0, 1})}, {"Q5(sqrt5)", ramified(5, {-5, 0, 1})}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

// ---------------------------------------------------------------- criteria

std::string c1_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  long pairs = 0;
  for (const auto& [name, k] : grid_fields())
    for (int n = 1; n <= 3; ++n) {
      const Hyperfield h(k, n);
      const auto st = oracle::check_multiadd(h, 2 * n + 2, 500, 9);
      expect(st.mismatches == 0, name + " n=" + std::to_string(n) + ": " + st.first_mismatch);
      pairs += st.pairs;
    }
  const double s = seconds_since(t0);
  expect(s < 60, "took " + std::to_string(s) + " s");
  return std::to_string(pairs) + " pairs in " + std::to_string(static_cast<int>(s)) + " s";
}

std::string c2_axioms() {
  long checked = 0;
  for (const auto& [name, k] : grid_fields())
    for (int n = 1; n <= 3; ++n) {
      const Hyperfield h(k, n);
      for (const auto& rep : {check_hyperfield_axioms(h), check_valued_axioms(h)})
        for (const auto& r : rep.results) {
          expect(r.pass, name + " n=" + std::to_string(n) + " " + r.axiom + ": " + r.witness);
          checked += r.checked;
        }
    }
  return std::to_string(checked) + " instances";
}

std::string c3_residue() {
  const std::vector<NamedField> fields = {
      {"F2", qp(2)}, {"F3", qp(3)}, {"F5", qp(5)}, {"F4", unramified(2, {1, 1, 1})}};
  for (const auto& [name, k] : fields) {
    const Hyperfield h(k, 1);
    const auto& kf = k->residue_field();
    const auto table = residue_iso_level1(h);
    expect(Int(static_cast<long>(table.size())) == kf.order(), name + ": table size");
    std::map<HfClass, Coeffs> res;
    std::set<Coeffs> seen;
    for (const auto& e : table) {
      res[e.cls] = e.residue;
      seen.insert(e.residue);
    }
    expect(seen.size() == table.size(), name + ": not injective");
    for (const auto& a : table)
      for (const auto& b : table) {
        expect(res.at(h.mul(a.cls, b.cls)) == kf.mul(a.residue, b.residue), name + ": multiplication");
        const auto s = h.multiadd(a.cls, b.cls);
        const Coeffs want = kf.add(a.residue, b.residue);
        if (kf.is_zero(want)) continue;  // the sum of opposite units is multivalued
        const auto m = h.single_member(s);
        expect(m.has_value() && res.at(*m) == want, name + ": addition");
      }
  }
  return "F2, F3, F5, F4";
}

std::string c4_representatives() {
  std::mt19937_64 rng(4);
  const std::vector<Field> fields = {qp(2), qp(5), ramified(2, {-2, 0, 1}), ramified(5, {-5, 0, 1}),
                                     unramified(2, {1, 1, 1})};
  long lifts = 0, congr = 0, trips = 0;
  for (const auto& k : fields) {
    const auto& kf = k->residue_field();
    const auto elems = kf.elements();
    auto lift = [&](const Coeffs& beta) {
      return FieldElem::from_coeffs(k, k->raw_lift_residue(beta)) + random_integral(k, rng) * Pi(k);
    };
    for (int t = 0; t < 50; ++t, ++lifts) {
      const auto& beta = elems[1 + rng() % (elems.size() - 1)];
      const int l = static_cast<int>(rng() % 5);
      const auto lx = lambda_from_lift(lift(beta), l);
      expect(lx == lambda_from_lift(lift(beta), l), "lambda depends on the lift");
      Coeffs alpha = beta;
      for (int i = 0; i < l; ++i) alpha = kf.frobenius(alpha);
      expect(lambda_rep(k, alpha, l) == lx, "lambda from the residue differs");
    }
    for (int t = 0; t < 100; ++t, ++congr) {
      const auto a = random_integral(k, rng);
      p_power_congruence_check(a, a + random_integral(k, rng) * Pi(k), 4);
    }
    for (int l = 0; l <= 6; ++l)
      for (int t = 0; t < 10; ++t, ++trips) {
        const auto a = random_integral(k, rng);
        expect(digit_assemble(*k, digit_expand(a, l)) == a.reduce_mod(l + 1), "digit round trip");
      }
  }
  return std::to_string(lifts) + " lift pairs, " + std::to_string(congr) + " congruence pairs, " +
         std::to_string(trips) + " round trips";
}

std::string c5_gauss() {
  for (long p : {2L, 3L}) {
    const auto t = GaussElem::t(p, 24);
    expect(p_independent_set({t}), "{t} dependent");
    expect(!p_independent_check(t.pow(p)), "t^p independent");
  }
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-30, 30);
  std::uniform_int_distribution<int> deg(0, 8);
  int done = 0;
  while (done < 100) {
    const long p = done % 2 ? 3 : 2;
    const int l = done % 3;
    IntPoly num(deg(rng) + 1), den(deg(rng) + 1);
    for (auto& x : num) x = c(rng);
    for (auto& x : den) x = c(rng);
    den[0] = den[0] * p + 1;
    const auto a = GaussElem::from_polys(p, 24, num, den);
    if (a.is_zero() || *a.valuation() < 0) continue;
    const auto back = pbasis_assemble(pbasis_expand_t(a, l), 24);
    expect(congruent_mod(back, a, l + 1), "round trip of " + a.to_string());
    ++done;
  }
  return "100 fractions";
}

std::string c6_bounds() {
  expect(d_of(1, 2) == 1 && d_of(2, 2) == 4 && d_of(2, 5) == 2 && d_of(4, 2) == 12 && d_of(6, 3) == 12,
         "d(e) table");
  const auto k5 = ramified(5, {-5, 0, 1}), k2 = ramified(2, {-2, 0, 1});
  const auto m5 = m_nu(k5), m2 = m_nu(k2);
  expect(m5.M_p1 == Rational(1, 2), "M_p1 for Q5(sqrt5) is " + to_string(m5.M_p1));
  expect(m2.M_p1 == Rational(3, 2), "M_p1 for Q2(sqrt2) is " + to_string(m2.M_p1));
  expect(m_direct(*k5) == m5.M_int && m_direct(*k2) == m2.M_int, "conjugate cross-check");
  expect(n_threshold(k2).exceeds_strong_bound, "Q2(sqrt2) not flagged");
  expect(!n_threshold(k5).exceeds_strong_bound, "Q5(sqrt5) flagged");
  return "M_p1 = 1/2, 3/2";
}

std::string c7_tame() {
  const auto K = ramified(5, {-5, 0, 1}), L = ramified(5, {-20, 0, 1});
  const auto a = hf(K, 1), b = hf(L, 1);
  const auto isos = search_isos(a, b);
  expect(!isos.empty(), "no iso sqrt5 -> sqrt20");
  expect(search_isos(a, hf(ramified(5, {-10, 0, 1}), 1)).empty(), "iso sqrt5 -> sqrt10");
  for (const auto& f : isos) {
    const auto phi = lift_tame(f);
    expect(phi.pi_image * phi.pi_image == I(L, 5), "pi'^2 != 5");
    expect(phi.agreement.samples == 100 && phi.agreement.mismatches == 0, "agreement");
  }
  const std::vector<std::string> args = {"hom", "lift", "--src", "fields/q5sqrt5.json", "--dst",
                                         "fields/q5sqrt20.json", "--n", "1", "--index", "0", "--json"};
  int c1 = 0, c2 = 0;
  const auto o1 = run_cli(args, c1), o2 = run_cli(args, c2);
  expect(c1 == 0 && c2 == 0 && o1 == o2, "repeated runs differ");
  return std::to_string(isos.size()) + " isos, sha256 " + cli::sha256_hex(o1).substr(0, 12);
}

std::string c8_wild() {
  const auto K = ramified(2, {-2, 0, 1}, 44);
  const auto rep = n_threshold(K);
  expect(rep.n_min_conservative == 13, "threshold " + std::to_string(rep.n_min_conservative));
  expect(K->N() >= 40, "N too small");
  const auto phi = lift_wild(identity_hom(hf(K, 13)));
  expect(phi.pi_image * phi.pi_image == I(K, 2), "pi'^2 != 2");
  expect(phi.agreement.mismatches == 0, "agreement");
  const auto r = krasner_refine(eisenstein_poly(K), Pi(K) * (I(K, 1) + Pi(K, 13)));
  expect(r.root == Pi(K), "refined root");
  const int steps = r.newton_steps + r.search_steps;
  expect(steps <= 8, std::to_string(steps) + " steps");
  return "n=13, " + std::to_string(steps) + " refinement steps";
}

std::string c9_agreement() {
  const auto corpus = generate_corpus(50, 1);
  int rows = 0;
  for (const auto& k : {qp(2), ramified(5, {-5, 0, 1})}) {
    const Hyperfield h(k, k->e() == 1 ? 2 : 1);
    const auto rep = agreement_harness(corpus, h);
    expect(rep.disagreements == 0, std::to_string(rep.disagreements) + " disagreements");
    expect(rep.non_existential == 0, "non-existential translation");
    rows += static_cast<int>(rep.rows.size());
  }
  return std::to_string(rows) + " rows";
}

std::string c10_krasner() {
  const auto rep = check_krasner_quotient(Hyperfield(qp(2), 1));
  for (const char* id : {"1", "2", "3"}) expect(rep.condition(id).pass, std::string("condition ") + id);
  const auto& c4 = rep.condition("4");
  expect(!c4.pass && !c4.witness.empty(), "condition 4 did not fail");
  return "condition 4 witness " + c4.witness;
}

std::string c11_ake() {
  EvalOptions opt;
  opt.radius = 6;
  const auto phi = parse_vhf("exists x. x * x = phat");
  const Hyperfield yes(ramified(5, {-5, 0, 1}), 1), no(qp(5), 1);
  expect(eval_vhf(phi, yes, opt).is_true(), "vhf side over Q5(sqrt5)");
  const auto nv = eval_vhf(phi, no, opt);
  expect(nv.is_false() && nv.radius == 6, "vhf side over Q5: " + to_string(nv));
  expect(eval_val(translate(phi, 5, 2, 1), yes, opt).is_true(), "val side over Q5(sqrt5)");
  const auto vv = eval_val(translate(phi, 5, 1, 1), no, opt);
  expect(vv.is_false() && vv.radius == 6, "val side over Q5: " + to_string(vv));
  return "True / " + to_string(nv);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"multiadd matches brute-force coset sums", c1_oracle},
      {"hyperfield and valued hyperfield axioms", c2_axioms},
      {"level-1 residue isomorphisms", c3_residue},
      {"p-power representatives and digit expansions", c4_representatives},
      {"Gauss field p-basis expansions", c5_gauss},
      {"ramification bounds", c6_bounds},
      {"tame isomorphisms and lifting", c7_tame},
      {"wild lifting and Krasner refinement", c8_wild},
      {"translation agreement", c9_agreement},
      {"Krasner quotient is not a hom", c10_krasner},
      {"AKE demonstration", c11_ake},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string status = "PASS", detail;
    try {
      detail = criteria[i].second();
    } catch (const Failed& f) {
      status = "FAIL";
      detail = f.what;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    failed += status == "FAIL";
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", seconds_since(t0));
    std::cout << status << " [PRIMARY] " << (i + 1) << ". " << criteria[i].first << " (" << detail << ", " << time
              << ")" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}
