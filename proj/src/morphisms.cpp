#include "vhf/morphisms.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "vhf/ramification.hpp"

namespace vhf {

namespace {

// ---------------------------------------------------------------- unit groups

struct UnitArith {
  const Hyperfield& h;
  const FieldModel& k;
  explicit UnitArith(const Hyperfield& hh) : h(hh), k(hh.model()) {}
  Coeffs mul(const Coeffs& a, const Coeffs& b) const { return k.raw_truncate(k.raw_mul(a, b), h.n()); }
  Coeffs pow(Coeffs a, long e) const {
    Coeffs r = k.raw_truncate(k.raw_from_int(1), h.n());
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
};

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

long element_order(const UnitArith& ar, const Coeffs& x, long group_order, const Coeffs& one) {
  long o = group_order;
  for (long r : prime_factors(group_order))
    while (o % r == 0 && ar.pow(x, o / r) == one) o /= r;
  return o;
}

struct Decomposer {
  const UnitArith& ar;
  const std::vector<Coeffs>& units;
  const std::map<Coeffs, int>& index;
  const std::vector<long>& orders;  // per unit
  Coeffs one;
  long target;
  int budget = 10000;  // backtracking nodes

  // H: unit index -> exponent vector over the chosen generators
  bool extend(std::map<int, std::vector<long>>& H, std::vector<int>& gens) {
    if (static_cast<long>(H.size()) == target) return true;
    if (--budget < 0) return false;
    std::vector<int> cands;
    for (int i = 0; i < static_cast<int>(units.size()); ++i)
      if (!H.count(i)) cands.push_back(i);
    std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) { return orders[a] > orders[b]; });
    long best = 0;
    for (int c : cands) {
      const long o = orders[c];
      if (best && o < best) break;  // only elements of the largest admissible order
      if (static_cast<long>(H.size()) * o > target || target % (static_cast<long>(H.size()) * o) != 0) continue;
      // <c> meets H trivially?
      bool trivial = true;
      Coeffs y = one;
      std::vector<int> powers{index.at(one)};
      for (long t = 1; t < o; ++t) {
        y = ar.mul(y, units[c]);
        const int yi = index.at(y);
        if (H.count(yi)) {
          trivial = false;
          break;
        }
        powers.push_back(yi);
      }
      if (!trivial) continue;
      best = o;
      std::map<int, std::vector<long>> H2;
      for (const auto& [hi, ex] : H) {
        Coeffs z = units[hi];
        for (long t = 0; t < o; ++t) {
          auto ex2 = ex;
          ex2.push_back(t);
          H2.emplace(index.at(z), std::move(ex2));
          z = ar.mul(z, units[c]);
        }
      }
      gens.push_back(c);
      if (extend(H2, gens)) {
        H.swap(H2);
        return true;
      }
      gens.pop_back();
    }
    return false;
  }
};

// ---------------------------------------------------------------- targets

std::string class_label(const Hyperfield& h, const HfClass& c) {
  if (c.zero) return "[0]";
  const auto& k = h.model();
  if (k.e() == 1 && k.f() == 1 && c.gamma >= 0 && c.gamma < 32) {
    Int v = c.unit[0];
    for (int i = 0; i < c.gamma; ++i) v *= k.p();
    return "[" + v.get_str() + "]";
  }
  return "[" + h.to_string(c) + "]";
}

struct HfTarget {
  const Hyperfield& h;
  using C = HfClass;
  using S = HfSumBall;
  C zero() const { return h.zero(); }
  C one() const { return h.one(); }
  C mul(const C& a, const C& b) const { return h.mul(a, b); }
  std::optional<int> val(const C& a) const { return h.valuation(a); }
  S sum(const C& a, const C& b) const { return h.multiadd(a, b); }
  bool contains(const S& s, const C& c) const { return h.sum_contains(s, c); }
  std::string str(const C& c) const { return class_label(h, c); }
};

// Krasner's hyperfield {0, 1}: 1 + 1 = {0, 1}, trivial valuation.
struct KrasnerTarget {
  using C = int;
  using S = unsigned;  // bit set of members
  C zero() const { return 0; }
  C one() const { return 1; }
  C mul(C a, C b) const { return a & b; }
  std::optional<int> val(C a) const { return a ? std::optional<int>(0) : std::nullopt; }
  S sum(C a, C b) const {
    if (a && b) return 3u;
    return (a || b) ? 2u : 1u;
  }
  bool contains(S s, C c) const { return (s >> c) & 1u; }
  std::string str(C c) const { return c ? "1" : "0"; }
};

bool val_le(std::optional<int> a, std::optional<int> b) {
  if (!b) return true;   // anything <= infinity
  if (!a) return false;  // infinity <= finite
  return *a <= *b;
}

HfClass random_class(const Hyperfield& h, std::mt19937_64& rng, int window) {
  if (rng() % 20 == 0) return h.zero();
  const auto& U = h.units();
  const int g = static_cast<int>(rng() % (2 * window + 1)) - window;
  return HfClass{false, g, U[rng() % U.size()]};
}

template <class Target, class Map>
HomReport run_checks(const Hyperfield& src, const UnitGroup& ug, const Target& T, const Map& f,
                     const HomBudget& budget) {
  HomReport rep;
  const int n = src.n();
  std::mt19937_64 rng(budget.seed);

  ConditionResult c1{"1", true, 0, {}};
  c1.checked = 2;
  if (!(f(src.zero()) == T.zero())) {
    c1.pass = false;
    c1.witness = "f(0) = " + T.str(f(src.zero()));
  } else if (!(f(src.one()) == T.one())) {
    c1.pass = false;
    c1.witness = "f(1) = " + T.str(f(src.one()));
  }
  rep.conditions.push_back(c1);

  ConditionResult c2{"2", true, 0, {}};
  for (std::size_t i = 0; i < ug.gens.size() && c2.pass; ++i) {
    const HfClass g = src.make(0, ug.gens[i]);
    auto r = T.one();
    for (long t = 0; t < ug.orders[i]; ++t) r = T.mul(r, f(g));
    ++c2.checked;
    if (!(r == T.one())) {
      c2.pass = false;
      c2.witness = "generator " + class_label(src, g) + " of order " + std::to_string(ug.orders[i]) +
                   " maps to " + T.str(f(g));
    }
  }
  for (long t = 0; t < budget.random_pairs && c2.pass; ++t) {
    const auto a = random_class(src, rng, budget.window), b = random_class(src, rng, budget.window);
    ++c2.checked;
    if (!(f(src.mul(a, b)) == T.mul(f(a), f(b)))) {
      c2.pass = false;
      c2.witness = "(" + class_label(src, a) + ", " + class_label(src, b) + ")";
    }
  }
  rep.conditions.push_back(c2);

  ConditionResult c3{"3", true, 0, {}};
  auto sum_ok = [&](const HfClass& a, const HfClass& b) {
    const auto s = src.multiadd(a, b);
    const auto t = T.sum(f(a), f(b));
    // members of valuation above the radius lie in the tail {v >= radius},
    // which is covered once its first layer is
    for (const auto& m : src.sum_members(s, s.radius)) {
      ++c3.checked;
      if (!T.contains(t, f(m))) {
        c3.pass = false;
        c3.witness = "(" + class_label(src, a) + ", " + class_label(src, b) + ") member " + class_label(src, m);
        return false;
      }
    }
    return true;
  };
  // f(a + b) = f(a) f(1 + b/a), so a = 1 suffices; b = pi^k u with k < 0 is
  // the symmetric case, and k > n only has the singleton sum {[1]}.
  for (int k = 0; k <= n && c3.pass; ++k)
    for (const auto& u : src.units())
      if (!sum_ok(src.one(), HfClass{false, k, u})) break;
  if (c3.pass) (void)sum_ok(src.one(), src.zero());
  for (long t = 0; t < budget.random_pairs && c3.pass; ++t)
    (void)sum_ok(random_class(src, rng, budget.window), random_class(src, rng, budget.window));
  rep.conditions.push_back(c3);

  ConditionResult c4{"4", true, 0, {}};
  std::vector<HfClass> S{src.zero()};
  std::vector<Coeffs> unit_samples{src.one().unit};
  for (const auto& g : ug.gens) unit_samples.push_back(g);
  std::vector<int> gammas;
  for (int k = 0; k <= budget.window; ++k) gammas.push_back(k);
  for (int k = 1; k <= budget.window; ++k) gammas.push_back(-k);
  for (int g : gammas)
    for (const auto& u : unit_samples) S.push_back(HfClass{false, g, u});
  for (const auto& b : S) {
    for (const auto& a : S) {
      ++c4.checked;
      const bool lhs = val_le(src.valuation(a), src.valuation(b));
      const bool rhs = val_le(T.val(f(a)), T.val(f(b)));
      if (lhs != rhs) {
        c4.pass = false;
        c4.witness = "(" + class_label(src, a) + ", " + class_label(src, b) + ")";
        break;
      }
    }
    if (!c4.pass) break;
  }
  rep.conditions.push_back(c4);
  return rep;
}

std::shared_ptr<const UnitGroup> group_of(const Hyperfield& h) {
  return std::make_shared<const UnitGroup>(unit_group_gens(h));
}

}  // namespace

UnitGroup unit_group_gens(const Hyperfield& h, std::size_t cap) {
  const auto& U = h.units();
  require(U.size() <= cap, ErrorKind::BudgetExceeded,
          "unit group of order " + std::to_string(U.size()) + " exceeds the cap");
  UnitArith ar(h);
  UnitGroup g;
  for (int i = 0; i < static_cast<int>(U.size()); ++i) g.index.emplace(U[i], i);
  const Coeffs one = h.one().unit;
  const long order = static_cast<long>(U.size());
  std::vector<long> orders(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) orders[i] = element_order(ar, U[i], order, one);

  Decomposer d{ar, U, g.index, orders, one, order};
  std::map<int, std::vector<long>> H{{g.index.at(one), {}}};
  std::vector<int> gens;
  require(d.extend(H, gens), ErrorKind::BudgetExceeded, "unit group decomposition did not finish");
  for (int gi : gens) {
    g.gens.push_back(U[gi]);
    g.orders.push_back(orders[gi]);
  }
  g.exps.resize(U.size());
  for (auto& [idx, ex] : H) g.exps[idx] = std::move(ex);
  return g;
}

// ---------------------------------------------------------------- HyperfieldHom

HyperfieldHom::HyperfieldHom(HomSpec spec) : HyperfieldHom(spec, group_of(*spec.source)) {}

HyperfieldHom::HyperfieldHom(HomSpec spec, std::shared_ptr<const UnitGroup> units)
    : spec_(std::move(spec)), units_(std::move(units)) {
  require(spec_.source && spec_.target, ErrorKind::InvalidInput, "hom needs source and target");
  require(spec_.unit_images.size() == units_->gens.size(), ErrorKind::InvalidInput,
          "expected one image per unit generator (" + std::to_string(units_->gens.size()) + ")");
  const Hyperfield& T = *spec_.target;
  std::vector<std::vector<HfClass>> powers(units_->gens.size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    powers[i].push_back(T.one());
    for (long t = 1; t < units_->orders[i]; ++t) powers[i].push_back(T.mul(powers[i].back(), spec_.unit_images[i]));
  }
  table_.reserve(units_->exps.size());
  for (const auto& ex : units_->exps) {
    HfClass r = T.one();
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (ex[i]) r = T.mul(r, powers[i][ex[i]]);
    table_.push_back(std::move(r));
  }
}

HfClass HyperfieldHom::operator()(const HfClass& a) const {
  const Hyperfield& T = *spec_.target;
  if (a.zero) return T.zero();
  const auto it = units_->index.find(a.unit);
  require(it != units_->index.end(), ErrorKind::InvalidInput, "class unit is not canonical");
  return T.mul(T.pow(spec_.pi_image, a.gamma), table_[it->second]);
}

HomSpec identity_hom(const HyperfieldPtr& h) {
  const UnitGroup ug = unit_group_gens(*h);
  HomSpec s;
  s.source = s.target = h;
  for (const auto& g : ug.gens) s.unit_images.push_back(h->make(0, g));
  s.pi_image = h->make(1, h->model().raw_from_int(1));
  return s;
}

// ---------------------------------------------------------------- checks

bool HomReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
}

void HomReport::require_pass() const {
  for (const auto& c : conditions)
    if (!c.pass) fail(ErrorKind::HomViolation, "condition (" + c.id + ") fails at " + c.witness);
}

const ConditionResult& HomReport::condition(const std::string& id) const {
  for (const auto& c : conditions)
    if (c.id == id) return c;
  fail(ErrorKind::InvalidInput, "no condition " + id);
}

HomReport check_hom(const HyperfieldHom& f, const HomBudget& budget) {
  const auto& spec = f.spec();
  const Hyperfield& S = *spec.source;
  const Hyperfield& T = *spec.target;
  HomReport rep = run_checks(S, f.units(), HfTarget{T}, f, budget);
  if (spec.over_p) {
    ConditionResult op{"over_p", true, 0, {}};
    op.checked = 1;
    const Int p = S.model().p();
    require(p == T.model().p(), ErrorKind::InvalidInput, "source and target have different p");
    const HfClass img = f(S.class_of_int(p));
    if (img != T.class_of_int(p)) {
      op.pass = false;
      op.witness = "f([p]) = " + T.to_string(img);
    }
    rep.conditions.push_back(op);
  }
  return rep;
}

HomReport check_hom(const HomSpec& spec, const HomBudget& budget) { return check_hom(HyperfieldHom(spec), budget); }

HomReport check_krasner_quotient(const Hyperfield& h, const HomBudget& budget) {
  const UnitGroup ug = unit_group_gens(h);
  auto f = [](const HfClass& a) { return a.zero ? 0 : 1; };
  return run_checks(h, ug, KrasnerTarget{}, f, budget);
}

// ---------------------------------------------------------------- search

namespace {

bool spec_less(const HomSpec& a, const HomSpec& b) {
  return std::tie(a.pi_image, a.unit_images) < std::tie(b.pi_image, b.unit_images);
}

}  // namespace

std::vector<HomSpec> search_homs(const HyperfieldPtr& src, const HyperfieldPtr& dst, const SearchOptions& opt) {
  require(src->model().p() == dst->model().p(), ErrorKind::InvalidInput, "source and target have different p");
  const auto ug = group_of(*src);
  UnitArith dar(*dst);
  const Coeffs one = dst->one().unit;
  std::vector<std::vector<HfClass>> choices;
  for (long o : ug->orders) {
    std::vector<HfClass> c;
    for (const auto& w : dst->units())
      if (dar.pow(w, o) == one) c.push_back(dst->make(0, w));
    choices.push_back(std::move(c));
  }
  std::vector<HfClass> pis;
  for (const auto& w : dst->units()) pis.push_back(HfClass{false, 1, w});

  std::size_t total = pis.size();
  for (const auto& c : choices) {
    require(c.empty() || total <= opt.candidate_cap / c.size(), ErrorKind::BudgetExceeded,
            "hom search space exceeds the candidate cap");
    total *= c.size();
  }
  require(total <= opt.candidate_cap, ErrorKind::BudgetExceeded, "hom search space exceeds the candidate cap");

  std::vector<HomSpec> found;
  std::mutex mu;
  auto work = [&](std::size_t start, std::size_t stride) {
    std::vector<HomSpec> local;
    for (std::size_t idx = start; idx < total; idx += stride) {
      std::size_t r = idx;
      HomSpec s;
      s.source = src;
      s.target = dst;
      s.over_p = opt.over_p;
      for (const auto& c : choices) {
        s.unit_images.push_back(c[r % c.size()]);
        r /= c.size();
      }
      s.pi_image = pis[r];
      const HyperfieldHom f(s, ug);
      // cheap filter before the full check
      if (opt.over_p && f(src->class_of_int(src->model().p())) != dst->class_of_int(dst->model().p())) continue;
      if (check_hom(f, opt.budget).all_pass()) local.push_back(std::move(s));
    }
    std::lock_guard lock(mu);
    for (auto& s : local) found.push_back(std::move(s));
  };
  const int threads = std::max(1, opt.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  std::sort(found.begin(), found.end(), spec_less);
  return found;
}

std::vector<HomSpec> search_isos(const HyperfieldPtr& src, const HyperfieldPtr& dst, SearchOptions opt) {
  opt.over_p = true;
  if (src->units().size() != dst->units().size()) return {};
  const auto ug = group_of(*src);
  std::vector<HomSpec> out;
  for (auto& s : search_homs(src, dst, opt)) {
    const HyperfieldHom f(s, ug);
    std::set<HfClass> images;
    bool units_to_units = true;
    for (std::size_t i = 0; i < src->units().size(); ++i) {
      images.insert(f.unit_image(static_cast<int>(i)));
      units_to_units = units_to_units && f.unit_image(static_cast<int>(i)).gamma == 0;
    }
    if (units_to_units && images.size() == src->units().size()) out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------- embeddings

FieldElem EmbeddingSpec::apply(const FieldElem& a) const {
  require(a.field() == source, ErrorKind::MixedFields, "element of another field");
  if (a.is_exact_zero()) return FieldElem::zero(target);
  if (a.state() != FieldElem::State::Nonzero) return FieldElem::approx_zero(target, a.abs_prec());
  const FieldModel& k = *source;
  const Coeffs& u = a.unit();
  std::vector<FieldElem> xp{FieldElem::one(target)};
  for (int j = 1; j < k.f(); ++j) xp.push_back(xp.back() * x_image);
  FieldElem acc = FieldElem::zero(target), pip = FieldElem::one(target);
  for (int i = 0; i < k.e(); ++i) {
    FieldElem w = FieldElem::zero(target);
    for (int j = 0; j < k.f(); ++j)
      if (u[i * k.f() + j] != 0) w += FieldElem::from_int(target, u[i * k.f() + j]) * xp[j];
    acc += w * pip;
    pip *= pi_image;
  }
  if (a.rel_prec() < acc.abs_prec()) acc = acc.with_abs_prec(a.rel_prec());
  return acc * pi_image.pow(a.shift());
}

namespace {

Poly int_poly(const Field& k, const Coeffs& c) {
  Poly P;
  for (const auto& x : c) P.push_back(FieldElem::from_int(k, x));
  return P;
}

// Image of x: the root of h in the target lifting the residue image of [x].
FieldElem x_image_for(const HyperfieldHom& f) {
  const HomSpec& spec = f.spec();
  const Hyperfield& S = *spec.source;
  const Hyperfield& T = *spec.target;
  const FieldModel& k = S.model();
  const Field& L = T.field();
  if (k.f() == 1) return FieldElem::zero(L);
  const HfClass img = f(S.make(0, k.raw_basis(0, 1)));
  require(!img.zero && img.gamma == 0, ErrorKind::IncompatibleResidueEmbedding,
          "image of [x] is not a unit class");
  const Coeffs r = L->raw_residue(img.unit);
  const Poly h = int_poly(L, k.spec().h);
  const FieldElem seed = FieldElem::from_coeffs(L, L->raw_lift_residue(r));
  // the residue image must be a root of h mod p
  const FieldElem hv = poly_eval(h, seed);
  require(hv.is_zero() || *hv.valuation() > 0, ErrorKind::IncompatibleResidueEmbedding,
          "residue image of x is not a root of h");
  return hensel_root(h, seed);
}

// Image under phi of a W element given by coefficients.
FieldElem w_image(const Field& L, const FieldElem& x_image, const Coeffs& w) {
  FieldElem acc = FieldElem::zero(L), xp = FieldElem::one(L);
  for (const auto& c : w) {
    acc += FieldElem::from_int(L, c) * xp;
    xp *= x_image;
  }
  return acc;
}

FieldElem random_source_elem(const Field& k, std::mt19937_64& rng) {
  Coeffs raw(k->dim());
  const int M = k->storage_exponent();
  while (true) {
    for (auto& c : raw) {
      c = 0;
      for (int d = 0; d < M; ++d) c = c * k->p() + Int(static_cast<unsigned long>(rng() % k->p().get_ui()));
    }
    auto a = FieldElem::from_coeffs(k, raw);
    if (a.is_zero() || a.shift() != 0) continue;
    const int s = static_cast<int>(rng() % 7) - 3;
    return a * FieldElem::uniformizer_power(k, s);
  }
}

Agreement measure(const EmbeddingSpec& phi, const HyperfieldHom& f, int samples) {
  Agreement ag;
  const HomSpec& spec = f.spec();
  const Hyperfield& S = *spec.source;
  const Hyperfield& T = *spec.target;
  std::mt19937_64 rng(11);
  std::vector<FieldElem> xs{FieldElem::one(phi.source), FieldElem::uniformizer_power(phi.source, 1)};
  if (phi.source->f() > 1) xs.push_back(FieldElem::from_coeffs(phi.source, phi.source->raw_basis(0, 1)));
  while (static_cast<int>(xs.size()) < samples) xs.push_back(random_source_elem(phi.source, rng));
  for (const auto& a : xs) {
    ++ag.samples;
    const HfClass want = f(S.class_of(a));
    const HfClass got = T.class_of(phi.apply(a));
    if (want != got) {
      ++ag.mismatches;
      if (ag.first_mismatch.empty())
        ag.first_mismatch = a.to_string() + ": f gives " + T.to_string(want) + ", Phi gives " + T.to_string(got);
    }
  }
  return ag;
}

bool is_tame(const FieldModel& k) { return vp(Int(k.e()), k.p()) == 0; }

EmbeddingSpec lift_tame_with(const HyperfieldHom& hom, const FieldElem& x_image, int samples) {
  const HomSpec& f = hom.spec();
  const Hyperfield& S = *f.source;
  const Hyperfield& T = *f.target;
  const FieldModel& k = S.model();
  const Field& L = T.field();
  require(is_tame(k), ErrorKind::NotTame, "source ramification index is divisible by p");
  require(f.over_p, ErrorKind::InvalidInput, "lifting needs a hom over p");
  const auto& eis = k.spec().eis;
  for (int i = 1; i < k.e(); ++i)
    for (const auto& c : eis[i])
      require(c == 0, ErrorKind::NotNormalForm, "source polynomial is not of the form X^e - p a");
  check_hom(hom).require_pass();
  // P = X^e - p a: a = -eis[0] / p
  Coeffs a;
  for (const auto& c : eis[0]) {
    Int q;
    require(mpz_divisible_p(c.get_mpz_t(), k.p().get_mpz_t()), ErrorKind::NotNormalForm, "constant term not in pW");
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), k.p().get_mpz_t());
    a.push_back(-q);
  }
  const FieldElem pa = FieldElem::from_int(L, k.p()) * w_image(L, x_image, a);
  const FieldElem pi0 = T.representative(f.pi_image);
  // Q(X) = X^e - p Phi(a) / pi0^e, solved from 1
  Poly Q(k.e() + 1, FieldElem::zero(L));
  Q[0] = -(pa / pi0.pow(k.e()));
  Q[k.e()] = FieldElem::one(L);
  const FieldElem b = hensel_root(Q, FieldElem::one(L));
  EmbeddingSpec phi{f.source->field(), L, x_image, b * pi0, {}};
  require(phi.pi_image.pow(k.e()) == pa, ErrorKind::HenselPreconditionFailed, "lifted uniformizer is not a root");
  phi.agreement = measure(phi, hom, samples);
  return phi;
}

}  // namespace

EmbeddingSpec lift_unramified(const HomSpec& f, int samples) {
  const FieldModel& k = f.source->model();
  const Field& L = f.target->field();
  require(k.e() == 1 && L->e() == 1, ErrorKind::InvalidInput, "lift_unramified needs unramified fields");
  require(f.over_p, ErrorKind::InvalidInput, "lifting needs a hom over p");
  const HyperfieldHom hom(f);
  EmbeddingSpec phi{f.source->field(), L, x_image_for(hom), FieldElem::zero(L), {}};
  // pi = -eis[0], a W element
  Coeffs c0 = k.spec().eis[0];
  for (auto& c : c0) c = -c;
  phi.pi_image = w_image(L, phi.x_image, c0);
  phi.agreement = measure(phi, hom, samples);
  return phi;
}

EmbeddingSpec lift_tame(const HomSpec& f, int samples) {
  require(is_tame(f.source->model()), ErrorKind::NotTame, "source ramification index is divisible by p");
  const HyperfieldHom hom(f);
  return lift_tame_with(hom, x_image_for(hom), samples);
}

EmbeddingSpec lift_over(const EmbeddingSpec& phi0, const HomSpec& f, int samples) {
  const FieldModel& k = f.source->model();
  const FieldModel& k0 = *phi0.source;
  require(is_tame(k), ErrorKind::NotTame, "source ramification index is divisible by p");
  require(k0.e() == 1 && k0.p() == k.p() && k0.f() == k.f() && k0.spec().h == k.spec().h, ErrorKind::InvalidInput,
          "phi0 must be defined on the unramified subfield");
  require(phi0.target == f.target->field(), ErrorKind::MixedFields, "phi0 and f have different targets");
  // f restricted to W must be the map induced by phi0
  const HyperfieldHom hom(f);
  const Hyperfield& S = *f.source;
  const Hyperfield& T = *f.target;
  std::mt19937_64 rng(5);
  for (int t = 0; t < samples; ++t) {
    const FieldElem w0 = random_source_elem(phi0.source, rng);
    Coeffs raw = k.raw_zero();
    const Coeffs wr = w0.unit();
    for (int j = 0; j < k.f(); ++j) raw[j] = wr[j];
    const FieldElem w =
        FieldElem::from_coeffs(f.source->field(), raw) * FieldElem::from_int(f.source->field(), k.p()).pow(w0.shift());
    if (hom(S.class_of(w)) != T.class_of(phi0.apply(w0)))
      fail(ErrorKind::RestrictionMismatch, "f differs from the map induced by phi0 at " + w0.to_string());
  }
  return lift_tame_with(hom, phi0.x_image, samples);
}

EmbeddingSpec lift_wild(const HomSpec& f, std::optional<FieldElem> seed, int samples) {
  const FieldModel& k = f.source->model();
  const Field& L = f.target->field();
  require(!is_tame(k), ErrorKind::InvalidInput, "tame source: use lift_tame");
  require(f.over_p, ErrorKind::InvalidInput, "lifting needs a hom over p");
  const RamificationReport rr = n_threshold(f.source->field());
  require(f.source->n() >= rr.n_min_conservative, ErrorKind::ThresholdNotMet,
          "level " + std::to_string(f.source->n()) + " is below the threshold " +
              std::to_string(rr.n_min_conservative));
  const HyperfieldHom hom(f);
  check_hom(hom).require_pass();
  const FieldElem x = x_image_for(hom);
  Poly P;
  for (const auto& c : k.spec().eis) P.push_back(w_image(L, x, c));
  const FieldElem pi0 = seed ? *seed : f.target->representative(f.pi_image);
  const KrasnerResult kr = krasner_refine(P, pi0);
  EmbeddingSpec phi{f.source->field(), L, x, kr.root, {}};
  phi.agreement = measure(phi, hom, samples);
  return phi;
}

Field unramified_subfield(const Field& k) {
  FieldSpec s = k->spec();
  s.e = 1;
  s.eis = {Coeffs{-k->p()}, Coeffs{1}};
  s.N = std::max(s.n + 4, (k->N() + k->e() - 1) / k->e());
  s.guard = -1;
  return FieldModel::make(s);
}

NormalForm tame_normal_form(const Field& k) {
  require(is_tame(*k), ErrorKind::NotTame, "normal form X^e - p a needs p not dividing e");
  const int e = k->e(), f = k->f();
  bool normal = true;
  for (int i = 1; i < e; ++i)
    for (const auto& c : k->spec().eis[i]) normal = normal && c == 0;
  if (normal) return {k, FieldElem::uniformizer_power(k, 1)};
  // pi^e = p eps with eps = 1 / p_unit_part; with w the W-part of eps and
  // c^e = w / eps, (pi c)^e = p w
  const FieldElem eps = FieldElem::from_coeffs(k, k->p_unit_part()).inv();
  const Coeffs eraw = eps.reduce_mod(k->cap());
  Coeffs wc(eraw.begin(), eraw.begin() + f);
  Coeffs wraw = k->raw_zero();
  std::copy(wc.begin(), wc.end(), wraw.begin());
  const FieldElem w = FieldElem::from_coeffs(k, wraw);
  Poly Q(e + 1, FieldElem::zero(k));
  Q[0] = -(w / eps);
  Q[e] = FieldElem::one(k);
  const FieldElem c = hensel_root(Q, FieldElem::one(k));
  const FieldElem pi1 = FieldElem::uniformizer_power(k, 1) * c;
  require(pi1.pow(e) == FieldElem::from_int(k, k->p()) * w, ErrorKind::NotNormalForm, "normal form check failed");
  FieldSpec s = k->spec();
  s.eis.assign(e + 1, Coeffs(f, 0));
  for (int j = 0; j < f; ++j) s.eis[0][j] = -k->p() * wc[j];
  s.eis[e] = Coeffs{1};
  return {FieldModel::make(s), pi1};
}

std::string to_string(const HomSpec& s) {
  std::ostringstream os;
  const UnitGroup ug = unit_group_gens(*s.source);
  os << "pi -> " << s.target->to_string(s.pi_image);
  for (std::size_t i = 0; i < ug.gens.size(); ++i)
    os << "; " << render_raw(s.source->model(), ug.gens[i]) << " -> " << s.target->to_string(s.unit_images[i]);
  return os.str();
}

}  // namespace vhf
