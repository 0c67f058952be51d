#include "vhf/hyperfield.hpp"

#include <algorithm>
#include <climits>
#include <random>
#include <sstream>

namespace vhf {

namespace {

constexpr int kInf = INT_MAX / 4;

HfSumBall only_zero_ball() {
  HfSumBall s;
  s.radius = kInf;
  s.contains_zero = true;
  s.center_val = kInf;
  s.only_zero = true;
  return s;
}

// All canonical representatives of O/m^level (units and non-units).
std::vector<Coeffs> residue_reps(const FieldModel& k, int level, std::size_t cap) {
  const int dim = k.dim();
  if (level <= 0) return {k.raw_zero()};
  std::vector<Int> moduli(dim);
  Int total = 1;
  for (int idx = 0; idx < dim; ++idx) {
    const int i = idx / k.f();
    const int t = level - i > 0 ? (level - i + k.e() - 1) / k.e() : 0;
    moduli[idx] = k.p_power(t);
    total *= moduli[idx];
  }
  require(total <= Int(static_cast<unsigned long>(cap)), ErrorKind::BudgetExceeded,
          "O/m^" + std::to_string(level) + " has " + total.get_str() + " elements");
  std::vector<Coeffs> out;
  Coeffs cur(dim, 0);
  while (true) {
    out.push_back(cur);
    int idx = dim - 1;
    while (idx >= 0) {
      cur[idx] += 1;
      if (cur[idx] < moduli[idx]) break;
      cur[idx] = 0;
      --idx;
    }
    if (idx < 0) break;
  }
  return out;
}

}  // namespace

Hyperfield::Hyperfield(Field k, int n) : k_(std::move(k)), n_(n) {
  require(k_ != nullptr, ErrorKind::InvalidInput, "hyperfield over a null field");
  require(n >= 1, ErrorKind::InvalidInput, "hyperfield level must be at least 1");
  require(k_->N() >= n + 4 * k_->e(), ErrorKind::PrecisionTooSmall,
          "N must be at least n + 4e for level " + std::to_string(n));
  units_ = enumerate_unit_reps(*k_, n, 1u << 20);
}

HfClass Hyperfield::one() const { return make(0, k_->raw_from_int(1)); }

HfClass Hyperfield::make(int gamma, const Coeffs& unit) const {
  HfClass c;
  c.zero = false;
  c.gamma = gamma;
  c.unit = k_->raw_truncate(unit, n_);
  require(!k_->residue_field().is_zero(k_->raw_residue(c.unit)), ErrorKind::InvalidInput,
          "class unit must have nonzero residue");
  return c;
}

HfClass Hyperfield::class_of(const FieldElem& a) const {
  require(a.field() == k_, ErrorKind::MixedFields, "element of another field");
  if (a.is_exact_zero()) return zero();
  require(a.state() == FieldElem::State::Nonzero && a.rel_prec() >= n_, ErrorKind::PrecisionExhausted,
          "element not known to relative precision n = " + std::to_string(n_));
  return make(a.shift(), a.unit());
}

HfClass Hyperfield::class_of_int(const Int& z) const { return class_of(FieldElem::from_int(k_, z)); }

FieldElem Hyperfield::representative(const HfClass& a) const {
  if (a.zero) return FieldElem::zero(k_);
  return FieldElem::from_unit(k_, a.gamma, a.unit, k_->cap());
}

HfClass Hyperfield::mul(const HfClass& a, const HfClass& b) const {
  if (a.zero || b.zero) return zero();
  HfClass c;
  c.zero = false;
  c.gamma = a.gamma + b.gamma;
  c.unit = k_->raw_truncate(k_->raw_mul(a.unit, b.unit), n_);
  return c;
}

HfClass Hyperfield::inv(const HfClass& a) const {
  require(!a.zero, ErrorKind::DivisionByZero, "inverse of the zero class");
  HfClass c;
  c.zero = false;
  c.gamma = -a.gamma;
  c.unit = k_->raw_truncate(k_->raw_unit_inverse(a.unit), n_);
  return c;
}

HfClass Hyperfield::neg(const HfClass& a) const {
  if (a.zero) return a;
  HfClass c = a;
  c.unit = k_->raw_truncate(k_->raw_neg(a.unit), n_);
  return c;
}

HfClass Hyperfield::pow(const HfClass& a, long k) const {
  if (k < 0) return pow(inv(a), -k);
  HfClass r = one(), b = a;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    k >>= 1;
    if (k) b = mul(b, b);
  }
  return r;
}

std::optional<int> Hyperfield::valuation(const HfClass& a) const {
  if (a.zero) return std::nullopt;
  return a.gamma;
}

HfSumBall Hyperfield::ball_around(int base, Coeffs w, int rel) const {
  HfSumBall s;
  s.radius = base + rel;
  const int v = rel > 0 ? k_->raw_valuation(k_->raw_truncate(w, rel), rel) : rel;
  if (v >= rel) {
    s.contains_zero = true;
    s.center_val = s.radius;
    return s;
  }
  s.center_val = base + v;
  s.center_unit = k_->raw_truncate(v == 0 ? w : k_->raw_div_pi_pow(k_->raw_truncate(w, rel), v), rel - v);
  return s;
}

HfSumBall Hyperfield::singleton(const HfClass& a) const {
  if (a.zero) return only_zero_ball();
  HfSumBall s;
  s.radius = a.gamma + n_;
  s.center_val = a.gamma;
  s.center_unit = a.unit;
  return s;
}

HfSumBall Hyperfield::multiadd(const HfClass& a, const HfClass& b) const {
  if (a.zero) return singleton(b);
  if (b.zero) return singleton(a);
  const HfClass& lo = a.gamma <= b.gamma ? a : b;
  const HfClass& hi = a.gamma <= b.gamma ? b : a;
  const int d = hi.gamma - lo.gamma;
  Coeffs w = d >= n_ ? lo.unit : k_->raw_add(lo.unit, k_->raw_mul_pi_pow(hi.unit, d));
  return ball_around(lo.gamma, std::move(w), n_);
}

HfSumBall Hyperfield::add_to(const HfSumBall& s, const HfClass& b) const {
  if (b.zero) return s;
  if (s.only_zero) return singleton(b);
  const int r = std::min(s.radius, b.gamma + n_);
  if (s.contains_zero) return ball_around(b.gamma, b.unit, r - b.gamma);
  const int base = std::min(s.center_val, b.gamma);
  const int rel = r - base;
  Coeffs w = k_->raw_zero();
  if (s.center_val - base < rel) w = k_->raw_add(w, k_->raw_mul_pi_pow(s.center_unit, s.center_val - base));
  if (b.gamma - base < rel) w = k_->raw_add(w, k_->raw_mul_pi_pow(b.unit, b.gamma - base));
  return ball_around(base, std::move(w), rel);
}

HfSumBall Hyperfield::multi_sum(const std::vector<HfClass>& xs) const {
  HfSumBall s = only_zero_ball();
  for (const auto& x : xs) s = add_to(s, x);
  return s;
}

HfSumBall Hyperfield::scale(const HfSumBall& s, const HfClass& c) const {
  if (c.zero) return only_zero_ball();
  if (s.only_zero) return s;
  HfSumBall r = s;
  r.radius += c.gamma;
  r.center_val += c.gamma;
  if (!s.contains_zero) r.center_unit = k_->raw_truncate(k_->raw_mul(s.center_unit, c.unit), s.radius - s.center_val);
  return r;
}

bool Hyperfield::is_single(const HfSumBall& s) const {
  return !s.contains_zero && s.radius - s.center_val == n_;
}

std::optional<HfClass> Hyperfield::single_member(const HfSumBall& s) const {
  if (s.only_zero) return zero();
  if (!is_single(s)) return std::nullopt;
  return HfClass{false, s.center_val, s.center_unit};
}

FieldElem Hyperfield::center(const HfSumBall& s) const {
  if (s.contains_zero) return FieldElem::zero(k_);
  return FieldElem::from_unit(k_, s.center_val, s.center_unit, s.radius - s.center_val);
}

bool Hyperfield::sum_contains(const HfSumBall& s, const HfClass& x) const {
  if (x.zero) return s.contains_zero;
  if (s.only_zero) return false;
  if (s.contains_zero) return x.gamma >= s.radius;
  return x.gamma == s.center_val && k_->raw_truncate(x.unit, s.radius - s.center_val) == s.center_unit;
}

bool Hyperfield::subset(const HfSumBall& a, const HfSumBall& b) const {
  if (a.only_zero) return b.contains_zero;
  if (b.only_zero) return false;
  if (a.radius < b.radius) return false;
  if (a.contains_zero) return b.contains_zero;
  if (b.contains_zero) return a.center_val >= b.radius;
  return a.center_val == b.center_val &&
         k_->raw_truncate(a.center_unit, b.radius - b.center_val) == b.center_unit;
}

std::vector<HfClass> Hyperfield::sum_members(const HfSumBall& s, int val_cutoff, std::size_t cap) const {
  std::vector<HfClass> out;
  if (s.contains_zero) {
    out.push_back(zero());
    if (s.only_zero) return out;
    for (int g = s.radius; g <= val_cutoff; ++g)
      for (const auto& u : units_) {
        require(out.size() < cap, ErrorKind::BudgetExceeded, "too many sum members");
        out.push_back(HfClass{false, g, u});
      }
    return out;
  }
  if (s.center_val > val_cutoff) return out;
  const int known = s.radius - s.center_val;  // <= n
  for (const auto& t : residue_reps(*k_, n_ - known, cap)) {
    Coeffs u = k_->raw_truncate(k_->raw_add(s.center_unit, k_->raw_mul_pi_pow(t, known)), n_);
    out.push_back(HfClass{false, s.center_val, std::move(u)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> Hyperfield::sum_valuation(const HfSumBall& s) const {
  if (s.contains_zero) return std::nullopt;
  return s.center_val;
}

std::vector<HfClass> Hyperfield::grid(int window, std::size_t cap) const {
  const std::size_t total = (2 * static_cast<std::size_t>(window) + 1) * units_.size() + 1;
  require(total <= cap, ErrorKind::BudgetExceeded, "grid has " + std::to_string(total) + " classes");
  std::vector<HfClass> out;
  out.reserve(total);
  out.push_back(zero());
  for (int g = -window; g <= window; ++g)
    for (const auto& u : units_) out.push_back(HfClass{false, g, u});
  return out;
}

std::string Hyperfield::to_string(const HfClass& a) const {
  if (a.zero) return "0";
  return "pi^" + std::to_string(a.gamma) + " * (" + render_raw(*k_, a.unit) + ")";
}

std::string Hyperfield::to_string(const HfSumBall& s) const {
  if (s.only_zero) return "{0}";
  std::ostringstream os;
  os << "Ball(center=";
  if (s.contains_zero) {
    os << "0";
  } else {
    os << "pi^" << s.center_val << " * (" << render_raw(*k_, s.center_unit) << ")";
  }
  os << ", radius=" << s.radius << ", zero=" << (s.contains_zero ? "true" : "false") << ")";
  return os.str();
}

// ---------------------------------------------------------------- compact form

CompactHyperfield::CompactHyperfield(const Hyperfield& h) : h_(h), n_(h.n()) {
  const FieldModel& k = h.model();
  const int dim = k.dim(), U = unit_count();
  radix_.assign(dim, 1);
  Int total = 1;
  for (int idx = dim - 1; idx >= 0; --idx) {
    radix_[idx] = total;
    const int i = idx / k.f();
    const int t = n_ - i > 0 ? (n_ - i + k.e() - 1) / k.e() : 0;
    total *= k.p_power(t);
  }
  require(total <= 1 << 24, ErrorKind::BudgetExceeded, "O/m^n too large for the compact form");
  code_to_index_.assign(total.get_ui(), -1);
  for (int u = 0; u < U; ++u) {
    Int code = 0;
    for (int idx = 0; idx < dim; ++idx) code += h.units()[u][idx] * radix_[idx];
    code_to_index_[code.get_ui()] = u;
  }
  one_ = index_of(k.raw_from_int(1));
  mul_.resize(static_cast<std::size_t>(U) * U);
  inv_.resize(U);
  neg_.resize(U);
  for (int a = 0; a < U; ++a) {
    const auto& ua = h.units()[a];
    inv_[a] = index_of(k.raw_truncate(k.raw_unit_inverse(ua), n_));
    neg_[a] = index_of(k.raw_truncate(k.raw_neg(ua), n_));
    for (int b = 0; b < U; ++b) mul_[a * U + b] = index_of(k.raw_truncate(k.raw_mul(ua, h.units()[b]), n_));
  }
  trunc_.assign(static_cast<std::size_t>(n_) * U, 0);
  for (int level = 1; level < n_; ++level)
    for (int u = 0; u < U; ++u) trunc_[level * U + u] = index_of(k.raw_truncate(h.units()[u], level));
  one_plus_.resize(static_cast<std::size_t>(n_) * U);
  const Coeffs one = k.raw_from_int(1);
  for (int d = 0; d < n_; ++d)
    for (int u = 0; u < U; ++u) {
      const Coeffs s = k.raw_truncate(k.raw_add(one, k.raw_mul_pi_pow(h.units()[u], d)), n_);
      const int v = k.raw_valuation(s, n_);
      one_plus_[d * U + u] = v >= n_ ? OnePlus{n_, -1}
                                     : OnePlus{v, index_of(k.raw_truncate(k.raw_div_pi_pow(s, v), n_ - v))};
    }
}

int CompactHyperfield::index_of(const Coeffs& unit) const {
  Int code = 0;
  for (std::size_t idx = 0; idx < unit.size(); ++idx) code += unit[idx] * radix_[idx];
  const int u = code_to_index_.at(code.get_ui());
  require(u >= 0, ErrorKind::InvalidInput, "not a canonical unit");
  return u;
}

CompactHyperfield::Class CompactHyperfield::encode(const HfClass& c) const {
  if (c.zero) return {};
  return {c.gamma, index_of(c.unit)};
}

HfClass CompactHyperfield::decode(const Class& c) const {
  if (c.zero()) return HfClass{};
  return HfClass{false, c.gamma, h_.units()[c.u]};
}

CompactHyperfield::Ball CompactHyperfield::encode(const HfSumBall& s) const {
  if (s.only_zero) return {kInf, kInf, -1, true, true};
  if (s.contains_zero) return {s.radius, s.radius, -1, true, false};
  return {s.radius, s.center_val, index_of(s.center_unit), false, false};
}

HfSumBall CompactHyperfield::decode(const Ball& b) const {
  if (b.only_zero) return only_zero_ball();
  HfSumBall s;
  s.radius = b.radius;
  s.contains_zero = b.contains_zero;
  s.center_val = b.cv;
  if (!b.contains_zero) s.center_unit = h_.units()[b.cu];
  return s;
}

CompactHyperfield::Class CompactHyperfield::mul(Class a, Class b) const {
  if (a.zero() || b.zero()) return {};
  return {a.gamma + b.gamma, mul_[a.u * unit_count() + b.u]};
}

CompactHyperfield::Class CompactHyperfield::inv(Class a) const {
  require(!a.zero(), ErrorKind::DivisionByZero, "inverse of the zero class");
  return {-a.gamma, inv_[a.u]};
}

CompactHyperfield::Class CompactHyperfield::neg(Class a) const {
  if (a.zero()) return a;
  return {a.gamma, neg_[a.u]};
}

CompactHyperfield::Ball CompactHyperfield::singleton(Class a) const {
  if (a.zero()) return {kInf, kInf, -1, true, true};
  return {a.gamma + n_, a.gamma, a.u, false, false};
}

// pi^base * x * (1 + pi^d * w) with radius base + rel, 1 <= rel <= n.
CompactHyperfield::Ball CompactHyperfield::around(int base, int x, int d, int w, int rel) const {
  if (d >= rel) return {base + rel, base, trunc(rel, x), false, false};
  const OnePlus t = one_plus_[d * unit_count() + w];
  if (t.v >= rel) return {base + rel, base + rel, -1, true, false};
  return {base + rel, base + t.v, trunc(rel - t.v, mul_[x * unit_count() + t.u]), false, false};
}

CompactHyperfield::Ball CompactHyperfield::multiadd(Class a, Class b) const {
  if (a.zero()) return singleton(b);
  if (b.zero()) return singleton(a);
  if (b.gamma < a.gamma) std::swap(a, b);
  return around(a.gamma, a.u, b.gamma - a.gamma, mul_[b.u * unit_count() + inv_[a.u]], n_);
}

CompactHyperfield::Ball CompactHyperfield::add_to(const Ball& s, Class b) const {
  if (b.zero()) return s;
  if (s.only_zero) return singleton(b);
  const int r = std::min(s.radius, b.gamma + n_);
  if (s.contains_zero) {
    const int rel = r - b.gamma;
    if (rel <= 0) return {r, r, -1, true, false};
    return {r, b.gamma, trunc(rel, b.u), false, false};
  }
  if (s.cv <= b.gamma)
    return around(s.cv, s.cu, b.gamma - s.cv, mul_[b.u * unit_count() + inv_[s.cu]], r - s.cv);
  return around(b.gamma, b.u, s.cv - b.gamma, mul_[s.cu * unit_count() + inv_[b.u]], r - b.gamma);
}

CompactHyperfield::Ball CompactHyperfield::scale(const Ball& s, Class c) const {
  if (c.zero()) return {kInf, kInf, -1, true, true};
  if (s.only_zero) return s;
  Ball r = s;
  r.radius += c.gamma;
  r.cv += c.gamma;
  if (!s.contains_zero) r.cu = trunc(s.radius - s.cv, mul_[s.cu * unit_count() + c.u]);
  return r;
}

bool CompactHyperfield::contains(const Ball& s, Class x) const {
  if (x.zero()) return s.contains_zero;
  if (s.only_zero) return false;
  if (s.contains_zero) return x.gamma >= s.radius;
  return x.gamma == s.cv && trunc(s.radius - s.cv, x.u) == s.cu;
}

bool CompactHyperfield::subset(const Ball& a, const Ball& b) const {
  if (a.only_zero) return b.contains_zero;
  if (b.only_zero) return false;
  if (a.radius < b.radius) return false;
  if (a.contains_zero) return b.contains_zero;
  if (b.contains_zero) return a.cv >= b.radius;
  return a.cv == b.cv && trunc(b.radius - b.cv, a.cu) == b.cu;
}

// ---------------------------------------------------------------- axioms

bool AxiomReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.pass; });
}

namespace {

struct Recorder {
  AxiomResult r;
  explicit Recorder(std::string id) { r.axiom = std::move(id); }
  void check(bool ok, const std::function<std::string()>& witness) {
    ++r.checked;
    if (!ok && r.pass) {
      r.pass = false;
      r.witness = witness();
    }
  }
};

std::string triple(const Hyperfield& h, const HfClass& a, const HfClass& b, const HfClass& c) {
  return "(" + h.to_string(a) + ", " + h.to_string(b) + ", " + h.to_string(c) + ")";
}

std::string pair(const Hyperfield& h, const HfClass& a, const HfClass& b) {
  return "(" + h.to_string(a) + ", " + h.to_string(b) + ")";
}

int window_of(const Hyperfield& h, const AxiomBudget& b) { return b.window < 0 ? 2 * h.n() + 2 : b.window; }

}  // namespace

AxiomReport check_hyperfield_axioms(const Hyperfield& h, const AxiomBudget& budget) {
  const auto g = h.grid(window_of(h, budget), budget.grid_cap);
  // Every pair or triple of the grid with nonzero first entry a is a*(1, b, c)
  // with b, c in the doubled window.
  const auto g2 = h.grid(2 * window_of(h, budget), budget.grid_cap);
  Recorder ax_a("hf.a"), ax_b("hf.b"), ax_c("hf.c"), ax_d("hf.d"), ax_e("hf.e"), ax_f("hf.f"), ax_g("hf.g");

  for (const auto& a : g) {
    ax_a.check(h.mul(h.zero(), a).zero && h.mul(a, h.zero()).zero, [&] { return h.to_string(a); });
    const auto s = h.multiadd(a, h.zero());
    ax_e.check(h.single_member(s) == a && h.sum_members(s, a.zero ? 0 : a.gamma + h.n()) == std::vector{a},
               [&] { return h.to_string(a); });
    // Inverse: 0 in a + b exactly for b = -a.
    const HfClass na = h.neg(a);
    ax_f.check(h.sum_contains(h.multiadd(a, na), h.zero()), [&] { return h.to_string(a); });
  }
  const HfClass firsts[2] = {h.zero(), h.one()};
  for (const auto& a : firsts)
    for (const auto& b : g2) {
      ax_c.check(h.multiadd(a, b) == h.multiadd(b, a), [&] { return pair(h, a, b); });
      const bool zero_in = h.sum_contains(h.multiadd(a, b), h.zero());
      ax_f.check(zero_in == (b == h.neg(a)), [&] { return pair(h, a, b); });
    }

  // Triple axioms run on the compact form, which is first checked against
  // the direct implementation on every pair it will use.
  const CompactHyperfield c(h);
  Recorder engine("hf.engine");
  std::vector<CompactHyperfield::Class> cg;
  cg.reserve(g.size());
  for (const auto& x : g2) cg.push_back(c.encode(x));
  for (const auto& a : firsts)
    for (const auto& b : g2) {
      const auto ca = c.encode(a), cb = c.encode(b);
      engine.check(c.decode(c.multiadd(ca, cb)) == h.multiadd(a, b) && c.decode(c.mul(ca, cb)) == h.mul(a, b),
                   [&] { return pair(h, a, b); });
    }
  std::mt19937_64 rng(budget.seed);
  for (long t = 0; t < budget.random_triples; ++t) {
    const auto& a = g[rng() % g.size()];
    const auto& b = g[rng() % g.size()];
    const auto& x = g[rng() % g.size()];
    const auto s = h.multiadd(a, b);
    engine.check(c.decode(c.add_to(c.encode(s), c.encode(x))) == h.add_to(s, x) &&
                     c.decode(c.scale(c.encode(s), c.encode(x))) == h.scale(s, x),
                 [&] { return triple(h, a, b, x); });
  }

  auto triple_checks = [&](CompactHyperfield::Class a, CompactHyperfield::Class b, CompactHyperfield::Class x) {
    auto w = [&] { return triple(h, c.decode(a), c.decode(b), c.decode(x)); };
    ax_b.check(c.add_to(c.multiadd(a, b), x) == c.add_to(c.multiadd(b, x), a), w);
    ax_d.check(c.subset(c.scale(c.multiadd(a, b), x), c.multiadd(c.mul(a, x), c.mul(b, x))), w);
    ax_g.check(c.contains(c.multiadd(b, c.neg(x)), a) == c.contains(c.multiadd(a, x), b), w);
  };
  const CompactHyperfield::Class cfirst[2] = {{}, {0, c.one_index()}};
  for (const auto& a : cfirst)
    for (const auto& b : cg)
      for (const auto& x : cg) triple_checks(a, b, x);
  for (long t = 0; t < budget.random_triples; ++t)
    triple_checks(c.encode(g[rng() % g.size()]), c.encode(g[rng() % g.size()]), c.encode(g[rng() % g.size()]));

  AxiomReport rep;
  rep.rho = h.n();
  for (auto* r : {&ax_a, &ax_b, &ax_c, &ax_d, &ax_e, &ax_f, &ax_g, &engine}) rep.results.push_back(r->r);
  return rep;
}

AxiomReport check_valued_axioms(const Hyperfield& h, const AxiomBudget& budget) {
  const auto g = h.grid(window_of(h, budget), budget.grid_cap);
  const auto g2 = h.grid(2 * window_of(h, budget), budget.grid_cap);
  Recorder ax_a("vhf.a"), ax_b("vhf.b"), ax_c("vhf.c"), ax_d("vhf.d"), ax_e("vhf.e");
  for (const auto& a : g) ax_a.check(h.valuation(a).has_value() == !a.zero, [&] { return h.to_string(a); });

  auto pair_checks = [&](const HfClass& a, const HfClass& b) {
    const auto va = h.valuation(a), vb = h.valuation(b), vab = h.valuation(h.mul(a, b));
    ax_b.check(va && vb ? (vab && *vab == *va + *vb) : !vab, [&] { return pair(h, a, b); });
    if (a.zero || b.zero) return;
    const int m = std::min(*va, *vb);
    const auto s = h.multiadd(a, b);
    // Members of the sum, enumerated one step past the radius.
    const auto members = h.sum_members(s, s.radius);
    bool ok_c = true;
    std::vector<int> vals;
    for (const auto& x : members) {
      if (x.zero) continue;
      if (x.gamma < m) ok_c = false;
      vals.push_back(x.gamma);
    }
    ax_c.check(ok_c, [&] { return pair(h, a, b); });
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    ax_d.check(s.contains_zero || vals.size() == 1, [&] { return pair(h, a, b); });
    // rho = n: a closed ball of radius n + min. Singletons are the ball of
    // radius n + v around their class, which is the same statement.
    bool ok_e = s.radius == h.n() + m;
    if (!s.contains_zero) {
      // The closed ball {x : v(x - c) >= r} is exactly the member set: each
      // member's representative is in it, and the class of c + pi^r is a member.
      const auto c = h.center(s);
      for (const auto& x : members) {
        if (x.zero) continue;
        const auto d = h.representative(x) - c;
        if (!d.is_exact_zero() && d.valuation_lower_bound() < s.radius) ok_e = false;
      }
    }
    ax_e.check(ok_e, [&] { return pair(h, a, b); });
  };
  const HfClass firsts[2] = {h.zero(), h.one()};
  for (const auto& a : firsts)
    for (const auto& b : g2) pair_checks(a, b);
  std::mt19937_64 rng(budget.seed + 1);
  for (long t = 0; t < budget.random_triples; ++t) pair_checks(g[rng() % g.size()], g[rng() % g.size()]);

  AxiomReport rep;
  rep.rho = h.n();
  for (auto* r : {&ax_a, &ax_b, &ax_c, &ax_d, &ax_e}) rep.results.push_back(r->r);
  return rep;
}

std::vector<HfClass> units_part(const Hyperfield& h) {
  std::vector<HfClass> out{h.zero()};
  for (const auto& u : h.units()) out.push_back(HfClass{false, 0, u});
  return out;
}

std::vector<ResidueIsoEntry> residue_iso_level1(const Hyperfield& h) {
  require(h.n() == 1, ErrorKind::InvalidInput, "residue_iso_level1 needs n = 1");
  const FieldModel& k = h.model();
  const ResidueField& kf = k.residue_field();
  auto phi = [&](const HfClass& c) { return c.zero ? kf.zero() : k.raw_residue(c.unit); };
  // The image of a sum of units inside H(S): a single class of valuation 0, or a ball containing 0.
  auto sum_image = [&](const HfClass& a, const HfClass& b) -> Coeffs {
    const auto s = h.multiadd(a, b);
    if (s.contains_zero) return kf.zero();
    const auto one = h.single_member(s);
    require(one.has_value() && one->gamma == 0, ErrorKind::AxiomViolation,
            "sum of units is not a single unit class: " + h.to_string(s));
    return phi(*one);
  };

  std::vector<ResidueIsoEntry> table;
  const auto dom = units_part(h);
  for (const auto& c : dom) table.push_back({c, phi(c)});
  std::vector<Coeffs> images;
  for (const auto& t : table) images.push_back(t.residue);
  std::sort(images.begin(), images.end());
  require(std::adjacent_find(images.begin(), images.end()) == images.end() && Int(images.size()) == k.q(),
          ErrorKind::AxiomViolation, "residue map is not a bijection");
  for (const auto& a : dom)
    for (const auto& b : dom) {
      require(phi(h.mul(a, b)) == kf.mul(phi(a), phi(b)), ErrorKind::AxiomViolation,
              "residue map does not preserve multiplication at " + pair(h, a, b));
      require(sum_image(a, b) == kf.add(phi(a), phi(b)), ErrorKind::AxiomViolation,
              "residue map does not preserve addition at " + pair(h, a, b));
    }
  return table;
}

}  // namespace vhf
