#include <algorithm>
#include <climits>
#include <map>
#include <set>

#include "vhf/logic.hpp"

namespace vhf {

std::string to_string(const TriBool& t) {
  switch (t.kind) {
    case TriBool::Kind::True: return "True";
    case TriBool::Kind::FalseWithinRadius:
      return t.definite ? "False" : "FalseWithinRadius(" + std::to_string(t.radius) + ")";
    case TriBool::Kind::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

// T true; F false outright; R false on the searched domain; U undecided.
enum class V { T, F, R, U };

V not_v(V a) {
  switch (a) {
    case V::T: return V::F;
    case V::F: return V::T;
    default: return V::U;
  }
}

V and_v(V a, V b) {
  if (a == V::F || b == V::F) return V::F;
  if (a == V::R || b == V::R) return V::R;
  if (a == V::U || b == V::U) return V::U;
  return V::T;
}

V or_v(V a, V b) {
  if (a == V::T || b == V::T) return V::T;
  if (a == V::U || b == V::U) return V::U;
  if (a == V::R || b == V::R) return V::R;
  return V::F;
}

struct Fold {
  bool complete;
  bool saw_u = false, saw_r = false;
  V exists_result() const { return saw_u ? V::U : (saw_r || !complete) ? V::R : V::F; }
  V forall_result() const { return saw_r ? V::R : saw_u ? V::U : complete ? V::T : V::U; }
};

TriBool finish(V v, int radius) {
  TriBool t;
  t.radius = radius;
  if (v == V::T) t.kind = TriBool::Kind::True;
  else if (v == V::U) t.kind = TriBool::Kind::Unknown;
  else {
    t.kind = TriBool::Kind::FalseWithinRadius;
    t.definite = v == V::F;
  }
  return t;
}

struct Budget {
  std::uint64_t cap, used = 0;
  void tick() {
    if (++used > cap) fail(ErrorKind::BudgetExceeded, "evaluation exceeded " + std::to_string(cap) + " nodes");
  }
};

[[noreturn]] void unbound(const std::string& name) {
  fail(ErrorKind::InvalidInput, "free variable " + name + " has no value");
}

// ---------------------------------------------------------------- L_vhf

struct VhfEngine {
  const Hyperfield& h;
  int radius;
  Budget budget;
  std::vector<HfClass> domain;
  std::vector<std::pair<std::string, HfClass>> env;
  // Existential variables pinned to a given value (witness checking).
  std::vector<std::pair<std::string, HfClass>> fixed = {};
  using Wit = std::vector<std::pair<std::string, HfClass>>;

  HfClass term(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t.name) return it->second;
        unbound(t.name);
      case Term::Kind::Num: return t.value == 0 ? h.zero() : h.one();
      case Term::Kind::Phat: return h.class_of_int(h.model().p());
      case Term::Kind::Mul: return h.mul(term(t.args[0]), term(t.args[1]));
      default: fail(ErrorKind::SortError, "not an L_vhf term: " + print(t));
    }
  }

  bool atom(const Formula& f) const {
    switch (f.rel) {
      case Formula::Rel::Eq: return term(f.terms[0]) == term(f.terms[1]);
      case Formula::Rel::Div: {
        const auto a = h.valuation(term(f.terms[0])), b = h.valuation(term(f.terms[1]));
        return !b || (a && *a <= *b);
      }
      case Formula::Rel::Plus:
        return h.sum_contains(h.multiadd(term(f.terms[0]), term(f.terms[1])), term(f.terms[2]));
      default: fail(ErrorKind::SortError, "not an L_vhf relation");
    }
  }

  V eval(const Formula& f, Wit& w) {
    budget.tick();
    switch (f.kind) {
      case Formula::Kind::True: return V::T;
      case Formula::Kind::False: return V::F;
      case Formula::Kind::Atom: return atom(f) ? V::T : V::F;
      case Formula::Kind::Not: {
        Wit tmp;
        return not_v(eval(f.subs[0], tmp));
      }
      case Formula::Kind::And: {
        Wit wl, wr;
        const V a = eval(f.subs[0], wl);
        if (a == V::F || a == V::R) return a;
        const V r = and_v(a, eval(f.subs[1], wr));
        if (r == V::T) w.insert(w.end(), wl.begin(), wl.end()), w.insert(w.end(), wr.begin(), wr.end());
        return r;
      }
      case Formula::Kind::Or:
      case Formula::Kind::Implies: {
        Wit wl, wr;
        V a = eval(f.subs[0], wl);
        if (f.kind == Formula::Kind::Implies) a = not_v(a), wl.clear();
        if (a == V::T) {
          w.insert(w.end(), wl.begin(), wl.end());
          return V::T;
        }
        const V r = or_v(a, eval(f.subs[1], wr));
        if (r == V::T) w.insert(w.end(), wr.begin(), wr.end());
        return r;
      }
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        const bool ex = f.kind == Formula::Kind::Exists;
        Fold fold{false};
        std::vector<HfClass> pinned;
        for (const auto& [name, c] : fixed)
          if (ex && name == f.var) pinned = {c};
        for (const auto& c : pinned.empty() ? domain : pinned) {
          env.emplace_back(f.var, c);
          Wit inner;
          const V v = eval(f.subs[0], inner);
          env.pop_back();
          if (ex && v == V::T) {
            w.emplace_back(f.var, c);
            w.insert(w.end(), inner.begin(), inner.end());
            return V::T;
          }
          if (!ex && v == V::F) return V::F;
          if (v == V::U) fold.saw_u = true;
          if (v == V::R) fold.saw_r = true;
        }
        return ex ? fold.exists_result() : fold.forall_result();
      }
    }
    return V::U;
  }
};

// ---------------------------------------------------------------- L_val

struct Val {
  Sort sort = Sort::K;
  FieldElem x;               // K
  Coeffs r;                  // k
  std::optional<long> g;     // G, nullopt for inf
};

struct ValEngine {
  const Hyperfield& h;
  const ResidueField& kf;
  int radius;
  Budget budget;
  std::vector<FieldElem> kdomain;
  std::vector<Coeffs> rdomain;
  std::vector<std::pair<std::string, Val>> env;
  // Unbound variables read as zero (used when solving for candidates).
  bool zero_unbound = false;
  std::vector<std::pair<std::string, Val>> fixed = {};
  using Wit = std::vector<std::pair<std::string, Val>>;
  // Quantified subformulas are pure in their free variables; cache them.
  std::map<const Formula*, std::vector<std::string>> free_of = {};
  std::map<std::pair<const Formula*, std::string>, std::pair<V, Wit>> memo = {};

  std::string key_of(const Val& v) const {
    std::string k;
    switch (v.sort) {
      case Sort::K:
        k = std::to_string(static_cast<int>(v.x.state())) + ":" + std::to_string(v.x.shift()) + ":" +
            std::to_string(v.x.rel_prec());
        for (const auto& c : v.x.unit()) k += ":" + c.get_str();
        return k;
      case Sort::k:
        for (const auto& c : v.r) k += ":" + c.get_str();
        return k;
      default: return v.g ? std::to_string(*v.g) : "inf";
    }
  }

  const Val* lookup(const std::string& name) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  Val zero_of(Sort s) const {
    Val v;
    v.sort = s;
    if (s == Sort::K) v.x = FieldElem::zero(h.field());
    else if (s == Sort::k) v.r = kf.zero();
    else v.g = 0;
    return v;
  }

  Val term(const Term& t) const {
    Val v;
    v.sort = t.sort;
    switch (t.kind) {
      case Term::Kind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t.name) return it->second;
        if (zero_unbound) return zero_of(t.sort);
        unbound(t.name);
      case Term::Kind::Num:
        if (t.sort == Sort::K) v.x = FieldElem::from_int(h.field(), Int(t.value));
        else if (t.sort == Sort::k) v.r = kf.from_int(Int(t.value));
        else v.g = t.value;
        return v;
      case Term::Kind::Inf: v.g = std::nullopt; return v;
      case Term::Kind::Phat: v.x = FieldElem::from_int(h.field(), h.model().p()); return v;
      case Term::Kind::Nu: {
        const Val a = term(t.args[0]);
        if (!a.x.is_zero()) v.g = a.x.shift();
        else v.g = std::nullopt;
        return v;
      }
      case Term::Kind::Res: {
        const Val a = term(t.args[0]);
        // elements of negative valuation have residue 0
        v.r = (!a.x.is_zero() && a.x.shift() < 0) ? kf.zero() : a.x.residue();
        return v;
      }
      case Term::Kind::Neg: {
        const Val a = term(t.args[0]);
        if (t.sort == Sort::K) v.x = -a.x;
        else if (t.sort == Sort::k) v.r = kf.neg(a.r);
        else v.g = a.g ? std::optional<long>(-*a.g) : std::nullopt;
        return v;
      }
      case Term::Kind::Pow: {
        const Val a = term(t.args[0]);
        if (t.sort == Sort::K) v.x = a.x.pow(t.value);
        else v.r = kf.pow(a.r, Int(t.value));
        return v;
      }
      default: break;
    }
    const Val a = term(t.args[0]), b = term(t.args[1]);
    switch (t.sort) {
      case Sort::K:
        v.x = t.kind == Term::Kind::Add ? a.x + b.x : t.kind == Term::Kind::Sub ? a.x - b.x : a.x * b.x;
        break;
      case Sort::k:
        v.r = t.kind == Term::Kind::Add ? kf.add(a.r, b.r) : t.kind == Term::Kind::Sub ? kf.sub(a.r, b.r) : kf.mul(a.r, b.r);
        break;
      default:
        // inf absorbs both addition and subtraction
        if (a.g && b.g) v.g = t.kind == Term::Kind::Add ? *a.g + *b.g : *a.g - *b.g;
        else v.g = std::nullopt;
    }
    return v;
  }

  static int cmp_g(const std::optional<long>& a, const std::optional<long>& b) {
    if (!a && !b) return 0;
    if (!a) return 1;
    if (!b) return -1;
    return *a < *b ? -1 : *a > *b;
  }

  bool atom(const Formula& f) const {
    const Val a = term(f.terms[0]), b = term(f.terms[1]);
    const Sort s = f.terms[0].sort;
    if (f.rel == Formula::Rel::Eq || f.rel == Formula::Rel::Ne) {
      bool eq;
      if (s == Sort::K) eq = (a.x - b.x).is_zero();
      else if (s == Sort::k) eq = a.r == b.r;
      else eq = cmp_g(a.g, b.g) == 0;
      return (f.rel == Formula::Rel::Eq) == eq;
    }
    const int c = cmp_g(a.g, b.g);
    switch (f.rel) {
      case Formula::Rel::Lt: return c < 0;
      case Formula::Rel::Le: return c <= 0;
      case Formula::Rel::Gt: return c > 0;
      case Formula::Rel::Ge: return c >= 0;
      default: fail(ErrorKind::SortError, "not an L_val relation");
    }
  }

  // ---- candidates for an existential field variable

  static int degree(const Term& t, const std::string& x) {
    switch (t.kind) {
      case Term::Kind::Var: return t.name == x ? 1 : 0;
      case Term::Kind::Add:
      case Term::Kind::Sub: return std::max(degree(t.args[0], x), degree(t.args[1], x));
      case Term::Kind::Neg: return degree(t.args[0], x);
      case Term::Kind::Mul: return degree(t.args[0], x) + degree(t.args[1], x);
      case Term::Kind::Pow: return degree(t.args[0], x) * static_cast<int>(t.value);
      case Term::Kind::Nu:
      case Term::Kind::Res: return degree(t.args[0], x) ? 1000 : 0;
      default: return 0;
    }
  }

  static void vars_of(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::Var) out.insert(t.name);
    for (const auto& a : t.args) vars_of(a, out);
  }

  bool bound(const std::string& name) const {
    return std::any_of(env.begin(), env.end(), [&](const auto& b) { return b.first == name; });
  }

  void equations(const Formula& f, const std::string& x, bool direct,
                 std::vector<std::pair<const Formula*, bool>>& out) const {
    if (f.kind == Formula::Kind::And) {
      equations(f.subs[0], x, direct, out);
      equations(f.subs[1], x, direct, out);
    } else if (f.kind == Formula::Kind::Exists && f.var != x) {
      equations(f.subs[0], x, false, out);
    } else if (f.kind == Formula::Kind::Atom && f.rel == Formula::Rel::Eq && f.terms[0].sort == Sort::K) {
      out.emplace_back(&f, direct);
    }
  }

  // Solutions of equations linear in x (other unbound variables at 0).
  // A sole candidate is returned when a direct conjunct determines x.
  std::vector<FieldElem> candidates(const Formula& body, const std::string& x, bool& unique) {
    std::vector<std::pair<const Formula*, bool>> eqs;
    equations(body, x, true, eqs);
    std::vector<FieldElem> out;
    unique = false;
    for (const auto& [eq, direct] : eqs) {
      if (degree(eq->terms[0], x) > 1 || degree(eq->terms[1], x) > 1) continue;
      if (!degree(eq->terms[0], x) && !degree(eq->terms[1], x)) continue;
      std::set<std::string> vs;
      vars_of(eq->terms[0], vs);
      vars_of(eq->terms[1], vs);
      vs.erase(x);
      const bool closed = std::all_of(vs.begin(), vs.end(), [&](const std::string& v) { return bound(v); });
      zero_unbound = true;
      Val at;
      at.sort = Sort::K;
      at.x = FieldElem::zero(h.field());
      env.emplace_back(x, at);
      const FieldElem f0 = term(eq->terms[0]).x - term(eq->terms[1]).x;
      env.back().second.x = FieldElem::one(h.field());
      const FieldElem f1 = term(eq->terms[0]).x - term(eq->terms[1]).x;
      env.pop_back();
      zero_unbound = false;
      const FieldElem a = f1 - f0;
      if (a.is_zero()) continue;
      FieldElem sol = -f0 / a;
      if (direct && closed) {
        unique = true;
        return {sol};
      }
      out.push_back(std::move(sol));
    }
    return out;
  }

  // Valuation bounds on x from direct conjuncts nu(x^k) ~ t with t closed;
  // values outside them falsify the body, so an existential may skip them.
  void valuation_guards(const Formula& f, const std::string& x,
                        std::vector<std::pair<Formula::Rel, std::optional<long>>>& out) const {
    if (f.kind == Formula::Kind::And) {
      valuation_guards(f.subs[0], x, out);
      valuation_guards(f.subs[1], x, out);
      return;
    }
    if (f.kind != Formula::Kind::Atom || f.terms.size() != 2 || f.terms[0].sort != Sort::G) return;
    if (f.rel == Formula::Rel::Ne) return;
    const Term& l = f.terms[0];
    if (l.kind != Term::Kind::Nu) return;
    const Term* arg = &l.args[0];
    long k = 1;
    if (arg->kind == Term::Kind::Pow) k = arg->value, arg = &arg->args[0];
    if (arg->kind != Term::Kind::Var || arg->name != x || k < 1) return;
    std::set<std::string> vs;
    vars_of(f.terms[1], vs);
    if (vs.count(x) || !std::all_of(vs.begin(), vs.end(), [&](const std::string& v) { return bound(v); })) return;
    const auto c = term(f.terms[1]).g;
    // nu(x^k) = k nu(x): divide the bound, rounding to keep it exact
    if (!c) {
      out.emplace_back(f.rel, std::nullopt);
      return;
    }
    const long q = *c / k, r = *c % k;
    switch (f.rel) {
      case Formula::Rel::Eq:
        if (r) out.emplace_back(Formula::Rel::Eq, LONG_MIN);
        else out.emplace_back(Formula::Rel::Eq, q);
        break;
      case Formula::Rel::Ge:
      case Formula::Rel::Gt: {
        // k v >= c  <=>  v >= ceil(c / k); k v > c  <=>  v >= floor(c / k) + 1
        const long fl = q - (r < 0 ? 1 : 0);
        const long lo = f.rel == Formula::Rel::Gt ? fl + 1 : fl + (r != 0 ? 1 : 0);
        out.emplace_back(Formula::Rel::Ge, lo);
        break;
      }
      default: break;
    }
  }

  static bool passes(const FieldElem& x, const std::vector<std::pair<Formula::Rel, std::optional<long>>>& guards) {
    const std::optional<long> v = x.is_zero() ? std::nullopt : std::optional<long>(x.shift());
    for (const auto& [rel, c] : guards) {
      const int cmp = cmp_g(v, c);
      if (rel == Formula::Rel::Eq && cmp != 0) return false;
      if (rel == Formula::Rel::Ge && cmp < 0) return false;
    }
    return true;
  }

  V eval(const Formula& f, Wit& w) {
    budget.tick();
    switch (f.kind) {
      case Formula::Kind::True: return V::T;
      case Formula::Kind::False: return V::F;
      case Formula::Kind::Atom: return atom(f) ? V::T : V::F;
      case Formula::Kind::Not: {
        Wit tmp;
        return not_v(eval(f.subs[0], tmp));
      }
      case Formula::Kind::And: {
        Wit wl, wr;
        const V a = eval(f.subs[0], wl);
        if (a == V::F || a == V::R) return a;
        const V r = and_v(a, eval(f.subs[1], wr));
        if (r == V::T) w.insert(w.end(), wl.begin(), wl.end()), w.insert(w.end(), wr.begin(), wr.end());
        return r;
      }
      case Formula::Kind::Or:
      case Formula::Kind::Implies: {
        Wit wl, wr;
        V a = eval(f.subs[0], wl);
        if (f.kind == Formula::Kind::Implies) a = not_v(a), wl.clear();
        if (a == V::T) {
          w.insert(w.end(), wl.begin(), wl.end());
          return V::T;
        }
        const V r = or_v(a, eval(f.subs[1], wr));
        if (r == V::T) w.insert(w.end(), wr.begin(), wr.end());
        return r;
      }
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: break;
    }
    if (!fixed.empty()) return quantifier(f, w);
    auto fv = free_of.find(&f);
    if (fv == free_of.end()) fv = free_of.emplace(&f, free_variables(f)).first;
    std::string key;
    for (const auto& name : fv->second) {
      const Val* v = lookup(name);
      if (!v) unbound(name);
      key += key_of(*v) + "|";
    }
    auto hit = memo.find({&f, key});
    if (hit == memo.end()) {
      Wit inner;
      const V v = quantifier(f, inner);
      hit = memo.emplace(std::make_pair(&f, key), std::make_pair(v, std::move(inner))).first;
    }
    if (hit->second.first == V::T) w.insert(w.end(), hit->second.second.begin(), hit->second.second.end());
    return hit->second.first;
  }

  V quantifier(const Formula& f, Wit& w) {
    const bool ex = f.kind == Formula::Kind::Exists;
    std::vector<Val> values;
    bool complete = false;
    auto push_k = [&](const FieldElem& x) {
      Val v;
      v.sort = Sort::K;
      v.x = x;
      values.push_back(std::move(v));
    };
    for (const auto& [name, c] : fixed)
      if (ex && name == f.var) values = {c};
    if (values.empty()) switch (f.var_sort) {
      case Sort::K: {
        std::vector<std::pair<Formula::Rel, std::optional<long>>> guards;
        if (ex) {
          valuation_guards(f.subs[0], f.var, guards);
          for (auto& c : candidates(f.subs[0], f.var, complete)) push_k(c);
          if (!complete) push_k(FieldElem::zero(h.field()));
        }
        if (!complete)
          for (const auto& x : kdomain)
            if (passes(x, guards)) push_k(x);
        break;
      }
      case Sort::k:
        complete = true;
        for (const auto& r : rdomain) {
          Val v;
          v.sort = Sort::k;
          v.r = r;
          values.push_back(std::move(v));
        }
        break;
      default:
        for (long g = -radius; g <= radius + 1; ++g) {
          Val v;
          v.sort = Sort::G;
          if (g <= radius) v.g = g;
          values.push_back(std::move(v));
        }
    }
    Fold fold{complete};
    for (const auto& c : values) {
      env.emplace_back(f.var, c);
      Wit inner;
      const V v = eval(f.subs[0], inner);
      env.pop_back();
      if (ex && v == V::T) {
        w.emplace_back(f.var, c);
        w.insert(w.end(), inner.begin(), inner.end());
        return V::T;
      }
      if (!ex && v == V::F) return V::F;
      if (v == V::U) fold.saw_u = true;
      if (v == V::R) fold.saw_r = true;
    }
    return ex ? fold.exists_result() : fold.forall_result();
  }

  std::string render(const Val& v) const {
    switch (v.sort) {
      case Sort::K: return v.x.to_string();
      case Sort::k: return kf.to_string(v.r);
      default: return v.g ? std::to_string(*v.g) : "inf";
    }
  }
};

std::vector<FieldElem> field_domain(const Hyperfield& h, int radius) {
  std::vector<FieldElem> out;
  for (const auto& c : h.grid(radius)) out.push_back(c.is_zero() ? FieldElem::zero(h.field()) : h.representative(c));
  return out;
}

// Leading existential block.
const Formula& strip_exists(const Formula& f, std::vector<std::pair<std::string, Sort>>& vars) {
  const Formula* cur = &f;
  while (cur->kind == Formula::Kind::Exists) {
    vars.emplace_back(cur->var, cur->var_sort);
    cur = &cur->subs[0];
  }
  return *cur;
}

}  // namespace

TriBool eval_vhf(const Formula& phi, const Hyperfield& h, const EvalOptions& opt,
                 std::vector<std::pair<std::string, HfClass>>* assignment) {
  if (quantifier_depth(phi) > opt.max_depth)
    fail(ErrorKind::BudgetExceeded, "quantifier depth " + std::to_string(quantifier_depth(phi)) + " exceeds " +
                                        std::to_string(opt.max_depth));
  VhfEngine eng{h, opt.radius, {opt.node_cap}, h.grid(opt.radius), {}};
  VhfEngine::Wit w;
  TriBool t = finish(eng.eval(phi, w), opt.radius);
  if (t.is_true()) {
    for (const auto& [name, c] : w) t.witness.emplace_back(name, h.to_string(c));
    if (assignment) *assignment = w;
  }
  return t;
}

TriBool eval_val(const Formula& phi, const Hyperfield& h, const EvalOptions& opt,
                 std::vector<std::pair<std::string, FieldElem>>* assignment) {
  const auto& kf = h.model().residue_field();
  ValEngine eng{h, kf, opt.radius, {opt.node_cap}, field_domain(h, opt.radius), kf.elements(), {}};
  ValEngine::Wit w;
  TriBool t = finish(eng.eval(phi, w), opt.radius);
  if (t.is_true()) {
    for (const auto& [name, v] : w) t.witness.emplace_back(name, eng.render(v));
    if (assignment) {
      assignment->clear();
      for (const auto& [name, v] : w)
        if (v.sort == Sort::K) assignment->emplace_back(name, v.x);
    }
  }
  return t;
}

bool verify_vhf_witness(const Formula& phi, const Hyperfield& h,
                        const std::vector<std::pair<std::string, HfClass>>& assignment) {
  std::vector<std::pair<std::string, Sort>> vars;
  strip_exists(phi, vars);
  for (const auto& [name, s] : vars)
    if (std::none_of(assignment.begin(), assignment.end(), [&](const auto& b) { return b.first == name; }))
      return false;
  VhfEngine eng{h, 0, {std::uint64_t(1) << 40}, {}, {}, assignment};
  VhfEngine::Wit w;
  return eng.eval(phi, w) == V::T;
}

bool verify_val_witness(const Formula& phi, const Hyperfield& h,
                        const std::vector<std::pair<std::string, FieldElem>>& assignment) {
  std::vector<std::pair<std::string, Sort>> vars;
  strip_exists(phi, vars);
  const auto& kf = h.model().residue_field();
  ValEngine eng{h, kf, 0, {std::uint64_t(1) << 40}, {}, kf.elements(), {}};
  for (const auto& [name, x] : assignment) {
    Val v;
    v.sort = Sort::K;
    v.x = x;
    eng.fixed.emplace_back(name, v);
  }
  for (const auto& [name, s] : vars)
    if (s == Sort::K && std::none_of(assignment.begin(), assignment.end(), [&](const auto& b) { return b.first == name; }))
      return false;
  ValEngine::Wit w;
  return eng.eval(phi, w) == V::T;
}

AgreementReport agreement_harness(const std::vector<Formula>& corpus, const Hyperfield& h, const EvalOptions& opt,
                                  bool throw_on_disagreement) {
  AgreementReport rep;
  const long p = h.model().p().get_si();
  for (const auto& phi : corpus) {
    AgreementRow row;
    row.sentence = print(phi, Language::Vhf);
    const Formula psi = translate(phi, p, h.model().e(), h.n());
    row.translation_existential = !is_existential(phi) || is_existential(psi);
    row.vhf = eval_vhf(phi, h, opt);
    row.val = eval_val(psi, h, opt);
    row.disagree = (row.vhf.is_true() && row.val.is_false()) || (row.vhf.is_false() && row.val.is_true());
    if (row.vhf.kind != TriBool::Kind::Unknown && row.val.kind != TriBool::Kind::Unknown) ++rep.definite;
    if (row.disagree) ++rep.disagreements;
    if (!row.translation_existential) ++rep.non_existential;
    if (row.disagree && throw_on_disagreement)
      fail(ErrorKind::TranslationDisagreement, row.sentence + ": " + to_string(row.vhf) + " vs " + to_string(row.val));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace vhf
