#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "vhf/logic.hpp"

namespace vhf {

std::string to_string(Sort s) {
  switch (s) {
    case Sort::H: return "H";
    case Sort::K: return "K";
    case Sort::k: return "k";
    case Sort::G: return "G";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------- lexer

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  static const std::vector<std::string> syms = {"->", "!=", "<=", ">=", "(", ")", ",", ".", ":", "*",
                                                "+",  "-",  "^",  "|",  "=", "<", ">"};
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = s.substr(i, j - i);
      adv(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Token::Kind::Int;
      t.text = s.substr(i, j - i);
      adv(j - i);
    } else {
      bool found = false;
      for (const auto& sym : syms)
        if (s.compare(i, sym.size(), sym) == 0) {
          t.kind = Token::Kind::Sym;
          t.text = sym;
          adv(sym.size());
          found = true;
          break;
        }
      if (!found)
        fail(ErrorKind::SyntaxError,
             std::to_string(line) + ":" + std::to_string(col) + ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(t);
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

const std::set<std::string> kKeywords = {"exists", "forall", "and", "or", "not", "true", "false",
                                         "plus",   "phat",   "nu",  "res", "inf"};

// ---------------------------------------------------------------- parser

struct Parser {
  Language lang;
  std::vector<Token> toks;
  std::size_t pos = 0;
  std::vector<std::pair<std::string, Sort>> scope;

  const Token& peek() const { return toks[pos]; }
  bool is(const std::string& text) const {
    const auto& t = peek();
    return (t.kind == Token::Kind::Sym || t.kind == Token::Kind::Ident) && t.text == text;
  }
  std::string where(const Token& t) const { return std::to_string(t.line) + ":" + std::to_string(t.col); }
  [[noreturn]] void syntax(const std::string& msg) const {
    fail(ErrorKind::SyntaxError, where(peek()) + ": " + msg + (peek().kind == Token::Kind::End ? " at end of input"
                                                                                            : " near '" + peek().text + "'"));
  }
  [[noreturn]] void sort_error(const Token& at, const std::string& msg) const {
    fail(ErrorKind::SortError, where(at) + ": " + msg);
  }
  void expect(const std::string& text) {
    if (!is(text)) syntax("expected '" + text + "'");
    ++pos;
  }
  std::string ident() {
    const auto& t = peek();
    if (t.kind != Token::Kind::Ident || kKeywords.count(t.text)) syntax("expected an identifier");
    ++pos;
    return t.text;
  }

  Formula formula() {
    if (is("exists") || is("forall")) return quantified();
    Formula left = disjunction();
    if (is("->")) {
      ++pos;
      Formula f;
      f.kind = Formula::Kind::Implies;
      f.subs = {std::move(left), formula()};
      return f;
    }
    return left;
  }

  Formula quantified() {
    const bool ex = is("exists");
    ++pos;
    std::vector<std::pair<std::string, Sort>> vars;
    do {
      if (!vars.empty()) ++pos;  // ','
      const Token at = peek();
      std::string name = ident();
      Sort s = lang == Language::Vhf ? Sort::H : Sort::K;
      if (is(":")) {
        if (lang == Language::Vhf) syntax("sort annotations are not part of L_vhf");
        ++pos;
        const Token st = peek();
        const std::string sn = ident();
        if (sn == "K") s = Sort::K;
        else if (sn == "k") s = Sort::k;
        else if (sn == "G") s = Sort::G;
        else sort_error(st, "unknown sort '" + sn + "'");
      }
      vars.emplace_back(std::move(name), s);
    } while (is(","));
    expect(".");
    for (const auto& v : vars) scope.push_back(v);
    Formula body = formula();
    for (std::size_t i = 0; i < vars.size(); ++i) scope.pop_back();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      Formula q;
      q.kind = ex ? Formula::Kind::Exists : Formula::Kind::Forall;
      q.var = it->first;
      q.var_sort = it->second;
      q.subs = {std::move(body)};
      body = std::move(q);
    }
    return body;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (is("or")) {
      ++pos;
      Formula g;
      g.kind = Formula::Kind::Or;
      g.subs = {std::move(f), conjunction()};
      f = std::move(g);
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (is("and")) {
      ++pos;
      Formula g;
      g.kind = Formula::Kind::And;
      g.subs = {std::move(f), unary()};
      f = std::move(g);
    }
    return f;
  }

  Formula unary() {
    if (is("not")) {
      ++pos;
      Formula f;
      f.kind = Formula::Kind::Not;
      f.subs = {unary()};
      return f;
    }
    if (is("exists") || is("forall")) return quantified();
    return primary();
  }

  Formula primary() {
    if (is("true") || is("false")) {
      Formula f;
      f.kind = is("true") ? Formula::Kind::True : Formula::Kind::False;
      ++pos;
      return f;
    }
    if (is("(")) {
      const std::size_t save = pos;
      const auto save_scope = scope;
      try {
        ++pos;
        Formula f = formula();
        expect(")");
        return f;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SyntaxError) throw;
        pos = save;
        scope = save_scope;
      }
    }
    return lang == Language::Vhf ? vhf_atom() : val_atom();
  }

  // ---- L_vhf
  Formula vhf_atom() {
    Formula f;
    f.kind = Formula::Kind::Atom;
    if (is("plus")) {
      ++pos;
      expect("(");
      f.rel = Formula::Rel::Plus;
      f.terms.push_back(vhf_term());
      expect(",");
      f.terms.push_back(vhf_term());
      expect(",");
      f.terms.push_back(vhf_term());
      expect(")");
      return f;
    }
    f.terms.push_back(vhf_term());
    if (is("=")) f.rel = Formula::Rel::Eq;
    else if (is("|")) f.rel = Formula::Rel::Div;
    else syntax("expected '=' or '|'");
    ++pos;
    f.terms.push_back(vhf_term());
    return f;
  }

  Term vhf_term() {
    Term t = vhf_factor();
    while (is("*")) {
      ++pos;
      Term m;
      m.kind = Term::Kind::Mul;
      m.sort = Sort::H;
      m.args = {std::move(t), vhf_factor()};
      t = std::move(m);
    }
    return t;
  }

  Term vhf_factor() {
    Term t;
    t.sort = Sort::H;
    const auto& tok = peek();
    if (tok.kind == Token::Kind::Int) {
      if (tok.text != "0" && tok.text != "1") syntax("L_vhf has only the constants 0, 1 and phat");
      t.kind = Term::Kind::Num;
      t.value = tok.text == "1";
      ++pos;
      return t;
    }
    if (is("phat")) {
      ++pos;
      t.kind = Term::Kind::Phat;
      return t;
    }
    if (is("(")) {
      ++pos;
      t = vhf_term();
      expect(")");
      return t;
    }
    const Token at = peek();
    t.kind = Term::Kind::Var;
    t.name = ident();
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == t.name && it->second != Sort::H) sort_error(at, "variable " + t.name + " is not of sort H");
    return t;
  }

  // ---- L_val; a sort of nullopt marks a numeral not yet tied to a sort
  struct Typed {
    Term t;
    std::optional<Sort> sort;
  };

  static void fix(Term& t, Sort s) {
    t.sort = s;
    if (t.kind == Term::Kind::Nu || t.kind == Term::Kind::Res) return;
    for (auto& a : t.args) fix(a, s);
  }

  std::optional<Sort> unify(Typed& a, Typed& b, const Token& at) {
    if (!a.sort && !b.sort) return std::nullopt;
    if (!a.sort) fix(a.t, *b.sort), a.sort = b.sort;
    if (!b.sort) fix(b.t, *a.sort), b.sort = a.sort;
    if (*a.sort != *b.sort)
      sort_error(at, "sort mismatch: " + to_string(*a.sort) + " vs " + to_string(*b.sort));
    return a.sort;
  }

  Formula val_atom() {
    const Token at = peek();
    Typed a = val_sum();
    Formula f;
    f.kind = Formula::Kind::Atom;
    static const std::vector<std::pair<std::string, Formula::Rel>> rels = {
        {"=", Formula::Rel::Eq}, {"!=", Formula::Rel::Ne}, {"<", Formula::Rel::Lt},
        {"<=", Formula::Rel::Le}, {">", Formula::Rel::Gt}, {">=", Formula::Rel::Ge}};
    bool found = false;
    for (const auto& [sym, r] : rels)
      if (is(sym)) {
        f.rel = r;
        found = true;
      }
    if (!found) syntax("expected a relation");
    ++pos;
    Typed b = val_sum();
    const bool order = f.rel != Formula::Rel::Eq && f.rel != Formula::Rel::Ne;
    if (order) {
      if (!a.sort) fix(a.t, Sort::G), a.sort = Sort::G;
      if (!b.sort) fix(b.t, Sort::G), b.sort = Sort::G;
      if (*a.sort != Sort::G || *b.sort != Sort::G) sort_error(at, "order relations compare value group terms");
    }
    if (!unify(a, b, at)) fix(a.t, Sort::K), fix(b.t, Sort::K);
    f.terms = {std::move(a.t), std::move(b.t)};
    return f;
  }

  Typed binary(Term::Kind kind, Typed a, Typed b, const Token& at) {
    const auto s = unify(a, b, at);
    if (kind == Term::Kind::Mul && s == Sort::G) sort_error(at, "no multiplication in the value group");
    Typed r;
    r.t.kind = kind;
    r.t.args = {std::move(a.t), std::move(b.t)};
    r.sort = s;
    if (s) r.t.sort = *s;
    return r;
  }

  Typed val_sum() {
    Typed t = val_prod();
    while (is("+") || is("-")) {
      const Token at = peek();
      const auto kind = is("+") ? Term::Kind::Add : Term::Kind::Sub;
      ++pos;
      t = binary(kind, std::move(t), val_prod(), at);
    }
    return t;
  }

  Typed val_prod() {
    Typed t = val_unary();
    while (is("*")) {
      const Token at = peek();
      ++pos;
      t = binary(Term::Kind::Mul, std::move(t), val_unary(), at);
    }
    return t;
  }

  Typed val_unary() {
    if (is("-")) {
      ++pos;
      Typed a = val_unary();
      Typed r;
      r.t.kind = Term::Kind::Neg;
      r.sort = a.sort;
      if (a.sort) r.t.sort = *a.sort;
      r.t.args = {std::move(a.t)};
      return r;
    }
    return val_power();
  }

  Typed val_power() {
    Typed t = val_primary();
    if (is("^")) {
      const Token at = peek();
      ++pos;
      if (peek().kind != Token::Kind::Int) syntax("expected an exponent");
      const long k = std::stol(peek().text);
      ++pos;
      if (t.sort == Sort::G) sort_error(at, "no powers in the value group");
      Typed r;
      r.t.kind = Term::Kind::Pow;
      r.t.value = k;
      r.sort = t.sort;
      if (t.sort) r.t.sort = *t.sort;
      r.t.args = {std::move(t.t)};
      return r;
    }
    return t;
  }

  Typed val_primary() {
    const Token at = peek();
    Typed r;
    if (at.kind == Token::Kind::Int) {
      ++pos;
      r.t.kind = Term::Kind::Num;
      r.t.value = std::stol(at.text);
      return r;
    }
    if (is("inf")) {
      ++pos;
      r.t.kind = Term::Kind::Inf;
      r.t.sort = Sort::G;
      r.sort = Sort::G;
      return r;
    }
    if (is("nu") || is("res")) {
      const bool nu = is("nu");
      ++pos;
      expect("(");
      Typed a = val_sum();
      expect(")");
      if (!a.sort) fix(a.t, Sort::K), a.sort = Sort::K;
      if (*a.sort != Sort::K) sort_error(at, std::string(nu ? "nu" : "res") + " takes a field term");
      r.t.kind = nu ? Term::Kind::Nu : Term::Kind::Res;
      r.t.sort = nu ? Sort::G : Sort::k;
      r.sort = r.t.sort;
      r.t.args = {std::move(a.t)};
      return r;
    }
    if (is("(")) {
      ++pos;
      r = val_sum();
      expect(")");
      return r;
    }
    r.t.kind = Term::Kind::Var;
    r.t.name = ident();
    Sort s = Sort::K;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == r.t.name) {
        s = it->second;
        break;
      }
    r.t.sort = s;
    r.sort = s;
    return r;
  }
};

Formula parse(const std::string& text, Language lang) {
  Parser p{lang, lex(text), 0, {}};
  Formula f = p.formula();
  if (p.peek().kind != Token::Kind::End) p.syntax("unexpected trailing input");
  return f;
}

// ---------------------------------------------------------------- printer

int term_prec(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Add:
    case Term::Kind::Sub: return 1;
    case Term::Kind::Mul: return 2;
    case Term::Kind::Neg: return 3;
    case Term::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string paren_term(const Term& t, int need) {
  const std::string s = print(t);
  return term_prec(t) < need ? "(" + s + ")" : s;
}

int formula_prec(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return 0;
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
  }
}

std::string print_f(const Formula& f, Language lang);

std::string paren_f(const Formula& f, Language lang, int need) {
  const std::string s = print_f(f, lang);
  const int p = formula_prec(f);
  return (p < need || p == 0) ? "(" + s + ")" : s;
}

std::string rel_text(Formula::Rel r) {
  switch (r) {
    case Formula::Rel::Eq: return "=";
    case Formula::Rel::Ne: return "!=";
    case Formula::Rel::Lt: return "<";
    case Formula::Rel::Le: return "<=";
    case Formula::Rel::Gt: return ">";
    case Formula::Rel::Ge: return ">=";
    case Formula::Rel::Div: return "|";
    case Formula::Rel::Plus: return "plus";
  }
  return "?";
}

std::string print_f(const Formula& f, Language lang) {
  switch (f.kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Atom:
      if (f.rel == Formula::Rel::Plus)
        return "plus(" + print(f.terms[0]) + ", " + print(f.terms[1]) + ", " + print(f.terms[2]) + ")";
      return print(f.terms[0]) + " " + rel_text(f.rel) + " " + print(f.terms[1]);
    case Formula::Kind::Not: return "not " + paren_f(f.subs[0], lang, 4);
    case Formula::Kind::And: return paren_f(f.subs[0], lang, 3) + " and " + paren_f(f.subs[1], lang, 4);
    case Formula::Kind::Or: return paren_f(f.subs[0], lang, 2) + " or " + paren_f(f.subs[1], lang, 3);
    case Formula::Kind::Implies: return paren_f(f.subs[0], lang, 2) + " -> " + paren_f(f.subs[1], lang, 1);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::string s = f.kind == Formula::Kind::Exists ? "exists " : "forall ";
      const Formula* cur = &f;
      bool first = true;
      while (true) {
        if (!first) s += ", ";
        first = false;
        s += cur->var;
        if (lang == Language::Val) s += ":" + to_string(cur->var_sort);
        const Formula& body = cur->subs[0];
        if (body.kind != f.kind) break;
        cur = &body;
      }
      return s + ". " + print_f(cur->subs[0], lang);
    }
  }
  return "?";
}

}  // namespace

Formula parse_vhf(const std::string& text) { return parse(text, Language::Vhf); }
Formula parse_val(const std::string& text) { return parse(text, Language::Val); }

std::string print(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return t.name;
    case Term::Kind::Num: return std::to_string(t.value);
    case Term::Kind::Inf: return "inf";
    case Term::Kind::Phat: return "phat";
    case Term::Kind::Add: return paren_term(t.args[0], 1) + " + " + paren_term(t.args[1], 2);
    case Term::Kind::Sub: return paren_term(t.args[0], 1) + " - " + paren_term(t.args[1], 2);
    case Term::Kind::Mul: return paren_term(t.args[0], 2) + " * " + paren_term(t.args[1], 3);
    case Term::Kind::Neg: return "-" + paren_term(t.args[0], 3);
    case Term::Kind::Pow: return paren_term(t.args[0], 5) + "^" + std::to_string(t.value);
    case Term::Kind::Nu: return "nu(" + print(t.args[0]) + ")";
    case Term::Kind::Res: return "res(" + print(t.args[0]) + ")";
  }
  return "?";
}

std::string print(const Formula& f, Language lang) { return print_f(f, lang); }

// ---------------------------------------------------------------- classifiers

bool is_positive(const Formula& f) {
  if (f.kind == Formula::Kind::Not || f.kind == Formula::Kind::Implies) return false;
  if (f.kind == Formula::Kind::Atom && f.rel == Formula::Rel::Ne) return false;
  return std::all_of(f.subs.begin(), f.subs.end(), [](const Formula& g) { return is_positive(g); });
}

namespace {

bool existential_at(const Formula& f, bool negated) {
  switch (f.kind) {
    case Formula::Kind::Forall: return false;
    case Formula::Kind::Exists: return !negated && existential_at(f.subs[0], negated);
    case Formula::Kind::Not: return existential_at(f.subs[0], !negated);
    case Formula::Kind::Implies: return existential_at(f.subs[0], !negated) && existential_at(f.subs[1], negated);
    default:
      return std::all_of(f.subs.begin(), f.subs.end(), [&](const Formula& g) { return existential_at(g, negated); });
  }
}

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.name);
  for (const auto& a : t.args) term_vars(a, out);
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f.kind == Formula::Kind::Atom) {
    std::set<std::string> vs;
    for (const auto& t : f.terms) term_vars(t, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) {
    const bool had = bound.count(f.var);
    bound.insert(f.var);
    collect_free(f.subs[0], bound, out);
    if (!had) bound.erase(f.var);
    return;
  }
  for (const auto& g : f.subs) collect_free(g, bound, out);
}

void all_names(const Formula& f, std::set<std::string>& out) {
  if (!f.var.empty()) out.insert(f.var);
  for (const auto& t : f.terms) term_vars(t, out);
  for (const auto& g : f.subs) all_names(g, out);
}

}  // namespace

bool is_existential(const Formula& f) { return existential_at(f, false); }
bool is_positive_existential(const Formula& f) { return is_positive(f) && is_existential(f); }

int quantifier_depth(const Formula& f) {
  int d = 0;
  for (const auto& g : f.subs) d = std::max(d, quantifier_depth(g));
  return d + ((f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) ? 1 : 0);
}

std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------- translation

namespace {

Term var(const std::string& name) {
  Term t;
  t.kind = Term::Kind::Var;
  t.name = name;
  return t;
}
Term num(long v) {
  Term t;
  t.kind = Term::Kind::Num;
  t.value = v;
  return t;
}
Term op(Term::Kind k, Term a, Term b, Sort s = Sort::K) {
  Term t;
  t.kind = k;
  t.sort = s;
  t.args = {std::move(a), std::move(b)};
  return t;
}
Term pow(Term a, long k) {
  Term t;
  t.kind = Term::Kind::Pow;
  t.value = k;
  t.args = {std::move(a)};
  return t;
}
Term nu(Term a) {
  Term t;
  t.kind = Term::Kind::Nu;
  t.sort = Sort::G;
  t.args = {std::move(a)};
  return t;
}
Term inf() {
  Term t;
  t.kind = Term::Kind::Inf;
  t.sort = Sort::G;
  return t;
}
Formula atom(Formula::Rel r, Term a, Term b) {
  Formula f;
  f.kind = Formula::Kind::Atom;
  f.rel = r;
  f.terms = {std::move(a), std::move(b)};
  return f;
}
Formula conn(Formula::Kind k, Formula a, Formula b) {
  Formula f;
  f.kind = k;
  f.subs = {std::move(a), std::move(b)};
  return f;
}
Formula exists(const std::string& v, Formula body) {
  Formula f;
  f.kind = Formula::Kind::Exists;
  f.var = v;
  f.var_sort = Sort::K;
  f.subs = {std::move(body)};
  return f;
}

struct Translator {
  long p;
  int e, n;
  std::set<std::string> used;
  std::map<std::string, int> counters;

  std::string fresh(const std::string& base) {
    while (true) {
      const std::string name = base + std::to_string(++counters[base]);
      if (!used.count(name)) {
        used.insert(name);
        return name;
      }
    }
  }

  Term term(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Var: return var(t.name);
      case Term::Kind::Num: return num(t.value);
      case Term::Kind::Phat: return num(p);
      case Term::Kind::Mul: return op(Term::Kind::Mul, term(t.args[0]), term(t.args[1]));
      default: fail(ErrorKind::SortError, "not an L_vhf term: " + print(t));
    }
  }

  // nu(pi^e) = nu(p)
  Formula uniformizer(const std::string& pi) {
    return atom(Formula::Rel::Eq, nu(pow(var(pi), e)), nu(num(p)));
  }

  Formula formula(const Formula& f) {
    Formula out;
    switch (f.kind) {
      case Formula::Kind::True:
      case Formula::Kind::False: return f;
      case Formula::Kind::Not:
        out.kind = f.kind;
        out.subs = {formula(f.subs[0])};
        return out;
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies: return conn(f.kind, formula(f.subs[0]), formula(f.subs[1]));
      case Formula::Kind::Exists:
      case Formula::Kind::Forall:
        out.kind = f.kind;
        out.var = f.var;
        out.var_sort = Sort::K;
        out.subs = {formula(f.subs[0])};
        return out;
      case Formula::Kind::Atom: break;
    }
    if (f.rel == Formula::Rel::Div) return atom(Formula::Rel::Le, nu(term(f.terms[0])), nu(term(f.terms[1])));
    if (f.rel == Formula::Rel::Plus) {
      // [z] in [x] + [y]: exists pi, u, v with v(u), v(v) >= v(pi^n) and
      // z = x(1+u) + y(1+v); nested so that each guard follows its variable
      const Term x = term(f.terms[0]), y = term(f.terms[1]), z = term(f.terms[2]);
      const std::string pi = fresh("pi"), u = fresh("u"), v = fresh("v");
      const Term rhs = op(Term::Kind::Add, op(Term::Kind::Mul, x, op(Term::Kind::Add, num(1), var(u))),
                          op(Term::Kind::Mul, y, op(Term::Kind::Add, num(1), var(v))));
      Formula inner = conn(Formula::Kind::And, atom(Formula::Rel::Ge, nu(var(v)), nu(pow(var(pi), n))),
                           atom(Formula::Rel::Eq, z, rhs));
      Formula mid = conn(Formula::Kind::And, atom(Formula::Rel::Ge, nu(var(u)), nu(pow(var(pi), n))),
                         exists(v, std::move(inner)));
      return exists(pi, conn(Formula::Kind::And, uniformizer(pi), exists(u, std::move(mid))));
    }
    // [x] = [y]: (y != 0 and [x * 1] = [y] by the product definition) or x = y = 0
    const Term x = term(f.terms[0]), y = term(f.terms[1]);
    const std::string pi = fresh("pi");
    Formula close = conn(Formula::Kind::And, uniformizer(pi),
                         atom(Formula::Rel::Ge, nu(op(Term::Kind::Sub, x, y)),
                              nu(op(Term::Kind::Mul, y, pow(var(pi), n)))));
    Formula nonzero = conn(Formula::Kind::And, atom(Formula::Rel::Lt, nu(y), inf()), exists(pi, std::move(close)));
    Formula zeros = conn(Formula::Kind::And, atom(Formula::Rel::Eq, x, num(0)), atom(Formula::Rel::Eq, y, num(0)));
    return conn(Formula::Kind::Or, std::move(nonzero), std::move(zeros));
  }
};

}  // namespace

Formula translate(const Formula& phi, long p, int e, int n) {
  Translator tr{p, e, n, {}, {}};
  all_names(phi, tr.used);
  return tr.formula(phi);
}

// ---------------------------------------------------------------- corpus

std::vector<Formula> generate_corpus(int count, std::uint64_t seed, int max_vars) {
  std::mt19937_64 rng(seed);
  std::vector<Formula> out;
  std::set<std::string> seen;
  const std::vector<std::string> names = {"x", "y", "z"};
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts++ < 100 * count) {
    const int nv = 1 + static_cast<int>(rng() % std::max(1, max_vars));
    auto term = [&]() -> std::string {
      switch (rng() % 8) {
        case 0: return "phat";
        case 1: return "1";
        case 2: return "0";
        case 3: return names[rng() % nv] + " * phat";
        case 4: return names[rng() % nv] + " * " + names[rng() % nv];
        default: return names[rng() % nv];
      }
    };
    auto atomic = [&]() -> std::string {
      switch (rng() % 3) {
        case 0: return "plus(" + term() + ", " + term() + ", " + term() + ")";
        case 1: return term() + " | " + term();
        default: return term() + " = " + term();
      }
    };
    std::string matrix = atomic();
    const int extra = static_cast<int>(rng() % 3);
    for (int i = 0; i < extra; ++i) matrix = "(" + matrix + ")" + (rng() % 3 ? " and " : " or ") + atomic();
    std::string text = "exists ";
    for (int i = 0; i < nv; ++i) text += (i ? ", " : "") + names[i];
    text += ". " + matrix;
    Formula f = parse_vhf(text);
    const std::string canon = print(f, Language::Vhf);
    if (seen.insert(canon).second) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace vhf
