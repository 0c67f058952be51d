#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "vhf/field_io.hpp"

namespace vhf {

namespace {

Int int_of(const Json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  fail(ErrorKind::InvalidInput, "expected an integer, got " + j.dump());
}

Json json_of(const Int& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

int small_int(const Json& j, const char* key, int dflt) {
  if (!j.contains(key)) return dflt;
  require(j[key].is_number_integer(), ErrorKind::InvalidInput, std::string(key) + " must be an integer");
  return j[key].get<int>();
}

// ---------------------------------------------------------------- expressions

struct Lexer {
  std::string s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(const std::string& t) {
    skip();
    if (s.compare(i, t.size(), t) == 0) {
      i += t.size();
      return true;
    }
    return false;
  }
  bool at_end() {
    skip();
    return i >= s.size();
  }
  std::optional<Int> integer() {
    skip();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return std::nullopt;
    Int z(s.substr(i, j - i));
    i = j;
    return z;
  }
  std::optional<std::string> word() {
    skip();
    if (s.compare(i, 2, "π") == 0) {  // the Greek letter
      i += 2;
      return "pi";
    }
    std::size_t j = i;
    while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return std::nullopt;
    std::string w = s.substr(i, j - i);
    i = j;
    return w;
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::InvalidInput, "column " + std::to_string(i + 1) + ": " + msg + " in \"" + s + "\"");
  }
};

// A recursive-descent parser for + - * / ^ over a ring-like type T.
template <typename T>
struct ExprParser {
  Lexer lx;
  std::function<T(const Int&)> constant;
  std::function<T(const std::string&)> symbol;
  std::function<T(const T&, const T&)> divide;
  std::function<T(const T&, long)> power;
  bool allow_div = true;

  T expr() {
    T a = term();
    while (true) {
      if (lx.eat("+")) a = a + term();
      else if (lx.eat("-")) a = a - term();
      else return a;
    }
  }
  T term() {
    T a = unary();
    while (true) {
      if (lx.eat("*")) a = a * unary();
      else if (allow_div && lx.eat("/")) a = divide(a, unary());
      else return a;
    }
  }
  T unary() {
    if (lx.eat("-")) return constant(Int(0)) - unary();
    return pow();
  }
  T pow() {
    T a = atom();
    if (lx.eat("^")) {
      const bool neg = lx.eat("-");
      const auto k = lx.integer();
      if (!k || !k->fits_slong_p()) lx.error("expected an exponent");
      a = power(a, neg ? -k->get_si() : k->get_si());
    }
    return a;
  }
  T atom() {
    if (lx.eat("(")) {
      T a = expr();
      if (!lx.eat(")")) lx.error("expected ')'");
      return a;
    }
    if (auto z = lx.integer()) return constant(*z);
    if (auto w = lx.word()) return symbol(*w);
    lx.error("expected a number, a symbol or '('");
  }
  T run() {
    T a = expr();
    if (!lx.at_end()) lx.error("unexpected trailing input");
    return a;
  }
};

// Integer polynomials in t.
struct Poly_ {
  IntPoly c;
  friend Poly_ operator+(const Poly_& a, const Poly_& b) {
    Poly_ r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend Poly_ operator-(const Poly_& a, const Poly_& b) {
    Poly_ nb = b;
    for (auto& x : nb.c) x = -x;
    return a + nb;
  }
  friend Poly_ operator*(const Poly_& a, const Poly_& b) {
    Poly_ r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
};

}  // namespace

FieldSpec field_spec_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::InvalidInput, "field definition must be a JSON object");
  for (const char* key : {"p", "eis"})
    require(j.contains(key), ErrorKind::InvalidInput, std::string("field definition lacks \"") + key + "\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::vector<std::string> known = {"p", "f", "e", "eis", "h", "N", "n", "guard", "name"};
    require(std::find(known.begin(), known.end(), it.key()) != known.end(), ErrorKind::InvalidInput,
            "unknown key \"" + it.key() + "\" in field definition");
  }
  FieldSpec s;
  s.p = int_of(j["p"]);
  s.f = small_int(j, "f", 1);
  require(j["eis"].is_array(), ErrorKind::InvalidInput, "eis must be a list");
  for (const auto& c : j["eis"]) {
    Coeffs w;
    if (c.is_array())
      for (const auto& d : c) w.push_back(int_of(d));
    else
      w.push_back(int_of(c));
    s.eis.push_back(std::move(w));
  }
  s.e = small_int(j, "e", static_cast<int>(s.eis.size()) - 1);
  require(s.e == static_cast<int>(s.eis.size()) - 1, ErrorKind::InvalidInput, "e does not match the length of eis");
  if (j.contains("h")) {
    require(j["h"].is_array(), ErrorKind::InvalidInput, "h must be a list");
    for (const auto& c : j["h"]) s.h.push_back(int_of(c));
  } else {
    require(s.f == 1, ErrorKind::InvalidInput, "h is required when f > 1");
    s.h = {0, 1};
  }
  s.N = small_int(j, "N", s.N);
  s.n = small_int(j, "n", s.n);
  s.guard = small_int(j, "guard", s.guard);
  return s;
}

Json to_json(const FieldSpec& s) {
  Json j;
  j["p"] = json_of(s.p);
  j["f"] = s.f;
  j["e"] = s.e;
  Json eis = Json::array();
  for (const auto& c : s.eis) {
    if (s.f == 1) {
      eis.push_back(json_of(c.empty() ? Int(0) : c[0]));
    } else {
      Json w = Json::array();
      for (const auto& d : c) w.push_back(json_of(d));
      eis.push_back(w);
    }
  }
  j["eis"] = eis;
  Json h = Json::array();
  for (const auto& c : s.h) h.push_back(json_of(c));
  j["h"] = h;
  j["N"] = s.N;
  j["n"] = s.n;
  return j;
}

FieldSpec load_field_spec(const std::string& path_or_json) {
  std::string text = path_or_json;
  const auto first = text.find_first_not_of(" \t\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(path_or_json);
    require(static_cast<bool>(in), ErrorKind::InvalidInput, "cannot read field file " + path_or_json);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed field definition: ") + e.what());
  }
  return field_spec_from_json(j);
}

FieldElem parse_element(const Field& k, const std::string& text) {
  ExprParser<FieldElem> ps;
  ps.lx.s = text;
  ps.constant = [&](const Int& z) { return FieldElem::from_int(k, z); };
  ps.symbol = [&](const std::string& w) {
    if (w == "pi") return FieldElem::uniformizer_power(k, 1);
    if (w == "p") return FieldElem::from_int(k, k->p());
    if (w == "x") {
      require(k->f() > 1, ErrorKind::InvalidInput, "x is only available for residue degree f > 1");
      return FieldElem::from_coeffs(k, k->raw_basis(0, 1));
    }
    ps.lx.error("unknown symbol '" + w + "'");
  };
  ps.divide = [](const FieldElem& a, const FieldElem& b) { return a / b; };
  ps.power = [](const FieldElem& a, long e) { return a.pow(e); };
  return ps.run();
}

GaussElem parse_gauss(long p, int N, const std::string& text) {
  ExprParser<Poly_> ps;
  ps.lx.s = text;
  ps.constant = [](const Int& z) { return Poly_{{z}}; };
  ps.symbol = [&](const std::string& w) {
    if (w != "t") ps.lx.error("unknown symbol '" + w + "'");
    return Poly_{{Int(0), Int(1)}};
  };
  // a single top-level division, handled below
  ps.allow_div = false;
  ps.power = [&](const Poly_& a, long e) {
    if (e < 0) ps.lx.error("negative exponent");
    Poly_ r{{Int(1)}};
    for (long i = 0; i < e; ++i) r = r * a;
    return r;
  };
  Poly_ num = ps.expr();
  Poly_ den{{Int(1)}};
  if (ps.lx.eat("/")) den = ps.expr();
  if (!ps.lx.at_end()) ps.lx.error("unexpected trailing input");
  return GaussElem::from_polys(p, N, num.c, den.c);
}

Json to_json(const Hyperfield& h, const HfClass& c) {
  Json j;
  if (c.is_zero()) {
    j["zero"] = true;
  } else {
    j["gamma"] = c.gamma;
    Json u = Json::array();
    for (const auto& d : c.unit) u.push_back(json_of(d));
    j["unit"] = u;
  }
  j["text"] = h.to_string(c);
  return j;
}

HfClass class_from_json(const Hyperfield& h, const Json& j) {
  require(j.is_object(), ErrorKind::InvalidInput, "class must be an object");
  if (j.value("zero", false)) return h.zero();
  require(j.contains("gamma") && j.contains("unit"), ErrorKind::InvalidInput, "class needs gamma and unit");
  Coeffs u;
  for (const auto& d : j["unit"]) u.push_back(int_of(d));
  require(static_cast<int>(u.size()) == h.model().dim(), ErrorKind::InvalidInput, "unit has the wrong length");
  return h.make(j["gamma"].get<int>(), u);
}

Json to_json(const Hyperfield& h, const HfSumBall& s) {
  Json j;
  j["radius"] = s.radius;
  j["contains_zero"] = s.contains_zero;
  j["single"] = h.is_single(s);
  j["text"] = h.to_string(s);
  return j;
}

}  // namespace vhf
