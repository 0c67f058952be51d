#include "vhf/gauss.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace vhf {

namespace {

long modp(long x, long p) { return ((x % p) + p) % p; }

void trim(std::vector<long>& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  if (a.empty()) a.push_back(0);
}

void trim(IntPoly& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  if (a.empty()) a.push_back(0);
}

bool fp_is_zero(const std::vector<long>& a) {
  return std::all_of(a.begin(), a.end(), [](long c) { return c == 0; });
}

long fp_inv(long a, long p) {
  long r = 1, b = modp(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// a = q b + r over F_p.
void fp_divmod(std::vector<long> a, const std::vector<long>& b, long p, std::vector<long>& q, std::vector<long>& r) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  const long lead_inv = fp_inv(b.back(), p);
  q.assign(std::max<int>(1, static_cast<int>(a.size()) - db), 0);
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    const long c = a[i] * lead_inv % p;
    if (c == 0) continue;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) a[i - db + j] = modp(a[i - db + j] - c * b[j], p);
  }
  a.resize(std::max(1, db));
  trim(a);
  trim(q);
  r = a;
}

std::vector<long> fp_gcd(std::vector<long> a, std::vector<long> b, long p) {
  trim(a);
  trim(b);
  while (!fp_is_zero(b)) {
    std::vector<long> q, r;
    fp_divmod(a, b, p, q, r);
    a = b;
    b = r;
  }
  const long li = fp_inv(a.back(), p);
  for (auto& c : a) c = c * li % p;
  return a;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b, const Int& m) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto& c : r) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(r);
  return r;
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b, const Int& m) {
  IntPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  for (auto& c : r) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(r);
  return r;
}

IntPoly poly_scale(const IntPoly& a, const Int& s, const Int& m) {
  IntPoly r = a;
  for (auto& c : r) {
    c *= s;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  }
  trim(r);
  return r;
}

Int ipow(long p, int k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::max(k, 0)));
  return r;
}

int content_val(const IntPoly& a, long p, int bound) {
  int best = bound;
  const Int P = p;
  for (const auto& c : a)
    if (c != 0) best = std::min(best, vp(c, P));
  return best;
}

std::vector<long> reduce_p(const IntPoly& a, long p) {
  std::vector<long> r;
  for (const auto& c : a) {
    Int x;
    mpz_fdiv_r_ui(x.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
    r.push_back(x.get_si());
  }
  trim(r);
  return r;
}

std::string poly_string(const std::vector<std::string>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == "0") continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << coeffs[i];
    } else {
      if (coeffs[i] != "1") os << coeffs[i] << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return first ? "0" : os.str();
}

}  // namespace

std::vector<long> fp_mul(const std::vector<long>& a, const std::vector<long>& b, long p) {
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

FpFrac fp_reduce(std::vector<long> num, std::vector<long> den, long p) {
  for (auto& c : num) c = modp(c, p);
  for (auto& c : den) c = modp(c, p);
  trim(num);
  trim(den);
  require(!fp_is_zero(den), ErrorKind::DivisionByZero, "zero denominator over F_p");
  if (fp_is_zero(num)) return FpFrac{};
  const auto g = fp_gcd(num, den, p);
  std::vector<long> q, r;
  fp_divmod(num, g, p, q, r);
  num = q;
  fp_divmod(den, g, p, q, r);
  den = q;
  const long li = fp_inv(den.back(), p);
  for (auto& c : num) c = c * li % p;
  for (auto& c : den) c = c * li % p;
  return FpFrac{num, den};
}

std::string to_string(const FpFrac& f) {
  std::vector<std::string> n, d;
  for (long c : f.num) n.push_back(std::to_string(c));
  for (long c : f.den) d.push_back(std::to_string(c));
  if (f.den == std::vector<long>{1}) return poly_string(n);
  return "(" + poly_string(n) + ")/(" + poly_string(d) + ")";
}

// ---------------------------------------------------------------- elements

GaussElem GaussElem::zero(long p, int N) {
  GaussElem r;
  r.p_ = p;
  r.N_ = N;
  return r;
}

GaussElem GaussElem::from_int(long p, int N, const Int& z) { return from_polys(p, N, {z}, {1}); }

GaussElem GaussElem::t(long p, int N) { return from_polys(p, N, {0, 1}, {1}); }

GaussElem GaussElem::from_polys(long p, int N, IntPoly num, IntPoly den) {
  require(p >= 2 && mpz_probab_prime_p(Int(p).get_mpz_t(), 30) > 0, ErrorKind::InvalidInput, "p must be prime");
  require(N >= 1, ErrorKind::InvalidInput, "precision must be positive");
  trim(num);
  trim(den);
  require(std::any_of(den.begin(), den.end(), [](const Int& c) { return c != 0; }), ErrorKind::DivisionByZero,
          "zero denominator");
  require(content_val(den, p, INT_MAX) == 0, ErrorKind::NonUnitDenominator,
          "denominator must have a coefficient prime to p");
  if (std::all_of(num.begin(), num.end(), [](const Int& c) { return c == 0; })) return zero(p, N);
  return normalize(p, N, 0, std::move(num), std::move(den), N);
}

GaussElem GaussElem::normalize(long p, int N, int shift, IntPoly num, IntPoly den, int rel) {
  GaussElem r;
  r.p_ = p;
  r.N_ = N;
  rel = std::min(rel, N);
  const Int m = ipow(p, rel);
  for (auto& c : num) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(num);
  const int c = content_val(num, p, rel);
  r.exact_zero_ = false;
  if (c >= rel) {
    // indistinguishable from zero: value in p^(shift + rel)
    r.shift_ = shift + rel;
    r.rel_ = 0;
    r.num_ = {0};
    r.den_ = {1};
    return r;
  }
  const Int pc = ipow(p, c);
  for (auto& x : num) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pc.get_mpz_t());
  r.shift_ = shift + c;
  r.rel_ = rel - c;
  const Int mr = ipow(p, r.rel_);
  for (auto& x : den) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mr.get_mpz_t());
  trim(den);
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

bool GaussElem::is_zero() const { return exact_zero_ || rel_ == 0 || shift_ >= N_; }

std::optional<int> GaussElem::valuation() const {
  if (exact_zero_) return std::nullopt;
  if (is_zero()) fail(ErrorKind::ZeroAtPrecision, "Gauss element is zero at working precision");
  return shift_;
}

int GaussElem::abs_prec() const { return exact_zero_ ? INT_MAX / 4 : shift_ + rel_; }

GaussElem GaussElem::operator-() const {
  if (exact_zero_ || rel_ == 0) return *this;
  GaussElem r = *this;
  r.num_ = poly_scale(num_, -1, ipow(p_, rel_));
  return r;
}

GaussElem operator+(const GaussElem& a, const GaussElem& b) {
  require(a.p_ == b.p_ && a.N_ == b.N_, ErrorKind::MixedFields, "Gauss elements over different (p, N)");
  if (a.exact_zero_) return b;
  if (b.exact_zero_) return a;
  const int s = std::min(a.shift_, b.shift_);
  const int rel = std::min(a.abs_prec(), b.abs_prec()) - s;
  if (rel <= 0) return GaussElem::normalize(a.p_, a.N_, s, {0}, {1}, 0);
  const Int m = ipow(a.p_, rel);
  const IntPoly an = poly_scale(poly_mul(a.num_, b.den_, m), ipow(a.p_, a.shift_ - s), m);
  const IntPoly bn = poly_scale(poly_mul(b.num_, a.den_, m), ipow(a.p_, b.shift_ - s), m);
  IntPoly num = poly_add(an, bn, m);
  IntPoly den = poly_mul(a.den_, b.den_, m);
  if (a.shift_ == b.shift_ && a.rel_ == b.rel_ &&
      std::all_of(num.begin(), num.end(), [](const Int& c) { return c == 0; }))
    return GaussElem::zero(a.p_, a.N_);
  return GaussElem::normalize(a.p_, a.N_, s, std::move(num), std::move(den), rel);
}

GaussElem operator-(const GaussElem& a, const GaussElem& b) { return a + (-b); }

GaussElem operator*(const GaussElem& a, const GaussElem& b) {
  require(a.p_ == b.p_ && a.N_ == b.N_, ErrorKind::MixedFields, "Gauss elements over different (p, N)");
  if (a.exact_zero_ || b.exact_zero_) return GaussElem::zero(a.p_, a.N_);
  const int rel = std::min(a.rel_, b.rel_);
  const Int m = ipow(a.p_, std::max(rel, 0));
  return GaussElem::normalize(a.p_, a.N_, a.shift_ + b.shift_, poly_mul(a.num_, b.num_, m),
                              poly_mul(a.den_, b.den_, m), rel);
}

GaussElem GaussElem::inv() const {
  require(!exact_zero_, ErrorKind::DivisionByZero, "inverse of exact zero");
  require(!is_zero(), ErrorKind::PrecisionExhausted, "inverse of an element indistinguishable from zero");
  GaussElem r = *this;
  r.shift_ = -shift_;
  std::swap(r.num_, r.den_);
  return r;
}

GaussElem operator/(const GaussElem& a, const GaussElem& b) { return a * b.inv(); }

bool operator==(const GaussElem& a, const GaussElem& b) { return (a - b).is_zero(); }

GaussElem GaussElem::pow(long k) const {
  if (k < 0) return inv().pow(-k);
  GaussElem r = from_int(p_, N_, 1), b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

GaussElem GaussElem::times_p_pow(int k) const {
  if (exact_zero_) return *this;
  GaussElem r = *this;
  r.shift_ += k;
  return r;
}

FpFrac GaussElem::residue() const {
  if (exact_zero_) return FpFrac{};
  require(rel_ > 0 || shift_ >= 1, ErrorKind::PrecisionExhausted, "residue not determined");
  if (rel_ == 0) return FpFrac{};
  require(shift_ >= 0, ErrorKind::NegativeValuation, "residue of an element of negative valuation");
  if (shift_ > 0) return FpFrac{};
  return fp_reduce(reduce_p(num_, p_), reduce_p(den_, p_), p_);
}

std::string GaussElem::to_string() const {
  if (exact_zero_) return "0";
  if (rel_ == 0) return "O(" + std::to_string(p_) + "^" + std::to_string(shift_) + ")";
  std::vector<std::string> n, d;
  for (const auto& c : num_) n.push_back(c.get_str());
  for (const auto& c : den_) d.push_back(c.get_str());
  std::string body = "(" + poly_string(n) + ")/(" + poly_string(d) + ")";
  if (shift_ != 0) body = std::to_string(p_) + "^" + std::to_string(shift_) + "*" + body;
  return body;
}

bool congruent_mod(const GaussElem& a, const GaussElem& b, int k) {
  const GaussElem d = a - b;
  if (d.is_exact_zero()) return true;
  return d.shift() >= k;
}

// ---------------------------------------------------------------- p-bases

bool p_independent_check(const GaussElem& b) {
  require(b.valuation() == 0, ErrorKind::InvalidInput, "p-independence is checked for units");
  const FpFrac r = b.residue();
  const long p = b.p();
  auto in_tp = [&](const std::vector<long>& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0 && i % static_cast<std::size_t>(p) != 0) return false;
    return true;
  };
  return !(in_tp(r.num) && in_tp(r.den));
}

bool p_independent_set(const std::vector<GaussElem>& bs) {
  if (bs.empty()) return true;
  if (bs.size() == 1) return p_independent_check(bs[0]);
  return false;
}

GaussElem lift_fraction(long p, int N, const FpFrac& f) {
  IntPoly n, d;
  for (long c : f.num) n.push_back(c);
  for (long c : f.den) d.push_back(c);
  return GaussElem::from_polys(p, N, n, d);
}

PBasisExpansion pbasis_expand_t(const GaussElem& a, int l) {
  const long p = a.p();
  require(l >= 0, ErrorKind::InvalidInput, "level must be non-negative");
  long pl = 1;
  for (int i = 0; i < l; ++i) pl *= p;
  require(pl <= 9, ErrorKind::BudgetExceeded, "p^l = " + std::to_string(pl) + " exceeds the budget 9");
  require(a.num().size() <= 9 && a.den().size() <= 9, ErrorKind::BudgetExceeded, "degree exceeds the budget 8");
  require(a.N() >= l + 1, ErrorKind::PrecisionExhausted, "precision below l+1");
  require(a.is_exact_zero() || a.is_zero() || a.shift() >= 0, ErrorKind::NegativeValuation,
          "pbasis_expand_t needs v(a) >= 0");

  PBasisExpansion out;
  out.p = p;
  out.level = l;
  GaussElem rest = a;
  for (int i = 0; i <= l; ++i) {
    const FpFrac r = rest.times_p_pow(-i).residue();
    // r = f g^(p^l - 1) / g^(p^l), and g^(p^l) = g(t^(p^l)).
    std::vector<long> F = r.num;
    for (long k = 1; k < pl; ++k) F = fp_mul(F, r.den, p);
    std::vector<std::vector<long>> parts(pl, std::vector<long>{0});
    for (std::size_t k = 0; k < F.size(); ++k) {
      auto& part = parts[k % pl];
      const std::size_t q = k / pl;
      if (part.size() <= q) part.resize(q + 1, 0);
      part[q] = F[k];
    }
    std::vector<FpFrac> row;
    GaussElem value = GaussElem::zero(p, a.N());
    for (long j = 0; j < pl; ++j) {
      row.push_back(fp_reduce(parts[j], r.den, p));
      if (row.back().num == std::vector<long>{0}) continue;
      value = value + lift_fraction(p, a.N(), row.back()).pow(pl) * GaussElem::t(p, a.N()).pow(j);
    }
    out.digits.push_back(row);
    rest = rest - value.times_p_pow(i);
  }
  return out;
}

GaussElem pbasis_assemble(const PBasisExpansion& d, int N) {
  long pl = 1;
  for (int i = 0; i < d.level; ++i) pl *= d.p;
  GaussElem acc = GaussElem::zero(d.p, N);
  for (std::size_t i = 0; i < d.digits.size(); ++i)
    for (std::size_t j = 0; j < d.digits[i].size(); ++j) {
      if (d.digits[i][j].num == std::vector<long>{0}) continue;
      acc = acc + (lift_fraction(d.p, N, d.digits[i][j]).pow(pl) * GaussElem::t(d.p, N).pow(static_cast<long>(j)))
                      .times_p_pow(static_cast<int>(i));
    }
  return acc;
}

}  // namespace vhf
