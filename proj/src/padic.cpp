#include "vhf/padic.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace vhf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotEisenstein: return "NotEisenstein";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::PrecisionTooSmall: return "PrecisionTooSmall";
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ZeroAtPrecision: return "ZeroAtPrecision";
    case ErrorKind::NegativeValuation: return "NegativeValuation";
    case ErrorKind::HenselPreconditionFailed: return "HenselPreconditionFailed";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::CongruenceFailed: return "CongruenceFailed";
    case ErrorKind::NonUnitDenominator: return "NonUnitDenominator";
    case ErrorKind::NoRootFound: return "NoRootFound";
    case ErrorKind::HomViolation: return "HomViolation";
    case ErrorKind::IncompatibleResidueEmbedding: return "IncompatibleResidueEmbedding";
    case ErrorKind::NotTame: return "NotTame";
    case ErrorKind::NotNormalForm: return "NotNormalForm";
    case ErrorKind::ThresholdNotMet: return "ThresholdNotMet";
    case ErrorKind::RestrictionMismatch: return "RestrictionMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SortError: return "SortError";
    case ErrorKind::TranslationDisagreement: return "TranslationDisagreement";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

int vp(const Int& z, const Int& p) {
  if (z == 0) return INT_MAX;
  Int rest;
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

namespace {

Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

int ceil_div(int a, int b) {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

// Remainder of a by monic b over F_p; both little-endian.
Coeffs fp_poly_rem(Coeffs a, const Coeffs& b, const Int& p) {
  const int db = static_cast<int>(b.size()) - 1;
  for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
    Int c = mod_pos(a[k], p);
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  a.resize(std::max(db, 0));
  for (auto& c : a) c = mod_pos(c, p);
  return a;
}

bool irreducible_mod_p(const Coeffs& h, const Int& p) {
  const int f = static_cast<int>(h.size()) - 1;
  if (f <= 1) return true;
  if (!p.fits_ulong_p()) fail(ErrorKind::BudgetExceeded, "irreducibility search needs a small prime");
  const unsigned long pl = p.get_ui();
  for (int d = 1; d <= f / 2; ++d) {
    // Enumerate monic polynomials of degree d.
    double count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<double>(pl);
    if (count > 2e6) fail(ErrorKind::BudgetExceeded, "irreducibility search too large");
    std::vector<unsigned long> digits(d, 0);
    while (true) {
      Coeffs g(d + 1);
      for (int i = 0; i < d; ++i) g[i] = digits[i];
      g[d] = 1;
      Coeffs r = fp_poly_rem(h, g, p);
      if (std::all_of(r.begin(), r.end(), [](const Int& c) { return c == 0; })) return false;
      int i = 0;
      while (i < d && ++digits[i] == pl) digits[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- residue field

ResidueField::ResidueField(Int p, Coeffs h_monic) : p_(std::move(p)), f_(static_cast<int>(h_monic.size()) - 1) {
  h_.reserve(h_monic.size());
  for (const auto& c : h_monic) h_.push_back(mod_pos(c, p_));
}

Int ResidueField::order() const {
  Int q;
  mpz_pow_ui(q.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(f_));
  return q;
}

Coeffs ResidueField::one() const {
  Coeffs r = zero();
  r[0] = 1;
  return r;
}

Coeffs ResidueField::from_int(const Int& z) const {
  Coeffs r = zero();
  r[0] = mod_pos(z, p_);
  return r;
}

bool ResidueField::is_zero(const Coeffs& a) const {
  return std::all_of(a.begin(), a.end(), [](const Int& c) { return c == 0; });
}

Coeffs ResidueField::add(const Coeffs& a, const Coeffs& b) const {
  Coeffs r(f_);
  for (int i = 0; i < f_; ++i) r[i] = mod_pos(a[i] + b[i], p_);
  return r;
}

Coeffs ResidueField::sub(const Coeffs& a, const Coeffs& b) const {
  Coeffs r(f_);
  for (int i = 0; i < f_; ++i) r[i] = mod_pos(a[i] - b[i], p_);
  return r;
}

Coeffs ResidueField::neg(const Coeffs& a) const {
  Coeffs r(f_);
  for (int i = 0; i < f_; ++i) r[i] = mod_pos(-a[i], p_);
  return r;
}

Coeffs ResidueField::mul(const Coeffs& a, const Coeffs& b) const {
  Coeffs r(2 * f_ - 1, 0);
  for (int i = 0; i < f_; ++i)
    for (int j = 0; j < f_; ++j) r[i + j] += a[i] * b[j];
  return fp_poly_rem(std::move(r), h_, p_);
}

Coeffs ResidueField::pow(const Coeffs& a, const Int& k) const {
  Coeffs result = one();
  Coeffs base = a;
  const auto bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(k.get_mpz_t(), i)) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

Coeffs ResidueField::inv(const Coeffs& a) const {
  require(!is_zero(a), ErrorKind::DivisionByZero, "inverse of 0 in residue field");
  return pow(a, order() - 2);
}

Coeffs ResidueField::frobenius_root(const Coeffs& a, int l) const {
  const int t = ((f_ - l % f_) % f_);
  Coeffs r = a;
  for (int i = 0; i < t; ++i) r = frobenius(r);
  return r;
}

std::vector<Coeffs> ResidueField::elements(std::size_t cap) const {
  const Int q = order();
  require(q <= Int(static_cast<unsigned long>(cap)), ErrorKind::BudgetExceeded, "residue field too large to enumerate");
  std::vector<Coeffs> out;
  Coeffs cur = zero();
  while (true) {
    out.push_back(cur);
    int i = f_ - 1;
    while (i >= 0) {
      cur[i] += 1;
      if (cur[i] < p_) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::string ResidueField::to_string(const Coeffs& a) const {
  if (f_ == 1) return a[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < f_; ++j) {
    if (a[j] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (j == 0) {
      os << a[j];
    } else {
      if (a[j] != 1) os << a[j] << "·";
      os << "x";
      if (j > 1) os << "^" << j;
    }
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------- field model

Field FieldModel::make(const FieldSpec& in) {
  FieldSpec spec = in;
  require(mpz_probab_prime_p(spec.p.get_mpz_t(), 30) > 0, ErrorKind::InvalidInput, "p must be prime");
  require(spec.f >= 1 && spec.e >= 1, ErrorKind::InvalidInput, "f and e must be positive");
  const int f = spec.f, e = spec.e;
  require(static_cast<int>(spec.h.size()) == f + 1 && spec.h[f] == 1, ErrorKind::InvalidInput,
          "h must be monic of degree f");
  require(static_cast<int>(spec.eis.size()) == e + 1, ErrorKind::InvalidInput, "eis must have e+1 coefficients");
  for (auto& c : spec.eis) {
    require(static_cast<int>(c.size()) <= f, ErrorKind::InvalidInput, "Eisenstein coefficient longer than f");
    c.resize(f, 0);
  }
  require(irreducible_mod_p(spec.h, spec.p), ErrorKind::NotIrreducible, "h is reducible mod p");

  // Eisenstein: monic, lower coefficients in pW, constant term in pW \ p^2 W.
  Coeffs lead(f, 0);
  lead[0] = 1;
  require(spec.eis[e] == lead, ErrorKind::NotEisenstein, "leading coefficient must be 1");
  for (int i = 0; i < e; ++i)
    for (const auto& c : spec.eis[i])
      require(mpz_divisible_p(c.get_mpz_t(), spec.p.get_mpz_t()) != 0, ErrorKind::NotEisenstein,
              "coefficient of X^" + std::to_string(i) + " is not divisible by p");
  const bool const_exact = std::any_of(spec.eis[0].begin(), spec.eis[0].end(),
                                       [&](const Int& c) { return c != 0 && vp(c, spec.p) == 1; });
  require(const_exact, ErrorKind::NotEisenstein, "constant term must have valuation exactly v(p)");

  require(spec.N >= 4 * e + 1, ErrorKind::PrecisionTooSmall,
          "N must be at least 4e+1 (got N=" + std::to_string(spec.N) + ")");
  require(spec.n >= 1, ErrorKind::InvalidInput, "hyperfield level n must be positive");
  require(spec.N >= spec.n + 4 * e, ErrorKind::PrecisionTooSmall,
          "N must be at least n + 4e (got N=" + std::to_string(spec.N) + ", n=" + std::to_string(spec.n) + ")");

  auto k = std::shared_ptr<FieldModel>(new FieldModel());
  if (spec.guard < 0) spec.guard = 4 * e + 4;
  k->spec_ = spec;
  k->kf_ = ResidueField(spec.p, spec.h);
  k->cap_ = spec.N + spec.guard;
  k->M_ = ceil_div(k->cap_, e) + 1;
  k->ppow_.resize(k->M_ + 2);
  k->ppow_[0] = 1;
  for (std::size_t i = 1; i < k->ppow_.size(); ++i) k->ppow_[i] = k->ppow_[i - 1] * spec.p;
  const Int& pm = k->ppow_[k->M_];
  k->eis_.resize(e + 1);
  for (int i = 0; i <= e; ++i) {
    k->eis_[i] = spec.eis[i];
    for (auto& c : k->eis_[i]) c = mod_pos(c, pm);
  }
  // pi^e = -sum_{i<e} eis_i pi^i = p * eps
  Coeffs eps(k->dim(), 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < f; ++j) {
      Int q;
      mpz_divexact(q.get_mpz_t(), spec.eis[i][j].get_mpz_t(), spec.p.get_mpz_t());
      eps[i * f + j] = mod_pos(-q, pm);
    }
  Coeffs eps_inv = k->raw_unit_inverse(eps);
  k->eps_inv_pow_.push_back(k->raw_from_int(1));
  for (int i = 1; i <= k->M_ + 1; ++i) k->eps_inv_pow_.push_back(k->raw_mul(k->eps_inv_pow_.back(), eps_inv));
  k->eps_pow_.push_back(k->raw_from_int(1));
  for (int i = 1; i <= k->M_ + 1; ++i) k->eps_pow_.push_back(k->raw_mul(k->eps_pow_.back(), eps));
  k->p_unit_ = k->raw_truncate(eps_inv, k->cap_);
  return k;
}

const Int& FieldModel::p_power(int k) const {
  if (k < 0 || k >= static_cast<int>(ppow_.size())) fail(ErrorKind::PrecisionExhausted, "p-power beyond storage");
  return ppow_[k];
}

void FieldModel::reduce_storage(Coeffs& a) const {
  const Int& pm = ppow_[M_];
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pm.get_mpz_t());
}

Coeffs FieldModel::raw_from_int(const Int& z) const {
  Coeffs r = raw_zero();
  r[0] = mod_pos(z, ppow_[M_]);
  return r;
}

Coeffs FieldModel::raw_basis(int i, int j) const {
  Coeffs r = raw_zero();
  r[i * f() + j] = 1;
  return r;
}

Coeffs FieldModel::raw_add(const Coeffs& a, const Coeffs& b) const {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  reduce_storage(r);
  return r;
}

Coeffs FieldModel::raw_sub(const Coeffs& a, const Coeffs& b) const {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  reduce_storage(r);
  return r;
}

Coeffs FieldModel::raw_neg(const Coeffs& a) const {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  reduce_storage(r);
  return r;
}

Coeffs FieldModel::w_mul(std::span<const Int> a, std::span<const Int> b) const {
  const int f = this->f();
  if (f == 1) return Coeffs{a[0] * b[0]};
  Coeffs r(2 * f - 1, 0);
  for (int i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f; ++j) r[i + j] += a[i] * b[j];
  }
  const auto& h = spec_.h;
  for (int k = 2 * f - 2; k >= f; --k) {
    if (r[k] == 0) continue;
    for (int j = 0; j < f; ++j) r[k - f + j] -= r[k] * h[j];
  }
  r.resize(f);
  return r;
}

Coeffs FieldModel::raw_mul(const Coeffs& a, const Coeffs& b) const {
  const int e = this->e(), f = this->f();
  if (e == 1 && f == 1) {
    Coeffs r{a[0] * b[0]};
    reduce_storage(r);
    return r;
  }
  std::vector<Coeffs> blocks(2 * e - 1, Coeffs(f, 0));
  for (int i1 = 0; i1 < e; ++i1) {
    std::span<const Int> ab(a.data() + i1 * f, f);
    if (std::all_of(ab.begin(), ab.end(), [](const Int& c) { return c == 0; })) continue;
    for (int i2 = 0; i2 < e; ++i2) {
      Coeffs w = w_mul(ab, std::span<const Int>(b.data() + i2 * f, f));
      for (int j = 0; j < f; ++j) blocks[i1 + i2][j] += w[j];
    }
  }
  const Int& pm = ppow_[M_];
  for (int k = 2 * e - 2; k >= e; --k) {
    for (auto& c : blocks[k]) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pm.get_mpz_t());
    for (int i = 0; i < e; ++i) {
      Coeffs w = w_mul(eis_[i], blocks[k]);
      for (int j = 0; j < f; ++j) blocks[k - e + i][j] -= w[j];
    }
  }
  Coeffs r(e * f);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < f; ++j) r[i * f + j] = std::move(blocks[i][j]);
  reduce_storage(r);
  return r;
}

Coeffs FieldModel::raw_mul_pi(const Coeffs& a) const {
  const int e = this->e(), f = this->f();
  Coeffs r(e * f, 0);
  for (int i = e - 1; i >= 1; --i)
    for (int j = 0; j < f; ++j) r[i * f + j] = a[(i - 1) * f + j];
  std::span<const Int> top(a.data() + (e - 1) * f, f);
  for (int i = 0; i < e; ++i) {
    Coeffs w = w_mul(eis_[i], top);
    for (int j = 0; j < f; ++j) r[i * f + j] -= w[j];
  }
  reduce_storage(r);
  return r;
}

Coeffs FieldModel::raw_mul_pi_pow(const Coeffs& a, int k) const {
  Coeffs r = a;
  // pi^e = p * eps: whole blocks of e are a multiplication by p and eps.
  const int q = k / e();
  if (q > 0) {
    if (q > M_) return raw_zero();
    r = raw_mul(r, eps_pow_[q]);
    for (auto& c : r) c *= ppow_[q];
    reduce_storage(r);
  }
  for (int i = 0; i < k % e(); ++i) r = raw_mul_pi(r);
  return r;
}

Coeffs FieldModel::raw_div_pi_pow(const Coeffs& a, int k) const {
  if (k == 0) return a;
  const int kp = ceil_div(k, e());
  if (kp > M_) fail(ErrorKind::PrecisionExhausted, "division by pi^" + std::to_string(k) + " beyond storage");
  Coeffs r = a;
  for (int i = 0; i < e() * kp - k; ++i) r = raw_mul_pi(r);
  r = raw_mul(r, eps_inv_pow_[kp]);
  const Int& d = ppow_[kp];
  for (auto& c : r) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
      fail(ErrorKind::PrecisionExhausted, "inexact division by pi^" + std::to_string(k));
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  }
  return r;
}

Coeffs FieldModel::raw_truncate(const Coeffs& a, int k) const {
  const int e = this->e(), f = this->f();
  Coeffs r(e * f);
  for (int i = 0; i < e; ++i) {
    const int t = k - i > 0 ? std::min(ceil_div(k - i, e), M_) : 0;
    for (int j = 0; j < f; ++j) {
      if (t == 0) {
        r[i * f + j] = 0;
      } else {
        mpz_fdiv_r(r[i * f + j].get_mpz_t(), a[i * f + j].get_mpz_t(), ppow_[t].get_mpz_t());
      }
    }
  }
  return r;
}

int FieldModel::raw_valuation(const Coeffs& a, int bound) const {
  int best = bound;
  const int f = this->f();
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    if (a[idx] == 0) continue;
    const int i = static_cast<int>(idx) / f;
    if (i >= best) continue;
    int v = 0;
    while (v < M_ && mpz_divisible_p(a[idx].get_mpz_t(), ppow_[v + 1].get_mpz_t())) ++v;
    best = std::min(best, e() * v + i);
  }
  return best;
}

Coeffs FieldModel::raw_residue(const Coeffs& a) const {
  Coeffs r(f());
  for (int j = 0; j < f(); ++j) r[j] = mod_pos(a[j], p());
  return r;
}

Coeffs FieldModel::raw_lift_residue(const Coeffs& r) const {
  Coeffs a = raw_zero();
  for (int j = 0; j < f(); ++j) a[j] = r[j];
  return a;
}

Coeffs FieldModel::raw_unit_inverse(const Coeffs& u) const {
  const Coeffs res = raw_residue(u);
  require(!kf_.is_zero(res), ErrorKind::DivisionByZero, "raw_unit_inverse of a non-unit");
  Coeffs x = raw_lift_residue(kf_.inv(res));
  const Coeffs two = raw_from_int(2);
  for (int prec = 1; prec < e() * M_; prec *= 2) x = raw_mul(x, raw_sub(two, raw_mul(u, x)));
  return x;
}

// ---------------------------------------------------------------- elements

void require_same_field(const FieldElem& a, const FieldElem& b) {
  require(a.field() && a.field() == b.field(), ErrorKind::MixedFields, "operands belong to different fields");
}

FieldElem FieldElem::normalize(const Field& k, int shift0, Coeffs w, int rel_bound) {
  FieldElem r;
  r.field_ = k;
  rel_bound = std::min(rel_bound, k->cap());
  if (rel_bound <= 0) {
    r.state_ = State::ApproxZero;
    r.shift_ = shift0 + rel_bound;
    return r;
  }
  w = k->raw_truncate(w, rel_bound);
  const int v = k->raw_valuation(w, rel_bound);
  if (v >= rel_bound) {
    r.state_ = State::ApproxZero;
    r.shift_ = shift0 + rel_bound;
    return r;
  }
  r.state_ = State::Nonzero;
  r.shift_ = shift0 + v;
  r.rel_prec_ = rel_bound - v;
  r.unit_ = v == 0 ? std::move(w) : k->raw_truncate(k->raw_div_pi_pow(w, v), r.rel_prec_);
  return r;
}

FieldElem FieldElem::zero(const Field& k) {
  FieldElem r;
  r.field_ = k;
  return r;
}

FieldElem FieldElem::one(const Field& k) { return from_unit(k, 0, k->raw_from_int(1), k->cap()); }

FieldElem FieldElem::from_int(const Field& k, const Int& z) {
  if (z == 0) return zero(k);
  return normalize(k, 0, k->raw_from_int(z), k->cap());
}

FieldElem FieldElem::from_rational(const Field& k, const Int& num, const Int& den) {
  require(den != 0, ErrorKind::DivisionByZero, "zero denominator");
  return from_int(k, num) / from_int(k, den);
}

FieldElem FieldElem::from_coeffs(const Field& k, const Coeffs& raw, int abs_prec) {
  require(static_cast<int>(raw.size()) <= k->dim(), ErrorKind::InvalidInput, "too many coefficients");
  Coeffs w = raw;
  w.resize(k->dim(), 0);
  if (std::all_of(w.begin(), w.end(), [](const Int& c) { return c == 0; })) return zero(k);
  const Int& pm = k->p_power(k->storage_exponent());
  for (auto& c : w) c = mod_pos(c, pm);
  return normalize(k, 0, std::move(w), abs_prec < 0 ? k->cap() : abs_prec);
}

FieldElem FieldElem::from_unit(const Field& k, int shift, const Coeffs& unit, int rel_prec) {
  return normalize(k, shift, unit, rel_prec);
}

FieldElem FieldElem::uniformizer_power(const Field& k, int exponent) {
  FieldElem r = one(k);
  r.shift_ = exponent;
  return r;
}

FieldElem FieldElem::approx_zero(const Field& k, int abs_prec) {
  FieldElem r;
  r.field_ = k;
  r.state_ = State::ApproxZero;
  r.shift_ = abs_prec;
  return r;
}

bool FieldElem::is_zero() const {
  return state_ != State::Nonzero || shift_ >= field_->N();
}

std::optional<int> FieldElem::valuation() const {
  if (state_ == State::ExactZero) return std::nullopt;
  if (is_zero()) fail(ErrorKind::ZeroAtPrecision, "element is zero at working precision");
  return shift_;
}

int FieldElem::valuation_lower_bound() const {
  if (state_ == State::ExactZero) return INT_MAX / 4;
  return shift_;
}

int FieldElem::abs_prec() const {
  switch (state_) {
    case State::ExactZero: return INT_MAX / 4;
    case State::ApproxZero: return shift_;
    case State::Nonzero: return shift_ + rel_prec_;
  }
  return 0;
}

FieldElem FieldElem::lifted() const {
  FieldElem r = *this;
  if (state_ == State::ApproxZero) return zero(field_);
  if (state_ == State::Nonzero) r.rel_prec_ = field_->cap();
  return r;
}

FieldElem FieldElem::with_abs_prec(int k) const {
  if (state_ == State::ExactZero) return *this;
  if (state_ == State::ApproxZero) return approx_zero(field_, std::min(shift_, k));
  if (k <= shift_) return approx_zero(field_, k);
  if (k - shift_ >= rel_prec_) return *this;
  FieldElem r = *this;
  r.rel_prec_ = k - shift_;
  r.unit_ = field_->raw_truncate(unit_, r.rel_prec_);
  return r;
}

FieldElem FieldElem::operator-() const {
  if (state_ != State::Nonzero) return *this;
  FieldElem r = *this;
  r.unit_ = field_->raw_truncate(field_->raw_neg(unit_), rel_prec_);
  return r;
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same_field(a, b);
  using S = FieldElem::State;
  if (a.state_ == S::ExactZero) return b;
  if (b.state_ == S::ExactZero) return a;
  if (a.state_ == S::ApproxZero && b.state_ == S::ApproxZero)
    return FieldElem::approx_zero(a.field_, std::min(a.shift_, b.shift_));
  if (a.state_ == S::ApproxZero) return b.with_abs_prec(a.shift_);
  if (b.state_ == S::ApproxZero) return a.with_abs_prec(b.shift_);

  const FieldElem& lo = a.shift_ <= b.shift_ ? a : b;
  const FieldElem& hi = a.shift_ <= b.shift_ ? b : a;
  const int delta = hi.shift_ - lo.shift_;
  const int rel = std::min(lo.rel_prec_, hi.rel_prec_ + delta);
  if (delta >= rel) return lo.with_abs_prec(lo.shift_ + rel);
  const FieldModel& k = *a.field_;
  Coeffs w = k.raw_add(lo.unit_, delta == 0 ? hi.unit_ : k.raw_mul_pi_pow(hi.unit_, delta));
  if (delta == 0 && lo.rel_prec_ == hi.rel_prec_) {
    Coeffs t = k.raw_truncate(w, rel);
    if (std::all_of(t.begin(), t.end(), [](const Int& c) { return c == 0; })) return FieldElem::zero(a.field_);
  }
  return FieldElem::normalize(a.field_, lo.shift_, std::move(w), rel);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same_field(a, b);
  using S = FieldElem::State;
  if (a.state_ == S::ExactZero || b.state_ == S::ExactZero) return FieldElem::zero(a.field_);
  if (a.state_ == S::ApproxZero || b.state_ == S::ApproxZero)
    return FieldElem::approx_zero(a.field_, a.shift_ + b.shift_);
  FieldElem r;
  r.field_ = a.field_;
  r.state_ = S::Nonzero;
  r.shift_ = a.shift_ + b.shift_;
  r.rel_prec_ = std::min(a.rel_prec_, b.rel_prec_);
  r.unit_ = a.field_->raw_truncate(a.field_->raw_mul(a.unit_, b.unit_), r.rel_prec_);
  return r;
}

FieldElem FieldElem::inv() const {
  if (state_ == State::ExactZero) fail(ErrorKind::DivisionByZero, "inverse of exact zero");
  if (state_ == State::ApproxZero) fail(ErrorKind::PrecisionExhausted, "inverse of an element indistinguishable from 0");
  FieldElem r = *this;
  r.shift_ = -shift_;
  r.unit_ = field_->raw_truncate(field_->raw_unit_inverse(unit_), rel_prec_);
  return r;
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
  require_same_field(a, b);
  return a * b.inv();
}

FieldElem FieldElem::pow(long k) const {
  if (k < 0) return inv().pow(-k);
  FieldElem result = one(field_);
  FieldElem base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool operator==(const FieldElem& a, const FieldElem& b) { return (a - b).is_zero(); }

Coeffs FieldElem::residue() const {
  if (state_ == State::ExactZero) return field_->residue_field().zero();
  if (state_ == State::ApproxZero) {
    require(shift_ >= 1, ErrorKind::PrecisionExhausted, "residue of an element known only modulo m^0");
    return field_->residue_field().zero();
  }
  require(shift_ >= 0, ErrorKind::NegativeValuation, "residue of an element of negative valuation");
  if (shift_ > 0) return field_->residue_field().zero();
  return field_->raw_residue(unit_);
}

Coeffs FieldElem::reduce_mod(int k) const {
  const FieldModel& m = *field_;
  require(k >= 0 && k <= m.cap(), ErrorKind::InvalidInput, "reduce_mod level out of range");
  if (state_ == State::ExactZero) return m.raw_zero();
  if (state_ == State::Nonzero) require(shift_ >= 0, ErrorKind::NegativeValuation, "reduce_mod of a non-integral element");
  require(abs_prec() >= k, ErrorKind::PrecisionExhausted, "element not known modulo m^" + std::to_string(k));
  if (state_ == State::ApproxZero || shift_ >= k) return m.raw_zero();
  return m.raw_truncate(m.raw_mul_pi_pow(unit_, shift_), k);
}

std::string render_raw(const FieldModel& k, const Coeffs& raw) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < k.e(); ++i) {
    for (int j = 0; j < k.f(); ++j) {
      const Int& c = raw[i * k.f() + j];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      std::vector<std::string> factors;
      if (j == 1) factors.push_back("x");
      if (j > 1) factors.push_back("x^" + std::to_string(j));
      if (i == 1) factors.push_back("π");
      if (i > 1) factors.push_back("π^" + std::to_string(i));
      if (c != 1 || factors.empty()) factors.insert(factors.begin(), c.get_str());
      for (std::size_t t = 0; t < factors.size(); ++t) os << (t ? "·" : "") << factors[t];
    }
  }
  return first ? "0" : os.str();
}

std::string FieldElem::to_string() const {
  if (!field_) return "<unset>";
  const FieldModel& k = *field_;
  switch (state_) {
    case State::ExactZero: return "0";
    case State::ApproxZero: return "O(π^" + std::to_string(shift_) + ")";
    case State::Nonzero: break;
  }
  if (shift_ < 0) {
    const int rel = std::min(rel_prec_, k.N());
    return "π^" + std::to_string(shift_) + "·(" + render_raw(k, k.raw_truncate(unit_, rel)) + ")";
  }
  const int prec = std::min(abs_prec(), k.N());
  std::string body = render_raw(k, k.raw_truncate(k.raw_mul_pi_pow(unit_, shift_), prec));
  if (abs_prec() < k.N()) body += " + O(π^" + std::to_string(abs_prec()) + ")";
  return body;
}

// ---------------------------------------------------------------- polynomials

FieldElem poly_eval(const Poly& q, const FieldElem& x) {
  if (q.empty()) return FieldElem::zero(x.field());
  FieldElem acc = q.back();
  for (auto it = q.rbegin() + 1; it != q.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly poly_derivative(const Poly& q) {
  Poly d;
  for (std::size_t k = 1; k < q.size(); ++k)
    d.push_back(q[k] * FieldElem::from_int(q[k].field(), Int(static_cast<unsigned long>(k))));
  return d;
}

Poly poly_from_ints(const Field& k, const std::vector<Int>& coeffs) {
  Poly q;
  for (const auto& c : coeffs) q.push_back(FieldElem::from_int(k, c));
  return q;
}

HenselResult hensel_lift(const Poly& q, const FieldElem& x0, int max_steps) {
  require(!q.empty(), ErrorKind::InvalidInput, "empty polynomial");
  const Poly dq = poly_derivative(q);
  FieldElem fx = poly_eval(q, x0);
  if (fx.state() != FieldElem::State::Nonzero) return {x0, 0};
  const FieldElem dfx = poly_eval(dq, x0);
  if (dfx.state() != FieldElem::State::Nonzero)
    fail(ErrorKind::HenselPreconditionFailed, "Q'(x0) vanishes at working precision");
  const int vd = dfx.shift();
  if (!(fx.shift() > 2 * vd))
    fail(ErrorKind::HenselPreconditionFailed, "v(Q(x0)) = " + std::to_string(fx.shift()) +
                                                  " is not > 2 v(Q'(x0)) = " + std::to_string(2 * vd));
  FieldElem x = x0.lifted();
  int steps = 0;
  while (true) {
    fx = poly_eval(q, x);
    if (fx.state() != FieldElem::State::Nonzero) break;
    if (steps >= max_steps) fail(ErrorKind::PrecisionExhausted, "Newton iteration did not converge");
    const FieldElem delta = fx / poly_eval(dq, x);
    x = (x - delta).lifted();
    ++steps;
  }
  if (fx.is_exact_zero()) return {x, steps};
  const int vdc = poly_eval(dq, x).valuation_lower_bound();
  return {x.with_abs_prec(std::min(x.model().cap(), fx.abs_prec() - vdc)), steps};
}

// ---------------------------------------------------------------- units

Int unit_count(const FieldModel& k, int level) {
  require(level >= 1, ErrorKind::InvalidInput, "unit level must be positive");
  const Int q = k.q();
  Int c = q - 1;
  for (int i = 1; i < level; ++i) c *= q;
  return c;
}

std::vector<Coeffs> enumerate_unit_reps(const FieldModel& k, int level, std::size_t cap) {
  require(level <= k.cap(), ErrorKind::PrecisionExhausted, "unit level beyond tracked precision");
  const Int count = unit_count(k, level);
  require(count <= Int(static_cast<unsigned long>(cap)), ErrorKind::BudgetExceeded,
          "(O/m^" + std::to_string(level) + ")^x has " + count.get_str() + " elements");
  const int dim = k.dim();
  std::vector<Int> moduli(dim);
  for (int idx = 0; idx < dim; ++idx) {
    const int i = idx / k.f();
    const int t = level - i > 0 ? ceil_div(level - i, k.e()) : 0;
    moduli[idx] = k.p_power(t);
  }
  std::vector<Coeffs> out;
  out.reserve(count.get_ui());
  Coeffs cur(dim, 0);
  while (true) {
    bool unit = false;
    for (int j = 0; j < k.f(); ++j)
      if (mpz_divisible_p(cur[j].get_mpz_t(), k.p().get_mpz_t()) == 0) unit = true;
    if (unit) out.push_back(cur);
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

std::vector<FieldElem> enumerate_units(const Field& k, int level, std::size_t cap) {
  std::vector<FieldElem> out;
  for (const auto& raw : enumerate_unit_reps(*k, level, cap)) out.push_back(FieldElem::from_coeffs(k, raw));
  return out;
}

}  // namespace vhf
