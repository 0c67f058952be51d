#pragma once
// Exact truncated arithmetic in finitely ramified extensions of Q_p.
//
// A field is presented as O = W[pi]/(P) with W = Z_p[x]/(h), h monic of
// degree f and irreducible mod p, and P an Eisenstein polynomial of degree e
// over W. Valuations are normalized by v(pi) = 1, so v(p) = e.
//
// Raw integral elements are coefficient vectors indexed by i*f + j for the
// monomial x^j pi^i. Every raw value is an exact representative modulo
// p^M, where M is the storage exponent of the field.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vhf/error.hpp"

namespace vhf {

using Int = mpz_class;
using Coeffs = std::vector<Int>;

/// v_p(z) for z != 0.
int vp(const Int& z, const Int& p);

/// The finite residue field F_p[x]/(h mod p). Elements are coefficient
/// vectors of length f with entries in [0, p).
class ResidueField {
 public:
  ResidueField() = default;
  ResidueField(Int p, Coeffs h_monic);

  const Int& p() const { return p_; }
  int degree() const { return f_; }
  Int order() const;

  Coeffs zero() const { return Coeffs(f_, 0); }
  Coeffs one() const;
  Coeffs from_int(const Int& z) const;
  bool is_zero(const Coeffs& a) const;

  Coeffs add(const Coeffs& a, const Coeffs& b) const;
  Coeffs sub(const Coeffs& a, const Coeffs& b) const;
  Coeffs neg(const Coeffs& a) const;
  Coeffs mul(const Coeffs& a, const Coeffs& b) const;
  Coeffs pow(const Coeffs& a, const Int& k) const;
  Coeffs inv(const Coeffs& a) const;
  Coeffs frobenius(const Coeffs& a) const { return pow(a, p_); }
  /// The unique b with b^(p^l) = a.
  Coeffs frobenius_root(const Coeffs& a, int l) const;

  /// All q elements in lexicographic order (constant term most significant).
  std::vector<Coeffs> elements(std::size_t cap = 1u << 20) const;

  std::string to_string(const Coeffs& a) const;

 private:
  Int p_ = 2;
  int f_ = 1;
  Coeffs h_;  // monic, reduced mod p, length f+1
};

/// Field definition as read from the JSON field file.
struct FieldSpec {
  Int p;
  int f = 1;
  int e = 1;
  std::vector<Coeffs> eis;  // e+1 coefficients, each a W element (length <= f)
  Coeffs h;                 // f+1 integer coefficients, little-endian, monic
  int N = 12;
  int n = 1;                // default hyperfield level carried by the file
  int guard = -1;           // internal guard digits; -1 selects 4e+4
};

class FieldModel;
using Field = std::shared_ptr<const FieldModel>;

/// An immutable finitely ramified p-adic field at working precision N.
/// Internally elements are tracked to cap() = N + guard digits so that
/// Newton-type constructions can certify results modulo m^N.
class FieldModel {
 public:
  static Field make(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  const Int& p() const { return spec_.p; }
  int f() const { return spec_.f; }
  int e() const { return spec_.e; }
  int N() const { return spec_.N; }
  int cap() const { return cap_; }
  int dim() const { return spec_.e * spec_.f; }
  int storage_exponent() const { return M_; }
  const ResidueField& residue_field() const { return kf_; }
  /// Cardinality of the residue field.
  Int q() const { return kf_.order(); }

  // Raw ring operations on integral representatives modulo p^M.
  Coeffs raw_zero() const { return Coeffs(dim(), 0); }
  Coeffs raw_from_int(const Int& z) const;
  Coeffs raw_basis(int i, int j = 0) const;  // x^j pi^i, i < e, j < f
  Coeffs raw_add(const Coeffs& a, const Coeffs& b) const;
  Coeffs raw_sub(const Coeffs& a, const Coeffs& b) const;
  Coeffs raw_neg(const Coeffs& a) const;
  Coeffs raw_mul(const Coeffs& a, const Coeffs& b) const;
  Coeffs raw_mul_pi(const Coeffs& a) const;
  Coeffs raw_mul_pi_pow(const Coeffs& a, int k) const;
  /// Exact division by pi^k; requires raw_valuation(a) >= k.
  Coeffs raw_div_pi_pow(const Coeffs& a, int k) const;
  /// Canonical representative modulo m^k: coefficient i reduced modulo
  /// p^ceil((k-i)/e), entries non-negative.
  Coeffs raw_truncate(const Coeffs& a, int k) const;
  /// min over nonzero coefficients of e*v_p(c) + i, or `bound` if a is zero.
  int raw_valuation(const Coeffs& a, int bound) const;
  /// Inverse of a unit modulo p^M by Newton iteration.
  Coeffs raw_unit_inverse(const Coeffs& u) const;
  /// Residue image of a raw element (the i = 0 block reduced mod p).
  Coeffs raw_residue(const Coeffs& a) const;
  /// Canonical integral lift of a residue element.
  Coeffs raw_lift_residue(const Coeffs& r) const;
  /// p = pi^e * unit; this is that unit.
  const Coeffs& p_unit_part() const { return p_unit_; }

  const Int& p_power(int k) const;

 private:
  FieldModel() = default;
  Coeffs w_mul(std::span<const Int> a, std::span<const Int> b) const;
  void reduce_storage(Coeffs& a) const;

  FieldSpec spec_;
  ResidueField kf_;
  int cap_ = 0;
  int M_ = 0;
  std::vector<Int> ppow_;             // p^0 .. p^M
  std::vector<Coeffs> eis_;           // normalized W coefficients, each length f
  std::vector<Coeffs> eps_pow_;       // eps^k, pi^e = p * eps
  std::vector<Coeffs> eps_inv_pow_;   // eps^-k
  Coeffs p_unit_;
};

/// An element of K known to finite precision, stored as pi^shift * unit
/// with the unit known modulo m^rel_prec (capped relative precision).
class FieldElem {
 public:
  enum class State : std::uint8_t { Nonzero, ApproxZero, ExactZero };

  FieldElem() = default;

  static FieldElem zero(const Field& k);
  static FieldElem one(const Field& k);
  static FieldElem from_int(const Field& k, const Int& z);
  static FieldElem from_rational(const Field& k, const Int& num, const Int& den);
  /// Integral element from raw coefficients, known modulo m^abs_prec
  /// (defaults to the full tracked precision). All-zero input is exact zero.
  static FieldElem from_coeffs(const Field& k, const Coeffs& raw, int abs_prec = -1);
  static FieldElem from_unit(const Field& k, int shift, const Coeffs& unit, int rel_prec);
  /// pi^k exactly.
  static FieldElem uniformizer_power(const Field& k, int exponent);
  static FieldElem approx_zero(const Field& k, int abs_prec);

  const Field& field() const { return field_; }
  const FieldModel& model() const { return *field_; }
  State state() const { return state_; }
  bool is_exact_zero() const { return state_ == State::ExactZero; }
  /// Zero at working precision: exact zero, indistinguishable from zero,
  /// or of valuation >= N.
  bool is_zero() const;

  /// v(a); nullopt for exact zero. Throws ZeroAtPrecision if a is zero at
  /// working precision without being exact zero.
  std::optional<int> valuation() const;
  /// The exact valuation if nonzero, the known absolute precision if
  /// indistinguishable from zero, and a huge value for exact zero.
  int valuation_lower_bound() const;

  int shift() const { return shift_; }
  const Coeffs& unit() const { return unit_; }
  int rel_prec() const { return rel_prec_; }
  /// Absolute precision: the element is known modulo m^abs_prec().
  int abs_prec() const;

  /// Same value with the stored representative taken as exact
  /// (relative precision raised to the field cap).
  FieldElem lifted() const;
  /// Value truncated to absolute precision k.
  FieldElem with_abs_prec(int k) const;

  FieldElem operator-() const;
  FieldElem inv() const;
  FieldElem pow(long k) const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  /// Equal at the precision of the difference.
  friend bool operator==(const FieldElem& a, const FieldElem& b);

  FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
  FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
  FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }

  /// Residue in F_{p^f}; requires v(a) >= 0.
  Coeffs residue() const;
  /// Canonical raw representative of the class in O/m^k; requires v(a) >= 0.
  Coeffs reduce_mod(int k) const;

  /// "c00 + c01·x + c10·π + ..." at working precision.
  std::string to_string() const;

 private:
  static FieldElem normalize(const Field& k, int shift0, Coeffs w, int rel_bound);

  Field field_;
  State state_ = State::ExactZero;
  int shift_ = 0;
  int rel_prec_ = 0;
  Coeffs unit_;
};

/// "c00 + c01·x + c10·π + ..." for a raw coefficient vector.
std::string render_raw(const FieldModel& k, const Coeffs& raw);

void require_same_field(const FieldElem& a, const FieldElem& b);

/// Polynomials over K, little-endian.
using Poly = std::vector<FieldElem>;

FieldElem poly_eval(const Poly& q, const FieldElem& x);
Poly poly_derivative(const Poly& q);
Poly poly_from_ints(const Field& k, const std::vector<Int>& coeffs);

struct HenselResult {
  FieldElem root;
  int steps = 0;
};

/// Newton iteration x <- x - Q(x)/Q'(x) from x0, which must satisfy
/// v(Q(x0)) > 2 v(Q'(x0)). The returned root c is the unique one with
/// v(c - x0) > v(Q'(x0)); Q(c) vanishes modulo m^N.
HenselResult hensel_lift(const Poly& q, const FieldElem& x0, int max_steps = 64);
inline FieldElem hensel_root(const Poly& q, const FieldElem& x0) { return hensel_lift(q, x0).root; }

/// Canonical representatives of (O/m^k)^x in lexicographic order.
std::vector<Coeffs> enumerate_unit_reps(const FieldModel& k, int level, std::size_t cap = 1u << 16);
std::vector<FieldElem> enumerate_units(const Field& k, int level, std::size_t cap = 1u << 16);
/// (q - 1) q^(level - 1).
Int unit_count(const FieldModel& k, int level);

}  // namespace vhf
