#pragma once
// Q_p(t) with the Gauss valuation: v(sum c_i t^i) = min v_p(c_i). The
// residue field is F_p(t), which is imperfect with p-basis {t}.
//
// An element is p^shift * num/den with num, den in (Z/p^N)[t], both of unit
// content, known modulo p^rel. There is no canonical form for fractions
// modulo p^N; equality is cross-multiplication.

#include <string>
#include <vector>

#include "vhf/padic.hpp"

namespace vhf {

using IntPoly = std::vector<Int>;  // little-endian

/// A reduced fraction over F_p with monic denominator.
struct FpFrac {
  std::vector<long> num{0};
  std::vector<long> den{1};
  bool operator==(const FpFrac&) const = default;
};

std::string to_string(const FpFrac& f);

class GaussElem {
 public:
  GaussElem() = default;
  static GaussElem zero(long p, int N);
  static GaussElem from_int(long p, int N, const Int& z);
  static GaussElem t(long p, int N);
  /// num/den with integer coefficients; den must have unit content.
  static GaussElem from_polys(long p, int N, IntPoly num, IntPoly den);

  long p() const { return p_; }
  int N() const { return N_; }
  bool is_exact_zero() const { return exact_zero_; }
  /// Zero at the known precision (including exact zero).
  bool is_zero() const;
  /// v(a); throws ZeroAtPrecision for a nonexact zero, nullopt for exact zero.
  std::optional<int> valuation() const;
  int shift() const { return shift_; }
  int rel() const { return rel_; }
  int abs_prec() const;
  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }

  GaussElem operator-() const;
  GaussElem inv() const;
  friend GaussElem operator+(const GaussElem& a, const GaussElem& b);
  friend GaussElem operator-(const GaussElem& a, const GaussElem& b);
  friend GaussElem operator*(const GaussElem& a, const GaussElem& b);
  friend GaussElem operator/(const GaussElem& a, const GaussElem& b);
  friend bool operator==(const GaussElem& a, const GaussElem& b);
  GaussElem pow(long k) const;
  GaussElem times_p_pow(int k) const;

  /// Image in F_p(t); requires v >= 0.
  FpFrac residue() const;
  std::string to_string() const;

 private:
  static GaussElem normalize(long p, int N, int shift, IntPoly num, IntPoly den, int rel);

  long p_ = 2;
  int N_ = 0;
  bool exact_zero_ = true;
  int shift_ = 0;
  int rel_ = 0;
  IntPoly num_, den_;
};

/// a == b modulo p^k.
bool congruent_mod(const GaussElem& a, const GaussElem& b, int k);

/// {b} is p-independent over F_p iff res(b) is not in F_p(t^p). Any set of
/// two or more elements is p-dependent (F_p(t) has p-degree 1); the empty
/// set is independent.
bool p_independent_check(const GaussElem& b);
bool p_independent_set(const std::vector<GaussElem>& bs);

struct PBasisExpansion {
  long p = 2;
  int level = 0;
  /// digits[i][j] = a_{i,j}; a = sum_i (sum_j lift(a_{i,j})^(p^l) t^j) p^i mod p^(l+1)
  std::vector<std::vector<FpFrac>> digits;
};

/// Requires v(a) >= 0, p^l <= 9 and numerator/denominator degree <= 8.
PBasisExpansion pbasis_expand_t(const GaussElem& a, int l);
/// The element described by an expansion, at the precision of `like`.
GaussElem pbasis_assemble(const PBasisExpansion& d, int N);

/// Lift of a reduced F_p(t) fraction with coefficients in [0, p).
GaussElem lift_fraction(long p, int N, const FpFrac& f);

// F_p[t] helpers.
std::vector<long> fp_mul(const std::vector<long>& a, const std::vector<long>& b, long p);
FpFrac fp_reduce(std::vector<long> num, std::vector<long> den, long p);

}  // namespace vhf
