#pragma once
// Representatives of p^l-th powers of residues, and digit expansions.
//
// For a perfect residue field k = F_q every element is a p^l-th power, so
// lambda_{l+1}(beta) is (any lift of Frob^-l(beta))^(p^l) modulo m^(l+1).

#include <string>
#include <vector>

#include "vhf/hyperfield.hpp"
#include "vhf/padic.hpp"

namespace vhf {

/// lambda_{l+1}(alpha) as a canonical element of O/m^(l+1).
Coeffs lambda_rep(const Field& k, const Coeffs& alpha, int l);
/// (lift)^(p^l) modulo m^(l+1) for an explicit lift; equals
/// lambda_rep(res(lift)^(p^l)) for every lift.
Coeffs lambda_from_lift(const FieldElem& lift, int l);

struct CongruenceReport {
  int imax = 0;
  std::vector<int> valuations;  // v(a^(p^i) - b^(p^i)), capped at the field cap
};

/// Checks a^(p^i) = b^(p^i) mod m^(i+1) for 0 <= i <= imax; requires
/// a = b mod m. Throws CongruenceFailed naming the first failing i.
CongruenceReport p_power_congruence_check(const FieldElem& a, const FieldElem& b, int imax);

/// eta_{l+1}(alpha) = [lambda_{l+1}(alpha)]_{l+1}; h must have level l+1.
HfClass eta_rep(const Hyperfield& h, const Coeffs& alpha, int l);

struct DigitExpansion {
  enum class Radix { Pi, P };
  int level = 0;                // l: the expansion holds modulo m^(l+1)
  Radix radix = Radix::Pi;
  std::vector<Coeffs> digits;   // residue digits alpha_i
  std::vector<Coeffs> values;   // lambda_{l+1}(alpha_i) in O/m^(l+1)
  std::vector<Coeffs> basis;    // p-basis representatives; empty for F_q
};

/// a = sum_{i<=l} lambda_{l+1}(alpha_i) pi^i mod m^(l+1), lowest digit first.
DigitExpansion digit_expand(const FieldElem& a, int l);
/// a = sum_{i<=s} lambda_{l+1}(alpha_i) p^i mod m^(l+1) for a in W, where
/// e s < l+1 <= e (s+1); each step subtracts the digit and divides by p.
DigitExpansion cohen_expand(const FieldElem& a, int l);
/// The canonical element of O/m^(l+1) described by an expansion.
Coeffs digit_assemble(const FieldModel& k, const DigitExpansion& d);

}  // namespace vhf
