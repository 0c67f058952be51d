#include "vhf/representatives.hpp"

namespace vhf {

namespace {

// lift^(p^l) computed exactly (to the field cap).
FieldElem power_p_l(const FieldElem& lift, int l) {
  FieldElem r = lift;
  for (int i = 0; i < l; ++i) r = r.pow(lift.model().p().get_si());
  return r;
}

FieldElem teichmuller_like(const FieldModel& k, const Field& field, const Coeffs& alpha, int l) {
  const Coeffs beta = k.residue_field().frobenius_root(alpha, l);
  return power_p_l(FieldElem::from_coeffs(field, k.raw_lift_residue(beta)), l);
}

void check_level(const FieldModel& k, int l) {
  require(l >= 0, ErrorKind::InvalidInput, "level must be non-negative");
  require(l + 1 <= k.N(), ErrorKind::PrecisionExhausted, "level l+1 exceeds working precision");
}

}  // namespace

Coeffs lambda_from_lift(const FieldElem& lift, int l) {
  check_level(lift.model(), l);
  require(*lift.valuation() == 0, ErrorKind::InvalidInput, "lift must be a unit");
  return power_p_l(lift, l).reduce_mod(l + 1);
}

Coeffs lambda_rep(const Field& field, const Coeffs& alpha, int l) {
  const FieldModel& k = *field;
  check_level(k, l);
  if (k.residue_field().is_zero(alpha)) return k.raw_zero();
  return teichmuller_like(k, field, alpha, l).reduce_mod(l + 1);
}

CongruenceReport p_power_congruence_check(const FieldElem& a, const FieldElem& b, int imax) {
  require_same_field(a, b);
  const FieldModel& k = a.model();
  require((a - b).valuation_lower_bound() >= 1, ErrorKind::InvalidInput, "a and b must agree modulo m");
  CongruenceReport rep;
  rep.imax = imax;
  FieldElem x = a, y = b;
  const long p = k.p().get_si();
  for (int i = 0; i <= imax; ++i) {
    if (i > 0) {
      x = x.pow(p);
      y = y.pow(p);
    }
    const FieldElem d = x - y;
    const int v = std::min(d.valuation_lower_bound(), k.cap());
    rep.valuations.push_back(v);
    if (v < i + 1)
      fail(ErrorKind::CongruenceFailed, "i = " + std::to_string(i) + ": v(a^(p^i) - b^(p^i)) = " + std::to_string(v) +
                                            " < " + std::to_string(i + 1) + " for a = " + a.to_string() +
                                            ", b = " + b.to_string());
  }
  return rep;
}

HfClass eta_rep(const Hyperfield& h, const Coeffs& alpha, int l) {
  require(h.n() == l + 1, ErrorKind::InvalidInput, "eta_{l+1} lives in the hyperfield of level l+1");
  const FieldModel& k = h.model();
  if (k.residue_field().is_zero(alpha)) return h.zero();
  return h.make(0, lambda_rep(h.field(), alpha, l));
}

DigitExpansion digit_expand(const FieldElem& a, int l) {
  const FieldModel& k = a.model();
  check_level(k, l);
  require(a.is_exact_zero() || a.valuation_lower_bound() >= 0, ErrorKind::NegativeValuation,
          "digit_expand needs an integral element");
  require(a.abs_prec() >= l + 1, ErrorKind::PrecisionExhausted, "element not known modulo m^(l+1)");
  DigitExpansion d;
  d.level = l;
  d.radix = DigitExpansion::Radix::Pi;
  FieldElem rest = a;
  for (int i = 0; i <= l; ++i) {
    // rest = a - sum_{j<i} lambda(alpha_j) pi^j lies in m^i.
    const FieldElem shifted = rest * FieldElem::uniformizer_power(a.field(), -i);
    const Coeffs alpha = shifted.residue();
    const FieldElem value = k.residue_field().is_zero(alpha) ? FieldElem::zero(a.field())
                                                            : teichmuller_like(k, a.field(), alpha, l);
    d.digits.push_back(alpha);
    d.values.push_back(value.is_exact_zero() ? k.raw_zero() : value.reduce_mod(l + 1));
    rest = rest - value * FieldElem::uniformizer_power(a.field(), i);
  }
  return d;
}

DigitExpansion cohen_expand(const FieldElem& a, int l) {
  const FieldModel& k = a.model();
  check_level(k, l);
  const Coeffs raw = a.reduce_mod(std::min(k.cap(), a.abs_prec()));
  for (int idx = k.f(); idx < k.dim(); ++idx)
    require(raw[idx] == 0, ErrorKind::InvalidInput, "cohen_expand needs an element of the unramified subring W");
  const int s = (l + 1 + k.e() - 1) / k.e() - 1;
  DigitExpansion d;
  d.level = l;
  d.radix = DigitExpansion::Radix::P;
  const FieldElem p = FieldElem::from_int(a.field(), k.p());
  FieldElem rest = a;
  for (int i = 0; i <= s; ++i) {
    const Coeffs alpha = rest.residue();
    const FieldElem value = k.residue_field().is_zero(alpha) ? FieldElem::zero(a.field())
                                                            : teichmuller_like(k, a.field(), alpha, l);
    d.digits.push_back(alpha);
    d.values.push_back(value.is_exact_zero() ? k.raw_zero() : value.reduce_mod(l + 1));
    rest = (rest - value) / p;
  }
  return d;
}

Coeffs digit_assemble(const FieldModel& k, const DigitExpansion& d) {
  Coeffs acc = k.raw_zero();
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    const int ii = static_cast<int>(i);
    Coeffs term = d.values[i];
    if (d.radix == DigitExpansion::Radix::Pi) {
      term = k.raw_mul_pi_pow(term, ii);
    } else {
      for (auto& c : term) c *= k.p_power(ii);
    }
    acc = k.raw_add(acc, term);
  }
  return k.raw_truncate(acc, d.level + 1);
}

}  // namespace vhf
