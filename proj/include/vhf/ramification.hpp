#pragma once
// Ramification invariants of K = W[pi]/(P): d(e), the maximal distance
// M between pi and its conjugates, the derived hyperfield level thresholds,
// and root refinement in the Krasner regime.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "vhf/padic.hpp"

namespace vhf {

using Rational = mpq_class;

/// e * (1 + v_p(e)).
long d_of(long e, const Int& p);

struct NewtonSegment {
  Rational slope;  // root valuation (pi-normalized) of the segment
  int length = 0;  // number of roots
};

struct MnuResult {
  Rational M_int;  // max v(pi - pi'), v(pi) = 1
  Rational M_p1;   // the same with v(p) = 1
  std::vector<NewtonSegment> segments;
  /// Coefficient valuations of P(X + pi)/X, index j for X^j; nullopt for 0.
  std::vector<std::optional<int>> q_valuations;
};

/// Newton polygon of P(X + pi)/X. For e = 1 returns zeros.
MnuResult m_nu(const FieldModel& k);
inline MnuResult m_nu(const Field& k) { return m_nu(*k); }

/// max v(pi - pi') computed from explicit conjugates: the second root
/// -a1 - pi when e = 2, and pi * zeta for binomial X^e - c. nullopt when
/// neither shape applies.
std::optional<Rational> m_direct(const FieldModel& k);

/// The same field presented through the uniformizer pi0 (an element of
/// valuation 1): its minimal polynomial over W becomes the Eisenstein
/// polynomial of the new field.
Field with_uniformizer(const Field& k, const FieldElem& pi0);

struct RamificationReport {
  Int p;
  int e = 1;
  long d_e = 1;
  Rational M_p1;
  Rational M_int;
  int n_min_conservative = 1;
  /// floor(e^2 M_p1) + 1, from the p-normalized distance alone.
  int n_min_stated = 1;
  bool tame = true;
  /// M_p1 > d(e)/e^2.
  bool exceeds_strong_bound = false;
  /// M_p1 <= d(e)/e.
  bool within_weak_bound = true;
  std::optional<Rational> M_direct;
};

RamificationReport n_threshold(const Field& k);

struct KrasnerResult {
  FieldElem root;
  int newton_steps = 0;
  int search_steps = 0;
};

/// From b with v_{p=1}(P(b)) > d(e)/e (e = deg P), the root of P closest to
/// b, by Newton iteration with a digit-search fallback when the Newton
/// condition v(P) > 2 v(P') fails. P(root) vanishes modulo m^N and the
/// root is determined modulo m^N.
KrasnerResult krasner_refine(const Poly& P, const FieldElem& b, int max_steps = 256);

/// The defining Eisenstein polynomial as a polynomial over K.
Poly eisenstein_poly(const Field& k);

std::string to_string(const Rational& q);

}  // namespace vhf
