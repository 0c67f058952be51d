#include "vhf/ramification.hpp"

#include <algorithm>

namespace vhf {

namespace {

FieldElem w_elem(const Field& k, const Coeffs& w) {
  Coeffs raw = k->raw_zero();
  for (std::size_t j = 0; j < w.size() && j < static_cast<std::size_t>(k->f()); ++j) raw[j] = w[j];
  return FieldElem::from_coeffs(k, raw);
}

// W-coordinates of an integral element in the basis 1, pi, ..., pi^(e-1).
std::vector<FieldElem> w_coords(const FieldElem& a) {
  const Field& k = a.field();
  const Coeffs raw = a.reduce_mod(k->cap());
  std::vector<FieldElem> out;
  for (int i = 0; i < k->e(); ++i)
    out.push_back(w_elem(k, Coeffs(raw.begin() + i * k->f(), raw.begin() + (i + 1) * k->f())));
  return out;
}

Int binom(int n, int r) {
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

long d_of(long e, const Int& p) {
  require(e >= 1, ErrorKind::InvalidInput, "e must be positive");
  return e * (1 + vp(Int(e), p));
}

Poly eisenstein_poly(const Field& k) {
  Poly P;
  for (const auto& c : k->spec().eis) P.push_back(w_elem(k, c));
  return P;
}

MnuResult m_nu(const FieldModel& km) {
  MnuResult r;
  const int e = km.e();
  if (e == 1) return r;
  // Rebuild a shared handle; FieldElem needs one.
  const Field k = FieldModel::make(km.spec());
  const Poly P = eisenstein_poly(k);
  const FieldElem pi = FieldElem::uniformizer_power(k, 1);
  // b_j = sum_{i >= j} a_i C(i, j) pi^(i - j); Q = sum_{j >= 1} b_j X^(j - 1)
  std::vector<std::pair<int, int>> pts;  // (x, v)
  for (int j = 1; j <= e; ++j) {
    FieldElem b = FieldElem::zero(k);
    for (int i = j; i <= e; ++i) b += P[i] * FieldElem::from_int(k, binom(i, j)) * pi.pow(i - j);
    if (b.is_exact_zero()) {
      r.q_valuations.push_back(std::nullopt);
      continue;
    }
    if (b.is_zero())
      fail(ErrorKind::PrecisionExhausted, "coefficient of P(X+pi)/X is zero at working precision");
    const int v = *b.valuation();
    r.q_valuations.push_back(v);
    pts.emplace_back(j - 1, v);
  }
  // Lower convex hull from left to right.
  std::vector<std::pair<int, int>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // drop b if it lies on or above segment a-pt
      const long cross = static_cast<long>(b.first - a.first) * (pt.second - a.second) -
                         static_cast<long>(b.second - a.second) * (pt.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    NewtonSegment seg;
    seg.length = hull[s + 1].first - hull[s].first;
    seg.slope = Rational(hull[s].second - hull[s + 1].second, seg.length);
    seg.slope.canonicalize();
    r.segments.push_back(seg);
    if (s == 0 || seg.slope > r.M_int) r.M_int = seg.slope;
  }
  r.M_p1 = r.M_int / e;
  r.M_p1.canonicalize();
  return r;
}

std::optional<Rational> m_direct(const FieldModel& km) {
  const int e = km.e();
  if (e == 1) return Rational(0);
  const Field k = FieldModel::make(km.spec());
  const Poly P = eisenstein_poly(k);
  const FieldElem pi = FieldElem::uniformizer_power(k, 1);
  if (e == 2) {
    const FieldElem other = -P[1] - pi;
    return Rational(*(pi - other).valuation());
  }
  for (int i = 1; i < e; ++i)
    if (!P[i].is_zero()) return std::nullopt;
  // conjugates pi * zeta; v(1 - zeta) is largest for zeta of order p, where
  // it is e/(p-1) in the pi-normalization
  Rational m(1);
  if (vp(Int(e), km.p()) > 0) {
    Rational extra(Int(e), km.p() - 1);
    extra.canonicalize();
    m += extra;
  }
  return m;
}

Field with_uniformizer(const Field& k, const FieldElem& pi0) {
  require(pi0.valuation() == 1, ErrorKind::InvalidInput, "new uniformizer must have valuation 1");
  const int e = k->e();
  // Columns: coordinates of pi0^i, i < e; solve A c = coords(pi0^e) over W.
  std::vector<std::vector<FieldElem>> A(e, std::vector<FieldElem>(e + 1));
  for (int i = 0; i <= e; ++i) {
    const auto c = w_coords(pi0.pow(i));
    for (int r = 0; r < e; ++r) A[r][i] = c[r];
  }
  for (int col = 0; col < e; ++col) {
    int piv = -1;
    for (int r = col; r < e; ++r)
      if (!A[r][col].is_zero() && A[r][col].valuation() == 0) {
        piv = r;
        break;
      }
    require(piv >= 0, ErrorKind::InvalidInput, "powers of the new uniformizer do not form a W-basis");
    std::swap(A[col], A[piv]);
    const FieldElem inv = A[col][col].inv();
    for (int c = col; c <= e; ++c) A[col][c] *= inv;
    for (int r = 0; r < e; ++r) {
      if (r == col || A[r][col].is_exact_zero()) continue;
      const FieldElem f = A[r][col];
      for (int c = col; c <= e; ++c) A[r][c] -= f * A[col][c];
    }
  }
  // pi0^e = sum c_i pi0^i, so P0 = X^e - sum c_i X^i.
  FieldSpec spec = k->spec();
  spec.eis.assign(e + 1, Coeffs{});
  for (int i = 0; i < e; ++i) {
    const Coeffs raw = (-A[i][e]).reduce_mod(k->cap());
    spec.eis[i] = Coeffs(raw.begin(), raw.begin() + k->f());
  }
  spec.eis[e] = Coeffs{1};
  return FieldModel::make(spec);
}

RamificationReport n_threshold(const Field& k) {
  RamificationReport r;
  r.p = k->p();
  r.e = k->e();
  r.d_e = d_of(r.e, r.p);
  r.tame = vp(Int(r.e), r.p) == 0;
  const MnuResult m = m_nu(k);
  r.M_int = m.M_int;
  r.M_p1 = m.M_p1;
  r.M_direct = m_direct(*k);
  const Rational e2(r.e * r.e);
  if (r.tame) {
    r.n_min_stated = r.n_min_conservative = 1;
  } else {
    const Rational a = e2 * r.M_p1, b = e2 * r.M_int;
    r.n_min_stated = static_cast<int>(mpz_class(a.get_num() / a.get_den()).get_si()) + 1;
    r.n_min_conservative = static_cast<int>(mpz_class(b.get_num() / b.get_den()).get_si()) + 1;
  }
  Rational strong_bound(r.d_e, r.e * r.e), weak_bound(r.d_e, r.e);
  strong_bound.canonicalize();
  weak_bound.canonicalize();
  r.exceeds_strong_bound = r.M_p1 > strong_bound;
  r.within_weak_bound = r.M_p1 <= weak_bound;
  return r;
}

KrasnerResult krasner_refine(const Poly& P, const FieldElem& b, int max_steps) {
  require(P.size() >= 2, ErrorKind::InvalidInput, "polynomial of degree >= 1 expected");
  const Field& k = b.field();
  const int deg = static_cast<int>(P.size()) - 1;
  KrasnerResult res{b, 0, 0};
  FieldElem val = poly_eval(P, b);
  if (val.is_zero()) return res;
  // v_{p=1}(P(b)) > d(deg)/deg  <=>  v(P(b)) * deg > d(deg) * e'
  if (static_cast<long>(*val.valuation()) * deg <= d_of(deg, k->p()) * k->e())
    fail(ErrorKind::NoRootFound, "P(b) is not small enough for Krasner refinement");
  const Poly dP = poly_derivative(P);
  const auto residues = k->residue_field().elements();
  FieldElem c = b;
  for (int step = 0; step < max_steps; ++step) {
    val = poly_eval(P, c);
    const FieldElem d = poly_eval(dP, c);
    if (val.is_zero()) {
      // P(c) = 0 mod m^N; keep going until c itself is fixed mod m^N
      if (val.is_exact_zero() || d.is_zero() || (val / d).is_zero()) {
        res.root = c;
        return res;
      }
      c = c - val / d;
      ++res.newton_steps;
      continue;
    }
    const int v = *val.valuation();
    if (!d.is_zero() && v > 2 * *d.valuation()) {
      c = c - val / d;
      ++res.newton_steps;
      continue;
    }
    // Digit search: the smallest j and residue r with v(P(c + pi^j r)) > v.
    bool moved = false;
    for (int j = 1; j < k->N() && !moved; ++j) {
      const FieldElem pj = FieldElem::uniformizer_power(k, j);
      for (const auto& r : residues) {
        if (k->residue_field().is_zero(r)) continue;
        const FieldElem cand = c + pj * FieldElem::from_coeffs(k, k->raw_lift_residue(r));
        const FieldElem pv = poly_eval(P, cand);
        if (pv.is_zero() || *pv.valuation() > v) {
          c = cand;
          moved = true;
          break;
        }
      }
    }
    if (!moved) fail(ErrorKind::NoRootFound, "no refinement improves P(c)");
    ++res.search_steps;
  }
  fail(ErrorKind::NoRootFound, "refinement did not converge within the step budget");
}

}  // namespace vhf
