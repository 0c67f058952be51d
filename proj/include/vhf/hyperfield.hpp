#pragma once
// The n-th valued hyperfield H_{v,n} = K^x/(1+m^n) u {0}.
//
// A nonzero class is pi^gamma * u (1+m^n) with u a canonical unit modulo
// m^n. Sums are never materialized: a hyperfield sum is a ball
// {x : v(x - c) >= r} of K, described by its radius and a canonical center.

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vhf/padic.hpp"

namespace vhf {

struct HfClass {
  bool zero = true;
  int gamma = 0;
  Coeffs unit;  // canonical mod m^n; empty for zero

  static HfClass make_zero() { return {}; }
  bool is_zero() const { return zero; }
  auto operator<=>(const HfClass&) const = default;
  bool operator==(const HfClass&) const = default;
};

/// The set {x in K : v(x - c) >= radius}, taken as a set of classes. The
/// center is pi^center_val * center_unit with center_unit canonical modulo
/// m^(radius - center_val); when the ball contains 0 the center is 0.
struct HfSumBall {
  int radius = 0;
  bool contains_zero = false;
  int center_val = 0;
  Coeffs center_unit;
  // A sum with only the zero class (0 + 0).
  bool only_zero = false;

  auto operator<=>(const HfSumBall&) const = default;
  bool operator==(const HfSumBall&) const = default;
};

class Hyperfield {
 public:
  Hyperfield(Field k, int n);

  const Field& field() const { return k_; }
  const FieldModel& model() const { return *k_; }
  int n() const { return n_; }

  HfClass zero() const { return HfClass::make_zero(); }
  HfClass one() const;
  /// pi^gamma * u with u a unit given by raw coefficients (any representative).
  HfClass make(int gamma, const Coeffs& unit) const;
  HfClass class_of(const FieldElem& a) const;
  HfClass class_of_int(const Int& z) const;
  /// An exact field element of the class.
  FieldElem representative(const HfClass& a) const;

  HfClass mul(const HfClass& a, const HfClass& b) const;
  HfClass inv(const HfClass& a) const;
  HfClass neg(const HfClass& a) const;
  HfClass pow(const HfClass& a, long k) const;
  std::optional<int> valuation(const HfClass& a) const;

  HfSumBall multiadd(const HfClass& a, const HfClass& b) const;
  HfSumBall multi_sum(const std::vector<HfClass>& xs) const;
  /// Union of S + b over the members of S (associativity in the set sense).
  HfSumBall add_to(const HfSumBall& s, const HfClass& b) const;
  HfSumBall singleton(const HfClass& a) const;
  /// The ball scaled by a nonzero class (or {0} for zero).
  HfSumBall scale(const HfSumBall& s, const HfClass& c) const;

  bool is_single(const HfSumBall& s) const;
  std::optional<HfClass> single_member(const HfSumBall& s) const;
  FieldElem center(const HfSumBall& s) const;
  bool sum_contains(const HfSumBall& s, const HfClass& x) const;
  bool subset(const HfSumBall& a, const HfSumBall& b) const;
  /// Members of valuation <= val_cutoff, plus Zero when the ball contains 0.
  std::vector<HfClass> sum_members(const HfSumBall& s, int val_cutoff, std::size_t cap = 1u << 20) const;
  /// The single valuation of all nonzero members, unless the ball contains 0.
  std::optional<int> sum_valuation(const HfSumBall& s) const;

  /// All classes with valuation in [-window, window], plus Zero first.
  std::vector<HfClass> grid(int window, std::size_t cap = 1u << 20) const;
  /// The canonical units of (O/m^n)^x.
  const std::vector<Coeffs>& units() const { return units_; }

  std::string to_string(const HfClass& a) const;
  std::string to_string(const HfSumBall& s) const;

 private:
  // Canonical ball around pi^base * w, w integral raw, with radius base + rel.
  HfSumBall ball_around(int base, Coeffs w, int rel) const;

  Field k_;
  int n_;
  std::vector<Coeffs> units_;
};

/// Table-driven form of a Hyperfield for exhaustive work: a class is
/// (gamma, index into units()), with index -1 for zero. A sum
/// pi^a x + pi^b y (a <= b) is pi^a x (1 + pi^(b-a) y/x), so every sum is a
/// scaled entry of a precomputed table of 1 + pi^d u, 0 <= d < n.
class CompactHyperfield {
 public:
  struct Class {
    int gamma = 0;
    int u = -1;
    bool zero() const { return u < 0; }
    auto operator<=>(const Class&) const = default;
  };
  struct Ball {
    int radius = 0;
    int cv = 0;   // center valuation
    int cu = -1;  // canonical unit index, meaningful mod m^(radius - cv)
    bool contains_zero = false;
    bool only_zero = false;
    auto operator<=>(const Ball&) const = default;
  };

  explicit CompactHyperfield(const Hyperfield& h);

  const Hyperfield& base() const { return h_; }
  int unit_count() const { return static_cast<int>(h_.units().size()); }
  int one_index() const { return one_; }

  Class encode(const HfClass& c) const;
  HfClass decode(const Class& c) const;
  Ball encode(const HfSumBall& s) const;
  HfSumBall decode(const Ball& b) const;

  Class mul(Class a, Class b) const;
  Class inv(Class a) const;
  Class neg(Class a) const;
  Ball singleton(Class a) const;
  Ball multiadd(Class a, Class b) const;
  Ball add_to(const Ball& s, Class b) const;
  Ball scale(const Ball& s, Class c) const;
  bool contains(const Ball& s, Class x) const;
  bool subset(const Ball& a, const Ball& b) const;

 private:
  struct OnePlus {
    int v;   // valuation of 1 + pi^d u mod m^n, n if zero
    int u;   // unit index of (1 + pi^d u) / pi^v
  };
  int index_of(const Coeffs& unit) const;
  int trunc(int level, int u) const { return level >= n_ ? u : trunc_[level * unit_count() + u]; }
  Ball around(int base, int x, int d, int w, int rel) const;

  const Hyperfield& h_;
  int n_;
  int one_ = 0;
  std::vector<int> code_to_index_;
  std::vector<Int> radix_;
  std::vector<int> mul_, inv_, neg_, trunc_;
  std::vector<OnePlus> one_plus_;  // [d * U + u]
};

// ---------------------------------------------------------------- axioms

struct AxiomResult {
  std::string axiom;  // "hf.a" .. "hf.g", "vhf.a" .. "vhf.e"
  bool pass = true;
  long checked = 0;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  int rho = 0;
  std::string ball_type = "closed";
  bool all_pass() const;
};

struct AxiomBudget {
  int window = -1;          // valuation window V; -1 selects 2n+2
  long random_triples = 2000;
  std::uint64_t seed = 1;
  std::size_t grid_cap = 1u << 16;
};

/// Hyperfield axioms (a)-(g) on the classes of valuation in [-V, V]. A pair or
/// triple with nonzero first entry a is a times one with first entry 1 and
/// the rest in [-2V, 2V]; those and the ones with first entry 0 are checked
/// exhaustively, plus random general triples. Triples use CompactHyperfield,
/// which is itself checked against the direct implementation.
AxiomReport check_hyperfield_axioms(const Hyperfield& h, const AxiomBudget& budget = {});
/// Valued hyperfield axioms (a)-(e), with rho = n and closed balls.
AxiomReport check_valued_axioms(const Hyperfield& h, const AxiomBudget& budget = {});

/// {0} u {gamma = 0 classes}.
std::vector<HfClass> units_part(const Hyperfield& h);

struct ResidueIsoEntry {
  HfClass cls;
  Coeffs residue;
};

/// For n = 1: the table [x]_1 -> res(x), verified to be a bijection onto
/// F_q preserving multiplication and (single-valued) addition.
std::vector<ResidueIsoEntry> residue_iso_level1(const Hyperfield& h);

}  // namespace vhf
