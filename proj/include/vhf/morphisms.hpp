#pragma once
// Homomorphisms of valued hyperfields over p, given by finite data, and the
// lifting constructions that realize them as field embeddings.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vhf/hyperfield.hpp"

namespace vhf {

using HyperfieldPtr = std::shared_ptr<const Hyperfield>;

/// (O/m^n)^x as a product of cyclic groups. Every unit is uniquely
/// prod gens[i]^exps[i] with 0 <= exps[i] < orders[i].
struct UnitGroup {
  std::vector<Coeffs> gens;
  std::vector<long> orders;
  std::map<Coeffs, int> index;            // canonical unit -> position in units()
  std::vector<std::vector<long>> exps;    // per unit index
  long size() const { return static_cast<long>(exps.size()); }
};

UnitGroup unit_group_gens(const Hyperfield& h, std::size_t cap = 1u << 16);

struct HomSpec {
  HyperfieldPtr source, target;
  std::vector<HfClass> unit_images;  // one per generator of the source unit group
  HfClass pi_image;
  bool over_p = true;
};

/// A HomSpec with its unit-class table evaluated.
class HyperfieldHom {
 public:
  HyperfieldHom(HomSpec spec, std::shared_ptr<const UnitGroup> units);
  explicit HyperfieldHom(HomSpec spec);

  const HomSpec& spec() const { return spec_; }
  const UnitGroup& units() const { return *units_; }
  HfClass operator()(const HfClass& a) const;
  /// Image of the unit with the given index in source().units().
  const HfClass& unit_image(int idx) const { return table_[idx]; }

 private:
  HomSpec spec_;
  std::shared_ptr<const UnitGroup> units_;
  std::vector<HfClass> table_;
};

HomSpec identity_hom(const HyperfieldPtr& h);

struct ConditionResult {
  std::string id;  // "1" .. "4", "over_p"
  bool pass = true;
  long checked = 0;
  std::string witness;
};

struct HomReport {
  std::vector<ConditionResult> conditions;
  bool all_pass() const;
  /// Throws HomViolation naming the first failed condition.
  void require_pass() const;
  const ConditionResult& condition(const std::string& id) const;
};

struct HomBudget {
  int window = 3;          // valuation window for conditions (2) and (4)
  long random_pairs = 500; // definitional samples for (2) and (3)
  std::uint64_t seed = 7;
};

/// Conditions: (1) f(0) = 0, f(1) = 1; (2) f(ab) = f(a) f(b), including the
/// generator orders; (3) f(a + b) within f(a) + f(b), reduced to a = 1,
/// b = pi^k u with 0 <= k <= n, plus random definitional pairs; (4)
/// v(a) <= v(b) iff v(f a) <= v(f b); and f([p]) = [p] when over_p.
HomReport check_hom(const HyperfieldHom& f, const HomBudget& budget = {});
HomReport check_hom(const HomSpec& spec, const HomBudget& budget = {});

/// The map H -> Krasner F_2 = {0, 1} (1 + 1 = {0, 1}, trivial valuation)
/// sending exactly the zero class to 0.
HomReport check_krasner_quotient(const Hyperfield& h, const HomBudget& budget = {});

struct SearchOptions {
  bool over_p = true;
  std::size_t candidate_cap = 1u << 20;
  int threads = 1;
  HomBudget budget{};
};

/// All HomSpecs passing check_hom, sorted canonically.
std::vector<HomSpec> search_homs(const HyperfieldPtr& src, const HyperfieldPtr& dst, const SearchOptions& opt = {});
/// Homs over p that are bijective.
std::vector<HomSpec> search_isos(const HyperfieldPtr& src, const HyperfieldPtr& dst, SearchOptions opt = {});

// ---------------------------------------------------------------- lifting

struct Agreement {
  long samples = 0;
  long mismatches = 0;
  std::string first_mismatch;
};

/// A field embedding K -> L given by the images of x (the generator of W)
/// and of pi.
struct EmbeddingSpec {
  Field source, target;
  FieldElem x_image;
  FieldElem pi_image;
  Agreement agreement;  // f([a]) = [Phi(a)] on samples, when checked

  FieldElem apply(const FieldElem& a) const;
};

/// Embedding of the unramified source (e = 1) determined by the residue map
/// induced by f.
EmbeddingSpec lift_unramified(const HomSpec& f, int samples = 100);
/// Tame case: source polynomial X^e - p a, p not dividing e.
EmbeddingSpec lift_tame(const HomSpec& f, int samples = 100);
/// Wild case: n at least the conservative threshold. seed overrides the
/// representative of pi_image used as the starting point.
EmbeddingSpec lift_wild(const HomSpec& f, std::optional<FieldElem> seed = std::nullopt, int samples = 100);
/// Extends phi0 (an embedding of the unramified subfield, presented as a
/// field with e = 1 and the same W) to K, inducing f. Tame case only.
EmbeddingSpec lift_over(const EmbeddingSpec& phi0, const HomSpec& f, int samples = 100);

/// The unramified subfield W[1/p] of K as a field of its own.
Field unramified_subfield(const Field& k);

struct NormalForm {
  Field field;           // presented by X^e - p a
  FieldElem new_pi;      // its uniformizer, as an element of the input field
};

/// Re-present a tame field by an Eisenstein polynomial X^e - p a.
NormalForm tame_normal_form(const Field& k);

std::string to_string(const HomSpec& s);

}  // namespace vhf
