#pragma once
// First-order syntax for valued hyperfields (L_vhf = {0, 1, *, plus, |})
// and for valued fields (three-sorted L_val: field K, residue field k,
// value group G = Z u {inf}), the translation of the first into the second,
// and bounded evaluation on concrete models.
//
// Surface syntax (see docs/grammar.ebnf):
//   L_vhf:  exists x, y. plus(x, y, phat) and x | y
//   L_val:  exists x:K. nu(x * x - 5) >= nu(5 * 5)

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vhf/hyperfield.hpp"

namespace vhf {

enum class Sort { H, K, k, G };
std::string to_string(Sort s);

struct Term {
  enum class Kind { Var, Num, Inf, Phat, Add, Sub, Neg, Mul, Pow, Nu, Res };
  Kind kind = Kind::Num;
  std::string name;  // Var
  long value = 0;    // Num, Pow exponent
  std::vector<Term> args;
  Sort sort = Sort::K;

  bool operator==(const Term&) const = default;
};

struct Formula {
  enum class Kind { True, False, Atom, Not, And, Or, Implies, Exists, Forall };
  enum class Rel { Eq, Ne, Lt, Le, Gt, Ge, Div, Plus };
  Kind kind = Kind::True;
  Rel rel = Rel::Eq;          // Atom
  std::vector<Term> terms;    // Atom
  std::vector<Formula> subs;  // connectives and quantifier bodies
  std::string var;            // quantifiers
  Sort var_sort = Sort::K;

  bool operator==(const Formula&) const = default;
};

enum class Language { Vhf, Val };

/// SyntaxError carries "line:col"; SortError for ill-sorted input.
Formula parse_vhf(const std::string& text);
Formula parse_val(const std::string& text);
std::string print(const Formula& f, Language lang);
std::string print(const Term& t);

bool is_positive(const Formula& f);
/// Every quantifier is an existential not under a negation or in the
/// antecedent of an implication.
bool is_existential(const Formula& f);
bool is_positive_existential(const Formula& f);
int quantifier_depth(const Formula& f);
std::vector<std::string> free_variables(const Formula& f);

/// L_vhf -> L_val for fields with residue characteristic p, ramification e,
/// at level n.
Formula translate(const Formula& phi, long p, int e, int n);

struct TriBool {
  enum class Kind { True, FalseWithinRadius, Unknown };
  Kind kind = Kind::Unknown;
  int radius = 0;
  /// The False case holds outright, not only within the radius.
  bool definite = false;
  /// Existential variables on the path to a True result, rendered.
  std::vector<std::pair<std::string, std::string>> witness;

  bool is_true() const { return kind == Kind::True; }
  bool is_false() const { return kind == Kind::FalseWithinRadius; }
};
std::string to_string(const TriBool& t);

struct EvalOptions {
  int radius = 4;
  int max_depth = 4;                // hyperfield quantifier depth
  std::uint64_t node_cap = 50'000'000;
};

/// Quantifiers range over {0} and the classes of valuation in [-V, V].
TriBool eval_vhf(const Formula& phi, const Hyperfield& h, const EvalOptions& opt = {},
                 std::vector<std::pair<std::string, HfClass>>* assignment = nullptr);
/// Field quantifiers range over {0} and the representatives pi^g * u of the
/// same classes (u canonical modulo m^n), extended by solutions of
/// equations linear in the quantified variable; residue quantifiers range
/// over k; group quantifiers over [-V, V] u {inf}.
TriBool eval_val(const Formula& phi, const Hyperfield& h, const EvalOptions& opt = {},
                 std::vector<std::pair<std::string, FieldElem>>* assignment = nullptr);

/// Re-evaluates the quantifier-free matrix of a prenex existential sentence
/// under a witness assignment.
bool verify_vhf_witness(const Formula& phi, const Hyperfield& h,
                        const std::vector<std::pair<std::string, HfClass>>& assignment);
bool verify_val_witness(const Formula& phi, const Hyperfield& h,
                        const std::vector<std::pair<std::string, FieldElem>>& assignment);

/// Deterministic positive-existential L_vhf sentences.
std::vector<Formula> generate_corpus(int count, std::uint64_t seed = 1, int max_vars = 2);

struct AgreementRow {
  std::string sentence;
  TriBool vhf, val;
  bool disagree = false;
  bool translation_existential = true;
};

struct AgreementReport {
  std::vector<AgreementRow> rows;
  int definite = 0;
  int disagreements = 0;
  int non_existential = 0;
};

/// Compares eval_vhf(phi) with eval_val(translate(phi)) on every sentence.
/// With throw_on_disagreement, the first definite disagreement raises
/// TranslationDisagreement.
AgreementReport agreement_harness(const std::vector<Formula>& corpus, const Hyperfield& h,
                                  const EvalOptions& opt = {}, bool throw_on_disagreement = false);

}  // namespace vhf
