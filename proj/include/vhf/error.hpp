#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vhf {

/// Every failure mode the library reports. The CLI maps these onto exit
/// codes: budget errors exit 3, everything else exits 2.
enum class ErrorKind {
  NotEisenstein,
  NotIrreducible,
  PrecisionTooSmall,
  MixedFields,
  DivisionByZero,
  PrecisionExhausted,
  ZeroAtPrecision,
  NegativeValuation,
  HenselPreconditionFailed,
  BudgetExceeded,
  AxiomViolation,
  CongruenceFailed,
  NonUnitDenominator,
  NoRootFound,
  HomViolation,
  IncompatibleResidueEmbedding,
  NotTame,
  NotNormalForm,
  ThresholdNotMet,
  RestrictionMismatch,
  SyntaxError,
  SortError,
  TranslationDisagreement,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  bool is_budget() const noexcept { return kind_ == ErrorKind::BudgetExceeded; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace vhf
