#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polargrass {

enum class Errc {
  NotPrime,
  ReduciblePolynomial,
  OrderTooLarge,
  DivisionByZero,
  FieldMismatch,
  NoInvolution,
  DimensionMismatch,
  AmbientMismatch,
  BudgetExceeded,
  UnknownVertex,
  NotConnected,
  InvalidGraph,
  IncidenceViolation,
  NotAClique,
  Unclassifiable,
  NoCommonApartment,
  Degenerate,
  WittIndexTooSmall,
  RankTooSmall,
  NotSingularPoint,
  DimensionTooSmall,
  InvalidDomainVertex,
  InvalidCodomainVertex,
  OracleUnavailable,
  NotEmbedding,
  TheoremContradiction,
  BadDescriptor,
  SuiteInapplicable,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace polargrass
