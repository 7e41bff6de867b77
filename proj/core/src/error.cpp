#include "linsand/error.hpp"

namespace linsand {

  char const* errc_name(Errc e) noexcept {
    switch (e) {
      case Errc::non_prime_characteristic:
        return "NonPrimeCharacteristic";
      case Errc::reducible_modulus:
        return "ReducibleModulus";
      case Errc::non_monic:
        return "NonMonic";
      case Errc::divide_by_zero:
        return "DivideByZero";
      case Errc::dimension_mismatch:
        return "DimensionMismatch";
      case Errc::budget_exceeded:
        return "BudgetExceeded";
      case Errc::bad_sandwich_element:
        return "BadSandwichElement";
      case Errc::assertion_failure:
        return "AssertionFailure";
      case Errc::not_regular:
        return "NotRegular";
      case Errc::not_in_image:
        return "NotInImage";
      case Errc::domain_error:
        return "DomainError";
      case Errc::unsupported_parameters:
        return "UnsupportedParameters";
      case Errc::degenerate_case:
        return "DegenerateCase";
      case Errc::precondition_violation:
        return "PreconditionViolation";
      case Errc::search_exhausted:
        return "SearchExhausted";
      case Errc::greedy_search_failed:
        return "GreedySearchFailed";
      case Errc::parse_error:
        return "ParseError";
    }
    return "Unknown";
  }

}  // namespace linsand
