#pragma once

#include <stdexcept>
#include <string>

namespace linsand {

  enum class Errc {
    non_prime_characteristic,
    reducible_modulus,
    non_monic,
    divide_by_zero,
    dimension_mismatch,
    budget_exceeded,
    bad_sandwich_element,
    assertion_failure,
    not_regular,
    not_in_image,
    domain_error,
    unsupported_parameters,
    degenerate_case,
    precondition_violation,
    search_exhausted,
    greedy_search_failed,
    parse_error,
  };

  char const* errc_name(Errc e) noexcept;

  class Error : public std::runtime_error {
   public:
    Error(Errc code, std::string const& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          _code(code) {}

    Errc code() const noexcept {
      return _code;
    }

   private:
    Errc _code;
  };

  [[noreturn]] inline void fail(Errc code, std::string const& what) {
    throw Error(code, what);
  }

}  // namespace linsand
