#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace laxbases {

enum class Errc {
  invalid_input,
  dimension_mismatch,
  incomplete_skeleton,
  unsupported_dimension,
  unsupported_context,
  rotation_violation,
  non_simplicial_quotient,
  internal_invariant,
  certification_failure,
  too_large,
  invalid_generator,
  cache_invalid,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// command-line front end can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// A constructive algorithm ran out of its step budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& message) : Error(Errc::certification_failure, message) {}
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace laxbases
