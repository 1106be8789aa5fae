#include "laxbases/errors.hpp"

namespace laxbases {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_input: return "invalid-input";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::incomplete_skeleton: return "incomplete-skeleton";
    case Errc::unsupported_dimension: return "unsupported-dimension";
    case Errc::unsupported_context: return "unsupported-context";
    case Errc::rotation_violation: return "rotation-violation";
    case Errc::non_simplicial_quotient: return "non-simplicial-quotient";
    case Errc::internal_invariant: return "internal-invariant";
    case Errc::certification_failure: return "certification-failure";
    case Errc::too_large: return "too-large";
    case Errc::invalid_generator: return "invalid-generator";
    case Errc::cache_invalid: return "cache-invalid";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace laxbases
