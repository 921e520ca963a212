#pragma once

#include <stdexcept>
#include <string>

namespace quivex {

/// Error codes used across the library. The CLI maps BudgetExceeded to
/// exit code 2 and every other code to exit code 1.
enum class errc {
  cyclic_quiver,
  malformed_input,
  index_mismatch,
  not_below,
  budget_exceeded,
  zero_vector,
  kappa_not_positive,
  disconnected,
  not_wild,
  not_interior,
  gamma_too_large,
  search_exhausted,
  not_prime,
  out_of_range,
  dynkin_input,
  overflow,
};

inline const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::cyclic_quiver: return "CyclicQuiver";
    case errc::malformed_input: return "MalformedInput";
    case errc::index_mismatch: return "IndexMismatch";
    case errc::not_below: return "NotBelow";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::zero_vector: return "ZeroVector";
    case errc::kappa_not_positive: return "KappaNotPositive";
    case errc::disconnected: return "Disconnected";
    case errc::not_wild: return "NotWild";
    case errc::not_interior: return "NotInterior";
    case errc::gamma_too_large: return "GammaTooLarge";
    case errc::search_exhausted: return "SearchExhausted";
    case errc::not_prime: return "NotPrime";
    case errc::out_of_range: return "OutOfRange";
    case errc::dynkin_input: return "DynkinInput";
    case errc::overflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}

  errc code() const noexcept { return code_; }
  const char* name() const noexcept { return errc_name(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace quivex
