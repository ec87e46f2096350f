#pragma once

#include <stdexcept>
#include <string>

namespace ellhk {

enum class errc {
  invalid_input,
  division_by_zero,
  ctx_mismatch,
  not_prime,
  degree_too_large,
  not_p_power,
  hilbert_mismatch,
  bound_exceeded,
  not_standard_graded,
  stop_bound_exceeded,
  no_multiplicity,
  decomposition_inconsistent,
  h1_unresolved,
  rank_too_small,
  unordered_slopes,
  not_a_cubic,
  singular_curve,
  non_integer_result,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_input: return "InvalidInput";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::ctx_mismatch: return "CtxMismatch";
    case errc::not_prime: return "NotPrime";
    case errc::degree_too_large: return "DegreeTooLarge";
    case errc::not_p_power: return "NotPPower";
    case errc::hilbert_mismatch: return "HilbertMismatch";
    case errc::bound_exceeded: return "BoundExceeded";
    case errc::not_standard_graded: return "NotStandardGraded";
    case errc::stop_bound_exceeded: return "StopBoundExceeded";
    case errc::no_multiplicity: return "NoMultiplicity";
    case errc::decomposition_inconsistent: return "DecompositionInconsistent";
    case errc::h1_unresolved: return "H1Unresolved";
    case errc::rank_too_small: return "RankTooSmall";
    case errc::unordered_slopes: return "UnorderedSlopes";
    case errc::not_a_cubic: return "NotACubic";
    case errc::singular_curve: return "SingularCurve";
    case errc::non_integer_result: return "NonIntegerResult";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

/// All library failures are reported through this type; code() lets callers
/// (in particular the CLI) map failures to typed exit codes.
class error : public std::runtime_error {
public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void check(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace ellhk
