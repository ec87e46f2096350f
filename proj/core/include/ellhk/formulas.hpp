#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ellhk/oracle.hpp"
#include "ellhk/rational.hpp"

namespace ellhk {

/// One indecomposable summand S_j of the syzygy bundle, by rank and degree.
struct SummandData {
  std::int64_t rank = 1;
  std::int64_t degree = 0;

  /// nu = -deg(S) / (rk(S) * delta).
  Rational nu(std::int64_t delta) const { return Rational(BigInt(-degree), BigInt(rank * delta)); }
};

/// How to resolve the h1 term of a summand at an integral twist q*nu.
/// The non-integral case is always 0 and never consults the policy.
struct AutoZeroPolicy {};  // error out instead of guessing
struct ConstantPolicy {
  std::vector<std::int64_t> per_summand;
};
struct OracleBackedPolicy {  // close the loop with the brute-force oracle
  PresentationPtr pres;
  std::vector<HomogeneousPoly> ideal;
};
using H1Policy = std::variant<AutoZeroPolicy, ConstantPolicy, OracleBackedPolicy>;

struct HKValue {
  Rational e_hk;
  Rational gamma;
  Rational phi;     // e_hk * q^2 + gamma, always an integer on valid inputs
  BigInt phi_int;
  std::string provenance;
};

/// pers(q) = (q*deg(S) mod rk(S)*delta) / (rk(S)*delta), in [0,1);
/// satisfies ceil(q*nu) = q*nu + pers(q).
Rational pers(std::uint64_t q, const SummandData& s, std::int64_t delta);

/// The general closed form: phi(q) = e_hk q^2 + gamma(q) with
///   e_hk  = (sum deg(S_j)^2/rk(S_j) - delta^2 sum d_i^2) / (2 delta)
///   gamma = sum (rk_j delta / 2) pers_j (1 - pers_j) + sum h1_j - n + 1.
/// Requires sum rk_j = n-1 and sum deg_j = -delta * sum d_i
/// (errors decomposition_inconsistent otherwise).
HKValue hk_general(std::int64_t delta, const std::vector<std::int64_t>& d_list,
                   const std::vector<SummandData>& summands, const H1Policy& policy,
                   std::uint64_t q);

/// Semistable specialization (single summand of rank n-1, degree
/// -delta*sum d_i); evaluated through its own printed form and asserted
/// equal to hk_general on that decomposition.
HKValue hk_semistable(std::int64_t delta, const std::vector<std::int64_t>& d_list,
                      const H1Policy& policy, std::uint64_t q);

/// Complete embedding of degree N+1 into P^N: e_hk = (N+1)^2 / 2N and
///   gamma(q) = (N+1)/2 (-q mod N)(1 - (-q mod N)/N) + h1 - N.
/// The h1 term vanishes unless N divides q (so N must be a power of p for
/// it to ever fire); in that case a value must be supplied.
HKValue hk_complete_embedding(std::int64_t n_proj, std::uint64_t q, std::uint64_t p,
                              std::optional<std::int64_t> h1_value);

/// Splitting type of the restricted cotangent bundle of a space curve.
struct IndecomposableCase {
  std::int64_t degree = 0;  // must be -4*delta
};
struct RankTwoPlusLineCase {
  std::int64_t rank2_degree = 0;
  std::int64_t line_degree = 0;
};
struct ThreeLinesCase {
  std::int64_t degrees[3] = {0, 0, 0};
};
using SplittingCase = std::variant<IndecomposableCase, RankTwoPlusLineCase, ThreeLinesCase>;

/// Space curves in P^3, ideal (X0..X3): the three printed cases, each
/// asserted equal to hk_general on the corresponding decomposition.
HKValue hk_space_curve(std::int64_t delta, const SplittingCase& split, std::uint64_t q,
                       std::uint64_t p, const H1Policy& policy);

/// For a rank-3, total-degree -4*delta decomposition: e_hk >= 2*delta/3 with
/// equality exactly for equal slopes. Returns true in the equality
/// (semistable) case and hard-errors if the dichotomy is violated.
bool ehk_lower_bound_check(std::int64_t delta, const std::vector<SummandData>& summands);

/// Reusable closed form with q-dependence captured; gamma_of_q is eventually
/// periodic in e for q = p^e under a fixed policy.
struct HKClosedForm {
  Rational e_hk;
  std::function<Rational(std::uint64_t)> gamma_of_q;
  std::string provenance;
};

HKClosedForm closed_form_general(std::int64_t delta, std::vector<std::int64_t> d_list,
                                 std::vector<SummandData> summands, H1Policy policy);

/// Cycle of gamma(p^e) for e in [0, e_max] under the form's policy.
PeriodicityDiagnosis gamma_cycle(const HKClosedForm& form, std::uint64_t p, int e_max);

}  // namespace ellhk
