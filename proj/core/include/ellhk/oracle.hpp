#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellhk/presentation.hpp"
#include "ellhk/rational.hpp"

namespace ellhk {

/// A Hilbert-Kunz colength question: the bracket power I^[q] of the ideal
/// generated by the given forms, inside the given quotient presentation.
struct FrobeniusQuery {
  PresentationPtr pres;
  std::vector<HomogeneousPoly> ideal;  // f_i homogeneous of degree d_i >= 1
  std::uint64_t q = 1;                 // p^e, e >= 0
};

struct ColengthProfile {
  std::uint64_t q = 1;
  std::vector<std::pair<int, std::int64_t>> per_degree;  // (m, dim (R/I^[q])_m), ends at 0
  BigInt total;
  int stop_degree = 0;  // first degree with colength zero
  std::vector<std::string> diagnostics;  // empirically checked expectations that failed
};

struct SyzygyDims {
  std::uint64_t q = 1;
  int m = 0;
  std::int64_t h0 = 0;
  std::int64_t h1 = 0;
  std::int64_t degree_of_bundle = 0;  // delta * (m(n-1) - q*sum d_i)
  int rank = 0;                       // n-1
};

struct OracleOptions {
  int threads = 1;               // degrees within a query fan out when > 1
  int confirm_zero_degrees = 3;  // extra degrees checked after the first zero
};

/// Sums dim R_m - rank((+)_i R_{m - q d_i} -> R_m) over m until the colength
/// vanishes; vanishing is absorbing because R is standard graded. errors
/// stop_bound_exceeded when no zero occurs by m = q*sum(d_i) + N + 2, which
/// signals a non-primary ideal or a bad presentation.
ColengthProfile colength(const FrobeniusQuery& query, const OracleOptions& opts = {});

/// h0/h1 of Syz(f_1^q,...,f_n^q)(m): h0 as the kernel of the evaluation map
/// on global sections, h1 from Riemann-Roch on the genus-1 curve (chi = deg).
/// Requires expected_delta on the presentation.
SyzygyDims syzygy_dims(const FrobeniusQuery& query, int m);

struct GammaPoint {
  std::uint64_t q = 1;
  BigInt phi;
  Rational gamma;
};

struct PeriodicityDiagnosis {
  bool stabilized = false;
  int onset_e = 0;
  int period = 0;
};

struct GammaSeries {
  int e_min = 0;
  std::vector<GammaPoint> points;
  Rational e_hk;
  bool fitted = false;  // e_hk recovered from differences instead of supplied
  PeriodicityDiagnosis cycle;
};

/// gamma(q) = phi(q) - e_hk * q^2 over q = p^e, e in [e_min, e_max], exact.
/// When e_hk is not supplied it is fitted from consecutive differences,
/// which needs at least 3 points (errors no_multiplicity otherwise).
GammaSeries gamma_series(PresentationPtr pres, const std::vector<HomogeneousPoly>& ideal,
                         std::uint64_t p, int e_min, int e_max,
                         std::optional<Rational> e_hk, const OracleOptions& opts = {});

/// Cycle detection shared with the closed-form side: smallest period and
/// onset such that the tail of values repeats.
PeriodicityDiagnosis detect_cycle(const std::vector<Rational>& values, int e_min);

}  // namespace ellhk
