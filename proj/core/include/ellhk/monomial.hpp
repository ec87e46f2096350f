#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellhk/errors.hpp"

namespace ellhk {

/// Exponent vector of a monomial in num_vars variables X0..X(N).
/// Comparisons use graded reverse lexicographic order with X0 > X1 > ... ;
/// the fixed order makes all echelon pivots deterministic.
struct Monomial {
  std::vector<std::uint16_t> exps;

  Monomial() = default;
  explicit Monomial(std::vector<std::uint16_t> e) : exps(std::move(e)) {}
  static Monomial unit(std::size_t num_vars) { return Monomial(std::vector<std::uint16_t>(num_vars, 0)); }

  int degree() const {
    int d = 0;
    for (auto e : exps) d += e;
    return d;
  }

  std::size_t num_vars() const { return exps.size(); }

  Monomial times(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  Monomial quotient_by(const Monomial& divisor) const;
  Monomial power(std::uint64_t q) const;

  /// 8 bits per exponent, up to 8 variables; total degree must stay < 256.
  /// This is the hash key used by the per-degree dense kernels.
  std::uint64_t pack() const;

  std::string str() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

/// Strict grevlex less-than. Requires equal num_vars.
bool grevlex_less(const Monomial& a, const Monomial& b);

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_less(b, a); }
};

/// All monomials of the given total degree, sorted grevlex-descending.
std::vector<Monomial> monomials_of_degree(std::size_t num_vars, int degree);

std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Number of monomials of the given degree: C(degree + num_vars - 1, num_vars - 1).
std::int64_t monomial_count(std::size_t num_vars, int degree);

}  // namespace ellhk
