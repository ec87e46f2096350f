#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ellhk/field.hpp"
#include "ellhk/monomial.hpp"

namespace ellhk {

/// Homogeneous multivariate polynomial over F_{p^k}. Terms are kept
/// grevlex-descending with nonzero coefficients only, so terms().front()
/// is the leading term.
class HomogeneousPoly {
public:
  using Term = std::pair<Monomial, std::uint32_t>;

  HomogeneousPoly(FieldPtr field, std::size_t num_vars, int degree)
      : field_(std::move(field)), num_vars_(num_vars), degree_(degree) {}

  static HomogeneousPoly from_terms(FieldPtr field, std::size_t num_vars,
                                    std::vector<Term> terms);

  /// coeff * X_i^degree style convenience for single monomials.
  static HomogeneousPoly monomial_poly(FieldPtr field, std::size_t num_vars,
                                       const Monomial& mono, std::uint32_t coeff);

  const FieldCtx& field() const { return *field_; }
  FieldPtr field_ptr() const { return field_; }
  std::size_t num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  const Monomial& leading_monomial() const;
  std::uint32_t coeff_of(const Monomial& mono) const;

  HomogeneousPoly scaled(std::uint32_t c) const;
  HomogeneousPoly monic() const;

  friend HomogeneousPoly operator+(const HomogeneousPoly& f, const HomogeneousPoly& g);
  friend HomogeneousPoly operator-(const HomogeneousPoly& f, const HomogeneousPoly& g);
  friend bool operator==(const HomogeneousPoly& f, const HomogeneousPoly& g);

  std::string str() const;

private:
  FieldPtr field_;
  std::size_t num_vars_;
  int degree_;
  std::vector<Term> terms_;
};

/// Product in the polynomial ring; degrees add. errors ctx_mismatch.
HomogeneousPoly multiply(const HomogeneousPoly& f, const HomogeneousPoly& g);

/// f^q for q a power of the field characteristic (q = 1 allowed). Computed
/// termwise via the char-p identity; agreement with iterated multiply is a
/// tested property, not an assumption of the call site.
HomogeneousPoly frobenius_power(const HomogeneousPoly& f, std::uint64_t q);

/// Repeated-squaring power in the plain polynomial ring (test oracle and
/// Hasse computation; no characteristic restriction on e).
HomogeneousPoly poly_pow(const HomogeneousPoly& f, std::uint32_t e);

/// Partial derivative; in characteristic p exponents divisible by p drop out.
HomogeneousPoly derivative(const HomogeneousPoly& f, std::size_t var);

/// f(A x) for an invertible linear substitution A (rows give the images of
/// the variables: X_i -> sum_j A[i][j] X_j).
HomogeneousPoly substitute_linear(const HomogeneousPoly& f,
                                  const std::vector<std::vector<std::uint32_t>>& a);

/// Evaluate at a point (projective representative), returns a field code.
std::uint32_t evaluate(const HomogeneousPoly& f, const std::vector<std::uint32_t>& point);

/// Text format: "X0^3 + X1^3 + X2^3 + l*X0*X1*X2". Variables X0..X7 plus
/// X,Y,Z,W aliases for X0..X3; symbols name field constants. Integer
/// literals embed through the prime subfield.
HomogeneousPoly parse_poly(const std::string& text, FieldPtr field, std::size_t num_vars,
                           const std::map<std::string, std::uint32_t>& symbols = {});

std::vector<HomogeneousPoly> maximal_ideal_gens(FieldPtr field, std::size_t num_vars);

}  // namespace ellhk
