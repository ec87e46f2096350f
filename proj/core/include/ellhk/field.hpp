#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ellhk/errors.hpp"

namespace ellhk {

/// Arithmetic context for F_{p^k}. Elements are passed around as integer
/// codes sum c_i p^i with digits c_i in [0,p) low-to-high; the code of an
/// element is also its canonical serialization order. A context is immutable
/// after construction and safe to share across threads.
///
/// For k = 1 the modulus is the identity convention t - 0 and is ignored.
class FieldCtx {
public:
  /// Field with a deterministically chosen modulus: the lexicographically
  /// smallest monic irreducible of degree k over F_p (smallest integer code).
  /// Contexts are cached, so repeated calls return the same object.
  static std::shared_ptr<const FieldCtx> get(std::uint32_t p, std::uint32_t k);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t extension_degree() const { return k_; }
  std::uint64_t order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return 1; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;  // errors division_by_zero on 0
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  /// Embeds an integer via the prime subfield.
  std::uint32_t from_int(std::int64_t n) const;
  std::uint32_t from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
  std::vector<std::uint32_t> coeffs_of(std::uint32_t a) const;

  /// The class of t (the generator of the polynomial basis); equals 0 shifted
  /// once, i.e. code p. Only meaningful for k >= 2.
  std::uint32_t generator() const { return k_ >= 2 ? p_ : 0; }

  std::string to_string(std::uint32_t a) const;

  bool same(const FieldCtx& other) const { return this == &other; }

  // Fast-path tables (present when order <= table_cap). Exposed for the
  // dense linear-algebra kernels.
  bool has_tables() const { return !mul_table_.empty(); }
  const std::uint32_t* mul_row(std::uint32_t a) const { return mul_table_.data() + std::size_t(a) * order_; }
  const std::uint32_t* add_row(std::uint32_t a) const { return add_table_.data() + std::size_t(a) * order_; }
  const std::uint32_t* neg_table() const { return neg_table_.data(); }

private:
  FieldCtx(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

  std::uint32_t add_raw(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv_raw(std::uint32_t a) const;
  void build_tables();

  std::uint32_t p_ = 0;
  std::uint32_t k_ = 0;
  std::uint64_t order_ = 0;
  std::vector<std::uint32_t> modulus_;          // length k+1, low-to-high, monic
  std::vector<std::uint32_t> reduction_rows_;   // t^(k+j) mod modulus, j = 0..k-2, k digits each
  std::vector<std::uint32_t> add_table_, mul_table_, neg_table_, inv_table_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// make_extension(p, k): p prime, 1 <= k <= 8.
FieldPtr make_extension(std::uint32_t p, std::uint32_t k);
FieldPtr make_prime_field(std::uint32_t p);

bool is_prime(std::uint64_t n);

/// Value-semantics wrapper used at API boundaries; the linear-algebra
/// kernels work on raw codes through the shared context instead.
struct FieldElement {
  std::uint32_t code = 0;
  const FieldCtx* ctx = nullptr;

  FieldElement() = default;
  FieldElement(std::uint32_t code, const FieldCtx& ctx) : code(code), ctx(&ctx) {}

  bool is_zero() const { return code == 0; }
  std::string str() const { return ctx ? ctx->to_string(code) : "0"; }

  friend FieldElement operator+(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a, FieldElement b);
  friend FieldElement operator*(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a);
  friend bool operator==(FieldElement a, FieldElement b);
  FieldElement inverse() const;
};

}  // namespace ellhk
