#include "ellhk/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ellhk {

namespace {

constexpr std::uint64_t k_table_cap = 512;  // order above which we skip tables

using Poly = std::vector<std::uint32_t>;  // dense, low-to-high, over F_p

int poly_deg(const Poly& f) {
  for (int i = int(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

void poly_trim(Poly& f) { f.resize(std::size_t(poly_deg(f) + 1)); }

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // p is small and prime; Fermat.
  std::uint64_t r = 1, base = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return std::uint32_t(r);
}

// f mod g, g monic-normalizable, both over F_p.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  int dg = poly_deg(g);
  std::uint32_t lead_inv = mod_inverse(g[std::size_t(dg)], p);
  for (int i = poly_deg(f); i >= dg; --i) {
    std::uint32_t c = f[std::size_t(i)];
    if (c == 0) continue;
    std::uint32_t factor = std::uint32_t(std::uint64_t(c) * lead_inv % p);
    for (int j = 0; j <= dg; ++j) {
      std::uint64_t sub = std::uint64_t(factor) * g[std::size_t(j)] % p;
      std::uint32_t& cell = f[std::size_t(i - dg + j)];
      cell = std::uint32_t((cell + p - sub) % p);
    }
  }
  poly_trim(f);
  return f;
}

bool poly_is_zero(const Poly& f) { return poly_deg(f) < 0; }

// Exhaustive factor scan: irreducible iff no monic divisor of degree
// 1..deg/2. Fine for the k <= 8 supported here.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
  int d = poly_deg(f);
  if (d < 1) return false;
  for (int e = 1; e <= d / 2; ++e) {
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(std::size_t(e) + 1, 0);
      std::uint64_t c = code;
      for (int i = 0; i < e; ++i) {
        g[std::size_t(i)] = std::uint32_t(c % p);
        c /= p;
      }
      g[std::size_t(e)] = 1;
      if (poly_is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};  // t - 0 convention, never used for reduction
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f(k + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = std::uint32_t(c % p);
      c /= p;
    }
    f[k] = 1;
    if (poly_irreducible(f, p)) return f;
  }
  fail(errc::internal, "no irreducible polynomial found");  // unreachable: irreducibles exist
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  order_ = 1;
  for (std::uint32_t i = 0; i < k_; ++i) order_ *= p_;
  // reduction rows: t^(k+j) mod modulus for j = 0..k-2
  if (k_ >= 2) {
    reduction_rows_.assign(std::size_t(k_ - 1) * k_, 0);
    Poly cur(modulus_.begin(), modulus_.end() - 1);  // t^k = -(low part)
    for (auto& c : cur) c = (p_ - c) % p_;
    for (std::uint32_t j = 0; j + 1 < k_; ++j) {
      cur.resize(k_, 0);
      for (std::uint32_t i = 0; i < k_; ++i) reduction_rows_[std::size_t(j) * k_ + i] = cur[i];
      // multiply cur by t, reduce
      Poly next(k_ + 1, 0);
      for (std::uint32_t i = 0; i < k_; ++i) next[i + 1] = cur[i];
      if (next[k_] != 0) {
        std::uint32_t top = next[k_];
        next[k_] = 0;
        for (std::uint32_t i = 0; i < k_; ++i)
          next[i] = (next[i] + top * reduction_rows_[i]) % p_;
      }
      next.resize(k_);
      cur = next;
    }
  }
  if (order_ <= k_table_cap) build_tables();
}

std::uint32_t FieldCtx::add_raw(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return (a + b) % p_;
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::mul_raw(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return std::uint32_t(std::uint64_t(a) * b % p_);
  std::uint32_t da[8], db[8];
  for (std::uint32_t i = 0; i < k_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  std::uint32_t prod[15] = {0};
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  // fold t^(k+j) back using the reduction rows
  for (std::uint32_t j = 2 * k_ - 2; j >= k_; --j) {
    std::uint32_t c = prod[j];
    if (c) {
      const std::uint32_t* row = reduction_rows_.data() + std::size_t(j - k_) * k_;
      for (std::uint32_t i = 0; i < k_; ++i) prod[i] = (prod[i] + c * row[i]) % p_;
    }
    if (j == k_) break;
  }
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += prod[i] * scale;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::inv_raw(std::uint32_t a) const {
  check(a != 0, errc::division_by_zero, "inverse of zero");
  // a^(order-2); order is small enough that pow is fine everywhere
  std::uint64_t e = order_ - 2;
  std::uint32_t result = 1, base = a;
  while (e) {
    if (e & 1) result = mul_raw(result, base);
    base = mul_raw(base, base);
    e >>= 1;
  }
  return result;
}

void FieldCtx::build_tables() {
  std::size_t n = std::size_t(order_);
  add_table_.resize(n * n);
  mul_table_.resize(n * n);
  neg_table_.resize(n);
  inv_table_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      add_table_[a * n + b] = add_raw(std::uint32_t(a), std::uint32_t(b));
      mul_table_[a * n + b] = mul_raw(std::uint32_t(a), std::uint32_t(b));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (add_table_[a * n + b] == 0) neg_table_[a] = std::uint32_t(b);
      if (a != 0 && mul_table_[a * n + b] == 1) inv_table_[a] = std::uint32_t(b);
    }
  }
}

std::uint32_t FieldCtx::add(std::uint32_t a, std::uint32_t b) const {
  return has_tables() ? add_table_[std::size_t(a) * order_ + b] : add_raw(a, b);
}

std::uint32_t FieldCtx::neg(std::uint32_t a) const {
  if (has_tables()) return neg_table_[a];
  std::uint32_t out = 0, scale = 1, x = a;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldCtx::mul(std::uint32_t a, std::uint32_t b) const {
  return has_tables() ? mul_table_[std::size_t(a) * order_ + b] : mul_raw(a, b);
}

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
  check(a != 0, errc::division_by_zero, "inverse of zero");
  return has_tables() ? inv_table_[a] : inv_raw(a);
}

std::uint32_t FieldCtx::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = 1, base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t FieldCtx::from_int(std::int64_t n) const {
  std::int64_t r = n % std::int64_t(p_);
  if (r < 0) r += p_;
  return std::uint32_t(r);
}

std::uint32_t FieldCtx::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
  check(coeffs.size() <= k_, errc::invalid_input, "coefficient list longer than extension degree");
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t c = i < coeffs.size() ? coeffs[i] % p_ : 0;
    out += c * scale;
    scale *= p_;
  }
  return out;
}

std::vector<std::uint32_t> FieldCtx::coeffs_of(std::uint32_t a) const {
  std::vector<std::uint32_t> out(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

std::string FieldCtx::to_string(std::uint32_t a) const {
  if (k_ == 1) return std::to_string(a);
  auto c = coeffs_of(a);
  std::string out;
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

std::shared_ptr<const FieldCtx> FieldCtx::get(std::uint32_t p, std::uint32_t k) {
  check(is_prime(p), errc::not_prime, "characteristic " + std::to_string(p) + " is not prime");
  check(k >= 1 && k <= 8, errc::degree_too_large,
        "extension degree " + std::to_string(k) + " outside [1,8]");
  static std::mutex mtx;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const FieldCtx>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ctx = std::shared_ptr<const FieldCtx>(new FieldCtx(p, k, smallest_irreducible(p, k)));
  cache.emplace(key, ctx);
  return ctx;
}

FieldPtr make_extension(std::uint32_t p, std::uint32_t k) { return FieldCtx::get(p, k); }
FieldPtr make_prime_field(std::uint32_t p) { return FieldCtx::get(p, 1); }

namespace {
const FieldCtx& common_ctx(FieldElement a, FieldElement b) {
  check(a.ctx && b.ctx && a.ctx->same(*b.ctx), errc::ctx_mismatch,
        "field elements from different contexts");
  return *a.ctx;
}
}  // namespace

FieldElement operator+(FieldElement a, FieldElement b) {
  const auto& ctx = common_ctx(a, b);
  return {ctx.add(a.code, b.code), ctx};
}

FieldElement operator-(FieldElement a, FieldElement b) {
  const auto& ctx = common_ctx(a, b);
  return {ctx.sub(a.code, b.code), ctx};
}

FieldElement operator*(FieldElement a, FieldElement b) {
  const auto& ctx = common_ctx(a, b);
  return {ctx.mul(a.code, b.code), ctx};
}

FieldElement operator-(FieldElement a) {
  check(a.ctx != nullptr, errc::invalid_input, "element without context");
  return {a.ctx->neg(a.code), *a.ctx};
}

bool operator==(FieldElement a, FieldElement b) { return common_ctx(a, b).same(*b.ctx) && a.code == b.code; }

FieldElement FieldElement::inverse() const {
  check(ctx != nullptr, errc::invalid_input, "element without context");
  return {ctx->inv(code), *ctx};
}

}  // namespace ellhk
