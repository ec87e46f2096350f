#include "ellhk/monomial.hpp"

#include <algorithm>

namespace ellhk {

Monomial Monomial::times(const Monomial& other) const {
  check(exps.size() == other.exps.size(), errc::invalid_input, "monomials in different rings");
  Monomial out = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) out.exps[i] = std::uint16_t(exps[i] + other.exps[i]);
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  if (exps.size() != other.exps.size()) return false;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] > other.exps[i]) return false;
  return true;
}

Monomial Monomial::quotient_by(const Monomial& divisor) const {
  Monomial out = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    check(divisor.exps[i] <= exps[i], errc::invalid_input, "monomial quotient not divisible");
    out.exps[i] = std::uint16_t(exps[i] - divisor.exps[i]);
  }
  return out;
}

Monomial Monomial::power(std::uint64_t q) const {
  Monomial out = *this;
  for (auto& e : out.exps) {
    std::uint64_t v = std::uint64_t(e) * q;
    check(v < 65536, errc::degree_too_large, "monomial power exponent overflow");
    e = std::uint16_t(v);
  }
  return out;
}

std::uint64_t Monomial::pack() const {
  // 16 bits per exponent up to 4 variables, 8 bits up to 8
  if (exps.size() <= 4) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) key |= std::uint64_t(exps[i]) << (16 * i);
    return key;
  }
  check(exps.size() <= 8, errc::degree_too_large, "packing supports at most 8 variables");
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    check(exps[i] < 256, errc::degree_too_large,
          "exponents must stay below 256 with more than 4 variables");
    key |= std::uint64_t(exps[i]) << (8 * i);
  }
  return key;
}

std::string Monomial::str() const {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "X" + std::to_string(i);
    if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
  }
  return out.empty() ? "1" : out;
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
  check(a.exps.size() == b.exps.size(), errc::invalid_input, "monomials in different rings");
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (std::size_t i = a.exps.size(); i-- > 0;) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
  }
  return false;
}

std::vector<Monomial> monomials_of_degree(std::size_t num_vars, int degree) {
  check(num_vars >= 1, errc::invalid_input, "need at least one variable");
  check(degree >= 0, errc::invalid_input, "negative degree");
  std::vector<Monomial> out;
  out.reserve(std::size_t(monomial_count(num_vars, degree)));
  Monomial cur = Monomial::unit(num_vars);
  // enumerate exponent vectors recursively, then sort into grevlex order
  auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
    if (var + 1 == num_vars) {
      cur.exps[var] = std::uint16_t(remaining);
      out.push_back(cur);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur.exps[var] = std::uint16_t(e);
      self(self, var + 1, remaining - e);
    }
    cur.exps[var] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::int64_t monomial_count(std::size_t num_vars, int degree) {
  if (degree < 0) return 0;
  return binomial(degree + std::int64_t(num_vars) - 1, std::int64_t(num_vars) - 1);
}

}  // namespace ellhk
