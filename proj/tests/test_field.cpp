#include "doctest.h"

#include <random>

#include "ellhk/field.hpp"

using namespace ellhk;

namespace {

// independent irreducibility oracle for the modulus choice: a monic cubic
// over F_2 is irreducible iff it has no root; scan codes ascending
std::vector<std::uint32_t> smallest_cubic_over_f2() {
  for (std::uint32_t code = 0; code < 8; ++code) {
    std::uint32_t c0 = code & 1, c1 = (code >> 1) & 1, c2 = (code >> 2) & 1;
    auto eval = [&](std::uint32_t x) {
      return (c0 + c1 * x + c2 * x * x + x * x * x) % 2;
    };
    if (eval(0) != 0 && eval(1) != 0) return {c0, c1, c2, 1};
  }
  return {};
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  auto f5 = make_prime_field(5);
  CHECK(f5->mul(2, 3) == 1);  // 6 mod 5
  CHECK(f5->add(4, 4) == 3);
  CHECK(f5->inv(2) == 3);
  auto f2 = make_prime_field(2);
  CHECK(f2->add(1, 1) == 0);
}

TEST_CASE("extension field F8") {
  auto f8 = make_extension(2, 3);
  CHECK(f8->order() == 8);
  // deterministic modulus: lexicographically smallest monic irreducible,
  // confirmed by the independent root-scan oracle (t^3 + t + 1)
  CHECK(f8->modulus() == smallest_cubic_over_f2());
  CHECK(f8->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
  // t * t^2 = t^3 = t + 1 after reduction
  std::uint32_t t = f8->generator();
  std::uint32_t t2 = f8->mul(t, t);
  CHECK(f8->coeffs_of(f8->mul(t, t2)) == std::vector<std::uint32_t>{1, 1, 0});
}

TEST_CASE("extension field F4 modulus") {
  auto f4 = make_extension(2, 2);
  CHECK(f4->modulus() == std::vector<std::uint32_t>{1, 1, 1});  // the only irreducible quadratic
  auto f5 = make_extension(5, 1);
  CHECK(f5->extension_degree() == 1);
}

TEST_CASE("field construction errors") {
  CHECK_THROWS_WITH_AS(make_extension(4, 1), doctest::Contains("NotPrime"), error);
  CHECK_THROWS_WITH_AS(make_extension(2, 9), doctest::Contains("DegreeTooLarge"), error);
  auto f5 = make_prime_field(5);
  CHECK_THROWS_WITH_AS((void)f5->inv(0), doctest::Contains("DivisionByZero"), error);
}

TEST_CASE("context mismatch") {
  auto f5 = make_prime_field(5);
  auto f7 = make_prime_field(7);
  FieldElement a{2, *f5}, b{3, *f7};
  CHECK_THROWS_WITH_AS((void)(a + b), doctest::Contains("CtxMismatch"), error);
}

TEST_CASE("inverses across whole small fields") {
  for (auto [p, k] : {std::pair{2u, 3u}, {3u, 2u}, {5u, 2u}, {7u, 1u}}) {
    auto ctx = make_extension(p, k);
    for (std::uint32_t a = 1; a < ctx->order(); ++a)
      CHECK(ctx->mul(a, ctx->inv(a)) == 1);
  }
}

TEST_CASE("frobenius additivity by enumeration") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t k = 1; k <= 3; ++k) {
      auto ctx = make_extension(p, k);
      for (std::uint32_t a = 0; a < ctx->order(); ++a)
        for (std::uint32_t b = 0; b < ctx->order(); ++b)
          CHECK(ctx->pow(ctx->add(a, b), p) == ctx->add(ctx->pow(a, p), ctx->pow(b, p)));
    }
  }
}

TEST_CASE("multiplicative order divides group order") {
  std::mt19937 rng(7);
  for (auto [p, k] : {std::pair{2u, 3u}, {3u, 3u}, {5u, 2u}}) {
    auto ctx = make_extension(p, k);
    std::uniform_int_distribution<std::uint32_t> pick(1, std::uint32_t(ctx->order() - 1));
    for (int trial = 0; trial < 20; ++trial)
      CHECK(ctx->pow(pick(rng), ctx->order() - 1) == 1);
  }
}

TEST_CASE("element codes round-trip through coefficients") {
  auto f9 = make_extension(3, 2);
  for (std::uint32_t a = 0; a < 9; ++a) CHECK(f9->from_coeffs(f9->coeffs_of(a)) == a);
}
