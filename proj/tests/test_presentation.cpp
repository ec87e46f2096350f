#include "doctest.h"

#include <algorithm>
#include <random>

#include "ellhk/curves.hpp"
#include "ellhk/presentation.hpp"

using namespace ellhk;

namespace {

PresentationPtr make_pres(std::vector<HomogeneousPoly> gens, std::optional<int> delta,
                          ReductionBackend backend = ReductionBackend::automatic) {
  auto field = gens.front().field_ptr();
  std::size_t n = gens.front().num_vars();
  return std::make_shared<GradedQuotientPresentation>(field, n, std::move(gens), delta, backend);
}

}  // namespace

TEST_CASE("graded pieces of a plane cubic") {
  auto f5 = make_prime_field(5);
  auto pres = make_pres({hesse_cubic(f5, 1)}, 3);
  CHECK(pres->graded_dim(0) == 1);
  // degree 2: all C(4,2) = 6 monomials survive (no relations yet)
  CHECK(pres->graded_dim(2) == 6);
  CHECK(binomial(4, 2) == 6);
  for (int m = 1; m <= 10; ++m) CHECK(pres->graded_dim(m) == 3 * m);
}

TEST_CASE("graded pieces of the (2,2) complete intersection") {
  const auto& ci = resolve_curve("ci-quartic:p5");
  // degree 3: C(6,3) = 20 monomials minus 2*dim S_1 = 8 independent multiples
  CHECK(binomial(6, 3) - 2 * 4 == 12);
  CHECK(ci.presentation->graded_dim(3) == 12);
  for (int m = 1; m <= 12; ++m) CHECK(ci.presentation->graded_dim(m) == 4 * m);
}

TEST_CASE("normal forms modulo the cubic") {
  auto f2 = make_prime_field(2);
  auto fermat = hesse_cubic(f2, 0);
  auto pres = make_pres({fermat}, 3);
  // the curve equation reduces to zero
  auto nf = pres->normal_form(fermat);
  CHECK(std::all_of(nf.begin(), nf.end(), [](std::uint32_t c) { return c == 0; }));
  // zero polynomial reduces to zero
  auto zero_nf = pres->normal_form(HomogeneousPoly(f2, 3, 3));
  CHECK(std::all_of(zero_nf.begin(), zero_nf.end(), [](std::uint32_t c) { return c == 0; }));
  // X^3 = -(Y^3 + Z^3) = Y^3 + Z^3 in characteristic 2
  auto x3 = parse_poly("X^3", f2, 3);
  auto basis = pres->graded_piece(3);
  auto coords = pres->normal_form(x3);
  auto expect_one_at = [&](const char* mono_text) {
    auto target = parse_poly(mono_text, f2, 3).leading_monomial();
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == target) return coords[i] == 1;
    return false;
  };
  CHECK(expect_one_at("Y^3"));
  CHECK(expect_one_at("Z^3"));
  std::int64_t nonzeros = std::count_if(coords.begin(), coords.end(),
                                        [](std::uint32_t c) { return c != 0; });
  CHECK(nonzeros == 2);
}

TEST_CASE("multiples of the ideal generators reduce to zero") {
  for (const char* name : {"hesse:p5:l1", "ci-quartic:p2", "quintic:p3"}) {
    auto spec = resolve_curve(name);
    for (const auto& g : spec.gens)
      for (const auto& mu : monomials_of_degree(spec.num_vars, 2)) {
        auto nf = spec.presentation->normal_form(
            multiply(g, HomogeneousPoly::monomial_poly(spec.field, spec.num_vars, mu, 1)));
        CHECK(std::all_of(nf.begin(), nf.end(), [](std::uint32_t c) { return c == 0; }));
      }
  }
}

TEST_CASE("image rank and kernel dimensions on char-2 cubics") {
  auto f2 = make_prime_field(2);
  auto fermat_pres = make_pres({hesse_cubic(f2, 0)}, 3);
  auto vars = maximal_ideal_gens(f2, 3);

  // linear forms are independent on R_1
  MapDims linear = map_dims(GradedMap{fermat_pres, vars, 1});
  CHECK(linear.rank == 3);
  CHECK(linear.kernel_dim == 0);

  // (X^2, Y^2, Z^2): R_1^3 -> R_3 has the Fermat syzygy (X,Y,Z)
  std::vector<HomogeneousPoly> squares;
  for (const auto& v : vars) squares.push_back(frobenius_power(v, 2));
  MapDims fermat_sq = map_dims(GradedMap{fermat_pres, squares, 3});
  CHECK(fermat_sq.kernel_dim == 1);

  auto f8 = make_extension(2, 3);
  auto hesse_pres = make_pres({hesse_cubic(f8, f8->generator())}, 3);
  std::vector<HomogeneousPoly> squares8;
  for (const auto& v : maximal_ideal_gens(f8, 3)) squares8.push_back(frobenius_power(v, 2));
  MapDims hesse_sq = map_dims(GradedMap{hesse_pres, squares8, 3});
  CHECK(hesse_sq.kernel_dim == 0);
}

TEST_CASE("rank plus kernel equals source dimension on random maps") {
  std::mt19937 rng(11);
  auto f5 = make_prime_field(5);
  auto pres = make_pres({hesse_cubic(f5, 1)}, 3);
  auto monos = monomials_of_degree(3, 2);
  std::uniform_int_distribution<std::uint32_t> coeff(0, 4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<HomogeneousPoly> mults;
    for (int i = 0; i < 3; ++i) {
      std::vector<HomogeneousPoly::Term> terms;
      for (const auto& m : monos) {
        auto c = coeff(rng);
        if (c) terms.emplace_back(m, c);
      }
      if (terms.empty()) terms.emplace_back(monos[0], 1);
      mults.push_back(HomogeneousPoly::from_terms(f5, 3, terms));
    }
    MapDims dims = map_dims(GradedMap{pres, mults, 5});
    CHECK(dims.source_dim == 3 * pres->graded_dim(3));
    CHECK(dims.rank + dims.kernel_dim == dims.source_dim);
    CHECK(dims.rank <= pres->graded_dim(5));
  }
}

TEST_CASE("hilbert mismatch is a hard error") {
  auto f5 = make_prime_field(5);
  auto bad = std::make_shared<GradedQuotientPresentation>(
      f5, 3, std::vector<HomogeneousPoly>{hesse_cubic(f5, 1)}, 4);
  CHECK_THROWS_WITH_AS((void)bad->graded_dim(1), doctest::Contains("HilbertMismatch"), error);
}

TEST_CASE("division and echelon backends agree") {
  auto f5 = make_prime_field(5);
  const auto& ci = resolve_curve("ci-quartic:p5");
  auto division = ci.presentation;
  CHECK(division->division_certified());
  auto echelon = make_pres(ci.gens, 4, ReductionBackend::echelon);
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::uint32_t> coeff(0, 4);
  for (int m = 0; m <= 7; ++m) {
    auto basis_d = division->graded_piece(m);
    auto basis_e = echelon->graded_piece(m);
    REQUIRE(basis_d.size() == basis_e.size());
    for (std::size_t i = 0; i < basis_d.size(); ++i) CHECK(basis_d[i] == basis_e[i]);
    auto monos = monomials_of_degree(4, m);
    std::vector<HomogeneousPoly::Term> terms;
    for (const auto& mono : monos) {
      auto c = coeff(rng);
      if (c) terms.emplace_back(mono, c);
    }
    if (terms.empty()) continue;
    auto f = HomogeneousPoly::from_terms(f5, 4, terms);
    CHECK(division->normal_form(f) == echelon->normal_form(f));
  }
}

TEST_CASE("echelon data is independent of generator order and scaling") {
  const auto& ci = resolve_curve("ci-quartic:p2");
  auto field = ci.field;
  std::vector<HomogeneousPoly> reversed{ci.gens[1], ci.gens[0]};
  auto a = make_pres(ci.gens, 4, ReductionBackend::echelon);
  auto b = make_pres(reversed, 4, ReductionBackend::echelon);
  for (int m = 0; m <= 6; ++m) {
    auto basis_a = a->graded_piece(m);
    auto basis_b = b->graded_piece(m);
    REQUIRE(basis_a.size() == basis_b.size());
    for (std::size_t i = 0; i < basis_a.size(); ++i) CHECK(basis_a[i] == basis_b[i]);
  }
  auto f = multiply(ci.gens[0], ci.gens[1]);
  CHECK(a->normal_form(f) == b->normal_form(f));
}

TEST_CASE("smoothness verdicts on the Hesse family") {
  auto f2 = make_prime_field(2);
  CHECK(is_projectively_smooth({hesse_cubic(f2, 0)}));       // Fermat
  CHECK_FALSE(is_projectively_smooth({hesse_cubic(f2, 1)}));  // lambda^3 = 1
  auto f8 = make_extension(2, 3);
  CHECK(is_projectively_smooth({hesse_cubic(f8, f8->generator())}));
  auto f7 = make_prime_field(7);
  CHECK_FALSE(is_projectively_smooth({hesse_cubic(f7, 1)}));  // 1 = -27 mod 7
  CHECK(is_projectively_smooth({hesse_cubic(f7, 3)}));
}

TEST_CASE("ideal generators of degree zero are rejected") {
  auto f5 = make_prime_field(5);
  auto unit = parse_poly("2", f5, 3);
  CHECK_THROWS_AS((void)make_pres({unit}, std::nullopt), error);
}
