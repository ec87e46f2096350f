#include "doctest.h"

#include "ellhk/curves.hpp"
#include "ellhk/formulas.hpp"

using namespace ellhk;

TEST_CASE("pers matches the ceiling defect") {
  SummandData cubic{2, -9};
  for (std::uint64_t q : {1, 3, 5, 7, 9, 25, 49}) CHECK(pers(q, cubic, 3) == Rational(1, 2));
  SummandData even{2, -12};
  CHECK(pers(2, even, 3) == Rational(0));
  SummandData ci{3, -16};
  CHECK(pers(25, ci, 4) == Rational(2, 3));  // q = 1 mod 3
  CHECK(pers(5, ci, 4) == Rational(1, 3));

  // defect identity ceil(q nu) = q nu + pers(q), swept
  for (const auto& [s, delta] : {std::pair{SummandData{2, -9}, std::int64_t(3)},
                                 {SummandData{3, -16}, std::int64_t(4)},
                                 {SummandData{1, -7}, std::int64_t(2)},
                                 {SummandData{4, -25}, std::int64_t(5)}}) {
    for (std::uint64_t q = 1; q <= 50; ++q) {
      Rational qnu = Rational(BigInt(q)) * s.nu(delta);
      BigInt ceil = (numerator(qnu) + denominator(qnu) - 1) / denominator(qnu);
      CHECK(Rational(ceil) - qnu == pers(q, s, delta));
      CHECK(pers(q, s, delta) >= Rational(0));
      CHECK(pers(q, s, delta) < Rational(1));
    }
  }
}

TEST_CASE("general closed form on the quoted decompositions") {
  H1Policy auto_zero = AutoZeroPolicy{};
  auto plane = hk_general(3, {1, 1, 1}, {SummandData{2, -9}}, auto_zero, 5);
  CHECK(plane.e_hk == Rational(9, 4));
  CHECK(plane.phi_int == 55);

  auto ci = hk_general(4, {1, 1, 1, 1}, {SummandData{3, -16}}, auto_zero, 5);
  CHECK(ci.e_hk == Rational(8, 3));
  CHECK(ci.phi_int == 65);

  auto quintic = hk_general(5, {1, 1, 1, 1, 1}, {SummandData{4, -25}}, auto_zero, 3);
  CHECK(quintic.e_hk == Rational(25, 8));
  CHECK(quintic.phi_int == 26);
}

TEST_CASE("decomposition consistency is enforced") {
  H1Policy auto_zero = AutoZeroPolicy{};
  CHECK_THROWS_WITH_AS(
      (void)hk_general(3, {1, 1, 1}, {SummandData{3, -9}}, auto_zero, 5),
      doctest::Contains("DecompositionInconsistent"), error);
  CHECK_THROWS_WITH_AS(
      (void)hk_general(3, {1, 1, 1}, {SummandData{2, -8}}, auto_zero, 5),
      doctest::Contains("DecompositionInconsistent"), error);
}

TEST_CASE("auto-zero policy refuses integral twists") {
  // two line summands of integral slope: nu = 1 is integral at every q
  H1Policy auto_zero = AutoZeroPolicy{};
  CHECK_THROWS_WITH_AS(
      (void)hk_general(3, {1, 1, 1}, {SummandData{1, -3}, SummandData{1, -6}}, auto_zero, 5),
      doctest::Contains("H1Unresolved"), error);
  ConstantPolicy constants{{1, 0}};
  auto value = hk_general(3, {1, 1, 1}, {SummandData{1, -3}, SummandData{1, -6}},
                          H1Policy{constants}, 5);
  CHECK(value.phi == value.e_hk * 25 + value.gamma);
}

TEST_CASE("semistable specialization") {
  H1Policy auto_zero = AutoZeroPolicy{};
  CHECK(hk_semistable(3, {1, 1, 1}, auto_zero, 7).phi_int == 109);
  CHECK(hk_semistable(3, {1, 1, 1}, auto_zero, 1).phi_int == 1);
  CHECK(hk_semistable(4, {1, 1, 1, 1}, auto_zero, 2).phi_int == 9);
}

TEST_CASE("complete embedding values") {
  CHECK(hk_complete_embedding(2, 25, 5, std::nullopt).phi_int == 1405);
  CHECK(hk_complete_embedding(3, 5, 5, std::nullopt).phi_int == 65);
  CHECK(hk_complete_embedding(4, 3, 3, std::nullopt).phi_int == 26);
  CHECK(hk_complete_embedding(2, 4, 2, 2).phi_int == 36);  // Hasse 0
  CHECK(hk_complete_embedding(2, 4, 2, 1).phi_int == 35);  // Hasse 1
  for (std::int64_t n : {2, 3, 4})
    CHECK(hk_complete_embedding(n, 1, 5, std::nullopt).phi_int == 1);
  CHECK_THROWS_WITH_AS((void)hk_complete_embedding(2, 2, 2, std::nullopt),
                       doctest::Contains("H1Unresolved"), error);
  CHECK_THROWS_WITH_AS((void)hk_complete_embedding(2, 6, 5, std::nullopt),
                       doctest::Contains("NotPPower"), error);
}

TEST_CASE("space curve cases") {
  H1Policy auto_zero = AutoZeroPolicy{};
  auto ind = hk_space_curve(5, IndecomposableCase{-20}, 5, 5, auto_zero);
  CHECK(ind.phi_int == 82);
  CHECK(ind.e_hk == Rational(10, 3));

  auto delta6 = hk_space_curve(6, IndecomposableCase{-24}, 5, 5, auto_zero);
  CHECK(delta6.phi_int == 99);

  auto lines = hk_space_curve(4, ThreeLinesCase{{-6, -5, -5}}, 5, 5, auto_zero);
  CHECK(lines.e_hk == Rational(11, 4));

  auto split = hk_space_curve(5, RankTwoPlusLineCase{-13, -7}, 3, 3, auto_zero);
  CHECK(split.phi == split.e_hk * 9 + split.gamma);

  // semistable splittings keep e_hk = 2 delta / 3
  auto even = hk_space_curve(6, ThreeLinesCase{{-8, -8, -8}}, 5, 5, auto_zero);
  CHECK(even.e_hk == Rational(4));
  CHECK_THROWS_WITH_AS((void)hk_space_curve(5, IndecomposableCase{-19}, 5, 5, auto_zero),
                       doctest::Contains("DecompositionInconsistent"), error);
}

TEST_CASE("space curve case (i) in characteristic 3 needs the h1 term") {
  H1Policy auto_zero = AutoZeroPolicy{};
  CHECK_THROWS_WITH_AS((void)hk_space_curve(5, IndecomposableCase{-20}, 3, 3, auto_zero),
                       doctest::Contains("H1Unresolved"), error);
  ConstantPolicy with_h1{{2}};
  auto value = hk_space_curve(5, IndecomposableCase{-20}, 3, 3, H1Policy{with_h1});
  CHECK(value.phi == Rational(10, 3) * 9 + value.gamma);
  // q = 1 evaluates through the pers term even for p = 3
  auto q1 = hk_space_curve(5, IndecomposableCase{-20}, 1, 3, auto_zero);
  CHECK(q1.phi_int == 2);  // delta - 3
}

TEST_CASE("specializations agree with the general theorem across a window") {
  // the evaluators assert the identity internally; sweep them
  H1Policy auto_zero = AutoZeroPolicy{};
  for (std::uint64_t p : {2, 3, 5}) {
    std::uint64_t q = 1;
    for (int e = 0; e <= 6; ++e, q *= p) {
      for (auto delta : {3, 4}) {
        std::vector<std::int64_t> d_list(std::size_t(delta), 1);
        bool integral = (q * std::uint64_t(delta)) % std::uint64_t(delta - 1) == 0;
        H1Policy policy = integral ? H1Policy{ConstantPolicy{{1}}} : auto_zero;
        auto direct = hk_semistable(delta, d_list, policy, q);
        auto general =
            hk_general(delta, d_list, {SummandData{delta - 1, -delta * delta}}, policy, q);
        CHECK(direct.phi == general.phi);
        CHECK(direct.gamma == general.gamma);
      }
      for (std::int64_t n : {2, 3, 4}) {
        bool needs_h1 = q % std::uint64_t(n) == 0;
        auto complete = hk_complete_embedding(n, q, p, needs_h1 ? std::optional<std::int64_t>(1)
                                                                : std::nullopt);
        ConstantPolicy constant{{needs_h1 ? 1 : 0}};
        auto general =
            hk_general(n + 1, std::vector<std::int64_t>(std::size_t(n) + 1, 1),
                       {SummandData{n, -(n + 1) * (n + 1)}}, H1Policy{constant}, q);
        CHECK(complete.phi == general.phi);
      }
      for (auto delta : {4, 5, 6}) {
        H1Policy policy = p == 3 ? H1Policy{ConstantPolicy{{1}}} : auto_zero;
        auto space = hk_space_curve(delta, IndecomposableCase{-4 * delta}, q, p, policy);
        auto general = hk_general(delta, {1, 1, 1, 1}, {SummandData{3, -4 * delta}}, policy, q);
        CHECK(space.phi == general.phi);
      }
    }
  }
}

TEST_CASE("lower bound 2 delta / 3 with equality only at equal slopes") {
  CHECK(ehk_lower_bound_check(5, {SummandData{3, -20}}));
  CHECK(ehk_lower_bound_check(3, {SummandData{1, -4}, SummandData{1, -4}, SummandData{1, -4}}));
  CHECK_FALSE(
      ehk_lower_bound_check(3, {SummandData{1, -6}, SummandData{1, -3}, SummandData{1, -3}}));
  CHECK_THROWS_WITH_AS(
      (void)ehk_lower_bound_check(3, {SummandData{1, -6}, SummandData{1, -6}}),
      doctest::Contains("DecompositionInconsistent"), error);
}

TEST_CASE("gamma cycles close within twelve Frobenius steps") {
  struct Case {
    std::int64_t delta;
    std::vector<std::int64_t> d_list;
    std::vector<SummandData> summands;
  };
  std::vector<Case> cases{
      {3, {1, 1, 1}, {SummandData{2, -9}}},
      {4, {1, 1, 1, 1}, {SummandData{3, -16}}},
      {5, {1, 1, 1, 1, 1}, {SummandData{4, -25}}},
      {5, {1, 1, 1, 1}, {SummandData{3, -20}}},
      {5, {1, 1, 1, 1}, {SummandData{2, -13}, SummandData{1, -7}}},
      {4, {1, 1, 1, 1}, {SummandData{1, -6}, SummandData{1, -5}, SummandData{1, -5}}},
  };
  for (const auto& c : cases) {
    for (std::uint64_t p : {2, 3, 5, 7}) {
      std::vector<std::int64_t> h1s(c.summands.size(), 1);
      auto form = closed_form_general(c.delta, c.d_list, c.summands,
                                      H1Policy{ConstantPolicy{h1s}});
      auto cycle = gamma_cycle(form, p, 12);
      CHECK(cycle.stabilized);
      CHECK(cycle.onset_e <= 12);
    }
  }
}
