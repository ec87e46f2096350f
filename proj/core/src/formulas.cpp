#include "ellhk/formulas.hpp"

#include <algorithm>
#include <numeric>

namespace ellhk {

Rational pers(std::uint64_t q, const SummandData& s, std::int64_t delta) {
  check(delta >= 1, errc::invalid_input, "delta must be >= 1");
  check(s.rank >= 1, errc::invalid_input, "summand rank must be >= 1");
  BigInt modulus = BigInt(s.rank) * delta;
  BigInt residue = pos_mod_big(BigInt(q) * s.degree, modulus);
  return Rational(residue, modulus);
}

namespace {

bool integral_twist(std::uint64_t q, const SummandData& s, std::int64_t delta) {
  return (BigInt(q) * s.degree) % (BigInt(s.rank) * delta) == 0;
}

std::int64_t resolve_h1(const H1Policy& policy, const std::vector<SummandData>& summands,
                        std::size_t j, std::uint64_t q, std::int64_t delta) {
  const SummandData& s = summands[j];
  if (!integral_twist(q, s, delta)) return 0;
  if (std::holds_alternative<AutoZeroPolicy>(policy))
    fail(errc::h1_unresolved,
         "summand " + std::to_string(j) + " (rank " + std::to_string(s.rank) + ", degree " +
             std::to_string(s.degree) + ") has integral q*nu at q = " + std::to_string(q) +
             "; supply its h1 or use an oracle-backed policy");
  if (const auto* constant = std::get_if<ConstantPolicy>(&policy)) {
    check(constant->per_summand.size() == summands.size(), errc::invalid_input,
          "constant h1 policy must list one value per summand");
    std::int64_t value = constant->per_summand[j];
    check(value >= 0, errc::invalid_input, "h1 values must be >= 0");
    return value;
  }
  const auto& oracle = std::get<OracleBackedPolicy>(policy);
  check(summands.size() == 1, errc::h1_unresolved,
        "oracle-backed h1 is only defined for a single indecomposable summand");
  Rational twist = Rational(BigInt(q)) * s.nu(delta);
  int m = int(to_integer(twist, "q*nu"));
  SyzygyDims dims = syzygy_dims(FrobeniusQuery{oracle.pres, oracle.ideal, q}, m);
  return dims.h1;
}

HKValue finish(Rational e_hk, Rational gamma, std::uint64_t q, std::string provenance) {
  HKValue out;
  out.e_hk = std::move(e_hk);
  out.gamma = std::move(gamma);
  out.phi = out.e_hk * Rational(BigInt(q) * BigInt(q)) + out.gamma;
  out.phi_int = to_integer(out.phi, "phi(" + std::to_string(q) + ")");
  out.provenance = std::move(provenance);
  return out;
}

Rational ehk_of(std::int64_t delta, const std::vector<std::int64_t>& d_list,
                const std::vector<SummandData>& summands) {
  Rational e_hk(0);
  for (const auto& s : summands)
    e_hk += Rational(BigInt(s.degree) * s.degree, BigInt(s.rank));
  std::int64_t sum_d2 = 0;
  for (auto d : d_list) sum_d2 += d * d;
  e_hk -= Rational(BigInt(delta) * delta * sum_d2);
  e_hk /= Rational(BigInt(2) * delta);
  return e_hk;
}

void check_decomposition(std::int64_t delta, const std::vector<std::int64_t>& d_list,
                         const std::vector<SummandData>& summands) {
  check(delta >= 1, errc::invalid_input, "delta must be >= 1");
  check(d_list.size() >= 2, errc::invalid_input, "need at least 2 ideal generators");
  for (auto d : d_list) check(d >= 1, errc::invalid_input, "generator degrees must be >= 1");
  check(!summands.empty(), errc::decomposition_inconsistent, "empty decomposition");
  std::int64_t total_rank = 0, total_degree = 0, sum_d = 0;
  for (const auto& s : summands) {
    check(s.rank >= 1, errc::decomposition_inconsistent, "summand with rank < 1");
    total_rank += s.rank;
    total_degree += s.degree;
  }
  for (auto d : d_list) sum_d += d;
  check(total_rank == std::int64_t(d_list.size()) - 1, errc::decomposition_inconsistent,
        "total rank " + std::to_string(total_rank) + " != n-1 = " +
            std::to_string(d_list.size() - 1));
  check(total_degree == -delta * sum_d, errc::decomposition_inconsistent,
        "total degree " + std::to_string(total_degree) + " != -delta*sum(d_i) = " +
            std::to_string(-delta * sum_d));
}

}  // namespace

HKValue hk_general(std::int64_t delta, const std::vector<std::int64_t>& d_list,
                   const std::vector<SummandData>& summands, const H1Policy& policy,
                   std::uint64_t q) {
  check_decomposition(delta, d_list, summands);
  std::int64_t n = std::int64_t(d_list.size());
  Rational e_hk = ehk_of(delta, d_list, summands);

  Rational gamma(0);
  for (std::size_t j = 0; j < summands.size(); ++j) {
    Rational pj = pers(q, summands[j], delta);
    gamma += Rational(BigInt(summands[j].rank) * delta, BigInt(2)) * pj * (Rational(1) - pj);
    gamma += Rational(BigInt(resolve_h1(policy, summands, j, q, delta)));
  }
  gamma -= Rational(BigInt(n - 1));

  return finish(std::move(e_hk), std::move(gamma), q, "general");
}

HKValue hk_semistable(std::int64_t delta, const std::vector<std::int64_t>& d_list,
                      const H1Policy& policy, std::uint64_t q) {
  check(d_list.size() >= 2, errc::invalid_input, "need at least 2 ideal generators");
  std::int64_t n = std::int64_t(d_list.size());
  std::int64_t sum_d = std::accumulate(d_list.begin(), d_list.end(), std::int64_t(0));
  std::int64_t sum_d2 = 0;
  for (auto d : d_list) sum_d2 += d * d;
  std::vector<SummandData> decomposition{SummandData{n - 1, -delta * sum_d}};

  // e_hk = delta/2 ((sum d_i)^2/(n-1) - sum d_i^2)
  Rational e_hk = Rational(BigInt(delta), BigInt(2)) *
                  (Rational(BigInt(sum_d) * sum_d, BigInt(n - 1)) - Rational(BigInt(sum_d2)));
  // pers = (-q*sum d_i mod (n-1)) / (n-1); the pers term carries the full
  // rank factor (n-1)*delta/2 of the single summand
  Rational p_val = Rational(pos_mod_big(BigInt(q) * (-sum_d), BigInt(n - 1)), BigInt(n - 1));
  Rational gamma = Rational(BigInt(n - 1) * delta, BigInt(2)) * p_val * (Rational(1) - p_val);
  gamma += Rational(BigInt(resolve_h1(policy, decomposition, 0, q, delta)));
  gamma -= Rational(BigInt(n - 1));
  HKValue out = finish(std::move(e_hk), std::move(gamma), q, "semistable");

  HKValue general = hk_general(delta, d_list, decomposition, policy, q);
  check(general.phi == out.phi && general.e_hk == out.e_hk, errc::internal,
        "semistable form disagrees with the general theorem");
  return out;
}

HKValue hk_complete_embedding(std::int64_t n_proj, std::uint64_t q, std::uint64_t p,
                              std::optional<std::int64_t> h1_value) {
  check(n_proj >= 2, errc::invalid_input, "need N >= 2");
  check(is_prime(p), errc::not_prime, std::to_string(p) + " is not prime");
  std::uint64_t r = q;
  check(r >= 1, errc::not_p_power, "q must be >= 1");
  while (r > 1) {
    check(r % p == 0, errc::not_p_power,
          std::to_string(q) + " is not a power of " + std::to_string(p));
    r /= p;
  }

  Rational e_hk(BigInt(n_proj + 1) * (n_proj + 1), BigInt(2) * n_proj);
  std::int64_t res = pos_mod(-std::int64_t(q % std::uint64_t(n_proj)), n_proj);
  Rational gamma = Rational(BigInt(n_proj + 1), BigInt(2)) * Rational(BigInt(res)) *
                   (Rational(1) - Rational(BigInt(res), BigInt(n_proj)));
  std::int64_t h1 = 0;
  if (q % std::uint64_t(n_proj) == 0) {  // q*nu integral iff N | q, i.e. N a p-power dividing q
    check(h1_value.has_value(), errc::h1_unresolved,
          "N = " + std::to_string(n_proj) + " divides q = " + std::to_string(q) +
              ": the h1 term h1(Omega(ceil(q(N+1)/N))) must be supplied");
    h1 = *h1_value;
    check(h1 >= 0, errc::invalid_input, "h1 must be >= 0");
  }
  gamma += Rational(BigInt(h1));
  gamma -= Rational(BigInt(n_proj));
  HKValue out = finish(std::move(e_hk), std::move(gamma), q, "complete-embedding");

  // identity with the general theorem on the semistable decomposition
  // (rank N, degree -(N+1)^2, delta = N+1, maximal ideal)
  std::vector<std::int64_t> d_list(std::size_t(n_proj) + 1, 1);
  std::vector<SummandData> decomposition{SummandData{n_proj, -(n_proj + 1) * (n_proj + 1)}};
  ConstantPolicy constant{{h1}};
  HKValue general = hk_general(n_proj + 1, d_list, decomposition, H1Policy{constant}, q);
  check(general.phi == out.phi && general.e_hk == out.e_hk, errc::internal,
        "complete-embedding form disagrees with the general theorem");
  return out;
}

HKValue hk_space_curve(std::int64_t delta, const SplittingCase& split, std::uint64_t q,
                       std::uint64_t p, const H1Policy& policy) {
  check(delta >= 4, errc::invalid_input, "space curves have degree >= 4");
  std::vector<std::int64_t> d_list{1, 1, 1, 1};

  std::vector<SummandData> decomposition;
  HKValue out;
  if (const auto* c = std::get_if<IndecomposableCase>(&split)) {
    check(c->degree == -4 * delta, errc::decomposition_inconsistent,
          "indecomposable case needs degree -4*delta");
    decomposition = {SummandData{3, c->degree}};
    Rational e_hk(BigInt(2) * delta, BigInt(3));
    Rational gamma(0);
    if (p != 3) {
      gamma = Rational(BigInt(delta), BigInt(3)) - Rational(3);
    } else if (q > 1) {
      // pers vanishes for q = 3^e; only the h1 term survives
      gamma = Rational(BigInt(resolve_h1(policy, decomposition, 0, q, delta))) - Rational(3);
    } else {
      Rational pj = pers(q, decomposition[0], delta);
      gamma = Rational(BigInt(3) * delta, BigInt(2)) * pj * (Rational(1) - pj) +
              Rational(BigInt(resolve_h1(policy, decomposition, 0, q, delta))) - Rational(3);
    }
    out = finish(std::move(e_hk), std::move(gamma), q, "space-curve(i)");
  } else if (const auto* c2 = std::get_if<RankTwoPlusLineCase>(&split)) {
    check(c2->rank2_degree + c2->line_degree == -4 * delta, errc::decomposition_inconsistent,
          "rank-2 + line degrees must sum to -4*delta");
    decomposition = {SummandData{2, c2->rank2_degree}, SummandData{1, c2->line_degree}};
    Rational e_hk = (Rational(BigInt(c2->rank2_degree) * c2->rank2_degree, BigInt(2)) +
                     Rational(BigInt(c2->line_degree) * c2->line_degree) -
                     Rational(BigInt(4) * delta * delta)) /
                    Rational(BigInt(2) * delta);
    Rational p1 = pers(q, decomposition[0], delta);
    Rational p2 = pers(q, decomposition[1], delta);
    Rational gamma = Rational(BigInt(delta)) * p1 * (Rational(1) - p1) +
                     Rational(BigInt(delta), BigInt(2)) * p2 * (Rational(1) - p2);
    gamma += Rational(BigInt(resolve_h1(policy, decomposition, 0, q, delta)));
    gamma += Rational(BigInt(resolve_h1(policy, decomposition, 1, q, delta)));
    gamma -= Rational(3);
    out = finish(std::move(e_hk), std::move(gamma), q, "space-curve(ii)");
  } else {
    const auto& c3 = std::get<ThreeLinesCase>(split);
    std::int64_t sum = c3.degrees[0] + c3.degrees[1] + c3.degrees[2];
    check(sum == -4 * delta, errc::decomposition_inconsistent,
          "line degrees must sum to -4*delta");
    decomposition = {SummandData{1, c3.degrees[0]}, SummandData{1, c3.degrees[1]},
                     SummandData{1, c3.degrees[2]}};
    Rational num(0);
    for (int j = 0; j < 3; ++j) num += Rational(BigInt(c3.degrees[j]) * c3.degrees[j]);
    num -= Rational(BigInt(4) * delta * delta);
    Rational e_hk = num / Rational(BigInt(2) * delta);
    Rational gamma(0);
    for (std::size_t j = 0; j < 3; ++j) {
      Rational pj = pers(q, decomposition[j], delta);
      gamma += Rational(BigInt(delta), BigInt(2)) * pj * (Rational(1) - pj);
      gamma += Rational(BigInt(resolve_h1(policy, decomposition, j, q, delta)));
    }
    gamma -= Rational(3);
    out = finish(std::move(e_hk), std::move(gamma), q, "space-curve(iii)");
  }

  HKValue general = hk_general(delta, d_list, decomposition, policy, q);
  check(general.phi == out.phi && general.e_hk == out.e_hk, errc::internal,
        "space-curve form disagrees with the general theorem");
  return out;
}

bool ehk_lower_bound_check(std::int64_t delta, const std::vector<SummandData>& summands) {
  check(delta >= 1, errc::invalid_input, "delta must be >= 1");
  std::int64_t total_rank = 0, total_degree = 0;
  for (const auto& s : summands) {
    check(s.rank >= 1, errc::decomposition_inconsistent, "summand with rank < 1");
    total_rank += s.rank;
    total_degree += s.degree;
  }
  check(total_rank == 3, errc::decomposition_inconsistent, "total rank must be 3");
  check(total_degree == -4 * delta, errc::decomposition_inconsistent,
        "total degree must be -4*delta");

  Rational e_hk(0);
  for (const auto& s : summands) e_hk += Rational(BigInt(s.degree) * s.degree, BigInt(s.rank));
  e_hk -= Rational(BigInt(4) * delta * delta);
  e_hk /= Rational(BigInt(2) * delta);

  bool equal_slopes = true;
  for (const auto& s : summands)
    if (BigInt(s.degree) * summands[0].rank != BigInt(summands[0].degree) * s.rank)
      equal_slopes = false;

  Rational bound(BigInt(2) * delta, BigInt(3));
  if (equal_slopes)
    check(e_hk == bound, errc::internal, "equal slopes without equality in the bound");
  else
    check(e_hk > bound, errc::internal, "unequal slopes without strict inequality");
  return equal_slopes;
}

HKClosedForm closed_form_general(std::int64_t delta, std::vector<std::int64_t> d_list,
                                 std::vector<SummandData> summands, H1Policy policy) {
  check_decomposition(delta, d_list, summands);
  HKClosedForm form;
  form.e_hk = ehk_of(delta, d_list, summands);
  form.provenance = "general";
  form.gamma_of_q = [delta, d_list = std::move(d_list), summands = std::move(summands),
                     policy = std::move(policy)](std::uint64_t q) {
    return hk_general(delta, d_list, summands, policy, q).gamma;
  };
  return form;
}

PeriodicityDiagnosis gamma_cycle(const HKClosedForm& form, std::uint64_t p, int e_max) {
  std::vector<Rational> values;
  std::uint64_t q = 1;
  for (int e = 0; e <= e_max; ++e) {
    values.push_back(form.gamma_of_q(q));
    q *= p;
  }
  return detect_cycle(values, 0);
}

}  // namespace ellhk
