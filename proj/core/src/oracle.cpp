#include "ellhk/oracle.hpp"

#include <algorithm>
#include <future>

namespace ellhk {

namespace {

struct PreparedQuery {
  std::vector<HomogeneousPoly> powers;  // f_i^q
  std::vector<int> degrees;             // d_i
  std::int64_t sum_d = 0;
  int n = 0;
};

PreparedQuery prepare(const FrobeniusQuery& query) {
  check(query.pres != nullptr, errc::invalid_input, "query without presentation");
  check(!query.ideal.empty(), errc::invalid_input, "query with empty ideal");
  check(query.pres->standard_graded(), errc::not_standard_graded,
        "colength oracle requires a standard-graded presentation");
  std::uint64_t p = query.pres->field().characteristic();
  std::uint64_t r = query.q;
  check(r >= 1, errc::not_p_power, "q must be >= 1");
  while (r > 1) {
    check(r % p == 0, errc::not_p_power,
          std::to_string(query.q) + " is not a power of " + std::to_string(p));
    r /= p;
  }
  PreparedQuery out;
  out.n = int(query.ideal.size());
  for (const auto& f : query.ideal) {
    check(!f.is_zero() && f.degree() >= 1, errc::invalid_input,
          "ideal generators must be nonzero of degree >= 1");
    check(f.field().same(query.pres->field()), errc::ctx_mismatch,
          "ideal generator over a different field");
    out.powers.push_back(frobenius_power(f, query.q));
    out.degrees.push_back(f.degree());
    out.sum_d += f.degree();
  }
  return out;
}

struct DegreeResult {
  std::int64_t colength = 0;
  std::int64_t kernel = 0;
};

DegreeResult colength_at(const FrobeniusQuery& query, const PreparedQuery& prep, int m) {
  const auto& pres = *query.pres;
  MapDims dims = map_dims(GradedMap{query.pres, prep.powers, m});
  std::int64_t dim_rm = pres.graded_dim(m);
  DegreeResult out;
  out.colength = dim_rm - dims.rank;
  out.kernel = dims.kernel_dim;
  // the three-term exact-sequence identity, with the source dimensions
  // recomputed independently of the matrix bookkeeping
  std::int64_t sum_sources = 0;
  for (int d : prep.degrees) sum_sources += pres.graded_dim(m - int(query.q) * d);
  check(sum_sources == dims.source_dim, errc::internal, "source dimension mismatch");
  check(out.colength == dim_rm - sum_sources + out.kernel, errc::internal,
        "exact-sequence identity violated");
  check(out.colength >= 0, errc::internal, "negative colength");
  return out;
}

}  // namespace

ColengthProfile colength(const FrobeniusQuery& query, const OracleOptions& opts) {
  PreparedQuery prep = prepare(query);
  const auto& pres = *query.pres;
  int nvars = int(pres.num_vars());
  check(query.q <= (std::uint64_t(1) << 32), errc::degree_too_large, "q out of range");
  std::int64_t m_max64 = std::int64_t(query.q) * prep.sum_d + (nvars - 1) + 2;
  check(m_max64 <= 40000, errc::degree_too_large,
        "stop bound " + std::to_string(m_max64) + " exceeds the supported degree range");
  int m_max = int(m_max64);

  ColengthProfile profile;
  profile.q = query.q;
  profile.total = 0;

  // bound past which the h1-term of the syzygy bundle is expected to vanish
  // (semistability); violations are reported, not acted on
  std::optional<std::int64_t> h1_zero_bound;
  if (pres.expected_delta() && prep.n >= 2)
    h1_zero_bound = (std::int64_t(query.q) * prep.sum_d + prep.n - 2) / (prep.n - 1) + (prep.n - 1);

  auto inspect = [&](int m, const DegreeResult& r) {
    if (h1_zero_bound && m > *h1_zero_bound) {
      std::int64_t delta = *pres.expected_delta();
      std::int64_t deg_bundle =
          delta * (std::int64_t(m) * (prep.n - 1) - std::int64_t(query.q) * prep.sum_d);
      if (r.kernel - deg_bundle != 0)
        profile.diagnostics.push_back("nonzero h1 at degree " + std::to_string(m) +
                                      " beyond the semistability bound");
    }
  };

  int threads = std::max(1, opts.threads);
  int confirmed = -1;  // degrees left to confirm once a zero was seen; -1 = not yet
  for (int m = 0; m <= m_max + opts.confirm_zero_degrees;) {
    int window = confirmed >= 0 ? 1 : std::max(1, threads);
    std::vector<DegreeResult> results(static_cast<std::size_t>(window));
    if (threads > 1 && window > 1) {
      std::vector<std::future<DegreeResult>> futures;
      for (int i = 0; i < window; ++i)
        futures.push_back(std::async(std::launch::async,
                                     [&, mm = m + i] { return colength_at(query, prep, mm); }));
      for (int i = 0; i < window; ++i) results[std::size_t(i)] = futures[std::size_t(i)].get();
    } else {
      for (int i = 0; i < window; ++i) results[std::size_t(i)] = colength_at(query, prep, m + i);
    }
    for (int i = 0; i < window; ++i, ++m) {
      const auto& r = results[std::size_t(i)];
      inspect(m, r);
      if (confirmed >= 0) {
        check(r.colength == 0, errc::internal,
              "colength became nonzero after the stopping degree");
        if (--confirmed == 0) return profile;
        continue;
      }
      profile.per_degree.emplace_back(m, r.colength);
      profile.total += r.colength;
      if (r.colength == 0) {
        profile.stop_degree = m;
        confirmed = opts.confirm_zero_degrees;
        if (confirmed == 0) return profile;
        continue;
      }
      check(m < m_max, errc::stop_bound_exceeded,
            "colength still positive at the stop bound m = " + std::to_string(m_max) +
                "; the ideal is probably not primary");
    }
  }
  return profile;
}

SyzygyDims syzygy_dims(const FrobeniusQuery& query, int m) {
  PreparedQuery prep = prepare(query);
  check(prep.n >= 2, errc::invalid_input, "syzygy bundle needs at least 2 generators");
  check(m >= 0, errc::invalid_input, "negative degree");
  check(query.pres->expected_delta().has_value(), errc::invalid_input,
        "syzygy_dims needs a presentation with a known curve degree");
  std::int64_t delta = *query.pres->expected_delta();
  MapDims dims = map_dims(GradedMap{query.pres, prep.powers, m});
  SyzygyDims out;
  out.q = query.q;
  out.m = m;
  out.rank = prep.n - 1;
  out.h0 = dims.kernel_dim;
  out.degree_of_bundle =
      delta * (std::int64_t(m) * (prep.n - 1) - std::int64_t(query.q) * prep.sum_d);
  out.h1 = out.h0 - out.degree_of_bundle;
  check(out.h1 >= 0, errc::invalid_input,
        "negative h1: the presentation is not a genus-1 section ring");
  return out;
}

PeriodicityDiagnosis detect_cycle(const std::vector<Rational>& values, int e_min) {
  PeriodicityDiagnosis out;
  int count = int(values.size());
  for (int period = 1; period < count && !out.stabilized; ++period) {
    for (int onset = 0; onset + period < count; ++onset) {
      bool ok = true;
      for (int i = onset; i + period < count; ++i)
        if (values[std::size_t(i)] != values[std::size_t(i + period)]) {
          ok = false;
          break;
        }
      if (ok) {
        out.stabilized = true;
        out.onset_e = e_min + onset;
        out.period = period;
        break;
      }
    }
  }
  return out;
}

GammaSeries gamma_series(PresentationPtr pres, const std::vector<HomogeneousPoly>& ideal,
                         std::uint64_t p, int e_min, int e_max,
                         std::optional<Rational> e_hk, const OracleOptions& opts) {
  check(e_min >= 0 && e_max >= e_min, errc::invalid_input, "bad e range");
  int count = e_max - e_min + 1;
  check(count >= 2, errc::invalid_input, "gamma series needs at least 2 values of e");

  std::vector<std::uint64_t> qs;
  std::vector<BigInt> phis;
  for (int e = e_min; e <= e_max; ++e) {
    std::uint64_t q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    qs.push_back(q);
    phis.push_back(colength(FrobeniusQuery{pres, ideal, q}, opts).total);
  }

  GammaSeries out;
  out.e_min = e_min;
  if (e_hk) {
    out.e_hk = *e_hk;
  } else {
    check(count >= 3, errc::no_multiplicity,
          "fitting the multiplicity needs at least 3 values of e");
    // gamma is eventually periodic, so for the right period T the difference
    // quotient (phi(e+T)-phi(e)) / (q(e+T)^2-q(e)^2) is eventually constant
    std::optional<Rational> fit;
    for (int period = 1; period <= count / 2 && !fit; ++period) {
      for (int onset = 0; onset + 2 * period < count; ++onset) {
        std::optional<Rational> candidate;
        bool ok = true;
        for (int i = onset; i + period < count; ++i) {
          Rational dq2 = Rational(BigInt(qs[std::size_t(i + period)]) * qs[std::size_t(i + period)] -
                                  BigInt(qs[std::size_t(i)]) * qs[std::size_t(i)]);
          Rational quotient = Rational(phis[std::size_t(i + period)] - phis[std::size_t(i)]) / dq2;
          if (!candidate)
            candidate = quotient;
          else if (*candidate != quotient) {
            ok = false;
            break;
          }
        }
        if (ok && candidate) {
          fit = candidate;
          break;
        }
      }
    }
    check(fit.has_value(), errc::no_multiplicity, "no consistent multiplicity fit in the window");
    out.e_hk = *fit;
    out.fitted = true;
  }

  std::vector<Rational> gammas;
  for (int i = 0; i < count; ++i) {
    Rational gamma = Rational(phis[std::size_t(i)]) - out.e_hk * Rational(BigInt(qs[std::size_t(i)]) * qs[std::size_t(i)]);
    out.points.push_back(GammaPoint{qs[std::size_t(i)], phis[std::size_t(i)], gamma});
    gammas.push_back(gamma);
  }
  out.cycle = detect_cycle(gammas, e_min);
  return out;
}

}  // namespace ellhk
