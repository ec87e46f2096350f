#include "ellhk/report.hpp"

#include <chrono>
#include <sstream>

#include "json.hpp"

#include "ellhk/formulas.hpp"

namespace ellhk {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

namespace {

bool is_maximal_ideal(const CurveSpec& spec, const std::vector<HomogeneousPoly>& ideal) {
  if (ideal.size() != spec.num_vars) return false;
  auto vars = maximal_ideal_gens(spec.field, spec.num_vars);
  for (std::size_t i = 0; i < ideal.size(); ++i)
    if (!(ideal[i] == vars[i])) return false;
  return true;
}

}  // namespace

HKReport verify_curve(const CurveSpec& spec, const std::vector<HomogeneousPoly>& ideal,
                      const std::string& ideal_description, int e_max,
                      const OracleOptions& opts, bool with_timing) {
  check(spec.validated, errc::invalid_input, "verify needs a validated curve");
  check(e_max >= 0, errc::invalid_input, "e_max must be >= 0");
  // formula route: maximal ideal of a complete embedding, where the syzygy
  // bundle is stable and the semistable closed form applies
  check(is_maximal_ideal(spec, ideal), errc::invalid_input,
        "no closed-form route for this ideal: verify supports the maximal ideal");
  check(std::size_t(spec.delta) == spec.num_vars, errc::invalid_input,
        "no closed-form route: the embedding is not complete (dim R_1 != delta)");

  auto start = std::chrono::steady_clock::now();
  std::uint64_t p = spec.field->characteristic();
  std::vector<std::int64_t> d_list(spec.num_vars, 1);
  H1Policy policy = OracleBackedPolicy{spec.presentation, ideal};

  HKReport report;
  report.curve = spec.name;
  report.spec_hash = std::to_string(fnv1a(curve_fingerprint(spec)));
  report.ideal = ideal_description;

  std::vector<Rational> gammas;
  std::uint64_t q = 1;
  for (int e = 0; e <= e_max; ++e, q *= p) {
    ColengthProfile oracle_profile = colength(FrobeniusQuery{spec.presentation, ideal, q}, opts);
    HKValue formula = hk_semistable(spec.delta, d_list, policy, q);
    HKReportRow row;
    row.q = q;
    row.phi_oracle = oracle_profile.total;
    row.phi_formula = formula.phi_int;
    row.gamma = formula.gamma;
    row.profile = oracle_profile.per_degree;
    report.e_hk = formula.e_hk;
    if (row.phi_oracle != row.phi_formula) {
      report.mismatch_details += "q=" + std::to_string(q) + ": oracle " +
                                 row.phi_oracle.str() + " vs formula " + row.phi_formula.str() +
                                 "; ";
    }
    gammas.push_back(Rational(row.phi_oracle) - report.e_hk * Rational(BigInt(q) * q));
    report.rows.push_back(std::move(row));
  }
  report.match = report.mismatch_details.empty();
  report.gamma_cycle = detect_cycle(gammas, 0);
  if (with_timing)
    report.timing_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return report;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json rational_json(const Rational& r) {
  ordered_json j;
  j["num"] = numerator(r).str();
  j["den"] = denominator(r).str();
  return j;
}

Rational rational_from(const ordered_json& j) {
  return Rational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

}  // namespace

std::string report_to_json(const HKReport& report) {
  ordered_json j;
  j["curve"] = report.curve;
  j["spec_hash"] = report.spec_hash;
  j["ideal"] = report.ideal;
  j["e_hk"] = rational_json(report.e_hk);
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["q"] = row.q;
    r["phi_oracle"] = row.phi_oracle.str();
    r["phi_formula"] = row.phi_formula.str();
    r["gamma"] = rational_json(row.gamma);
    ordered_json profile = ordered_json::array();
    for (const auto& [m, c] : row.profile) profile.push_back(ordered_json::array({m, c}));
    r["profile"] = profile;
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["verdict"] = report.match ? "Match" : "Mismatch";
  if (!report.match) j["mismatch_details"] = report.mismatch_details;
  j["gamma_cycle"] = {{"stabilized", report.gamma_cycle.stabilized},
                      {"onset_e", report.gamma_cycle.onset_e},
                      {"period", report.gamma_cycle.period}};
  if (report.timing_ms) j["timing_ms"] = *report.timing_ms;
  return j.dump(2) + "\n";
}

HKReport report_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  HKReport report;
  report.curve = j.at("curve").get<std::string>();
  report.spec_hash = j.at("spec_hash").get<std::string>();
  report.ideal = j.at("ideal").get<std::string>();
  report.e_hk = rational_from(j.at("e_hk"));
  for (const auto& r : j.at("rows")) {
    HKReportRow row;
    row.q = r.at("q").get<std::uint64_t>();
    row.phi_oracle = BigInt(r.at("phi_oracle").get<std::string>());
    row.phi_formula = BigInt(r.at("phi_formula").get<std::string>());
    row.gamma = rational_from(r.at("gamma"));
    for (const auto& entry : r.at("profile"))
      row.profile.emplace_back(entry.at(0).get<int>(), entry.at(1).get<std::int64_t>());
    report.rows.push_back(std::move(row));
  }
  report.match = j.at("verdict").get<std::string>() == "Match";
  if (j.contains("mismatch_details"))
    report.mismatch_details = j.at("mismatch_details").get<std::string>();
  report.gamma_cycle.stabilized = j.at("gamma_cycle").at("stabilized").get<bool>();
  report.gamma_cycle.onset_e = j.at("gamma_cycle").at("onset_e").get<int>();
  report.gamma_cycle.period = j.at("gamma_cycle").at("period").get<int>();
  if (j.contains("timing_ms")) report.timing_ms = j.at("timing_ms").get<double>();
  return report;
}

}  // namespace ellhk
