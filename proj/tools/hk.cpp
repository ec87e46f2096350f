// hk: Hilbert-Kunz functions on cones over elliptic curves.
//
// Subcommands: oracle (brute-force colengths), formula (closed forms),
// verify (oracle vs formula cross-validation), classify (restricted twisted
// cotangent decision), hasse (Hasse invariant of a plane cubic).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ellhk/classifier.hpp"
#include "ellhk/curves.hpp"
#include "ellhk/formulas.hpp"
#include "ellhk/oracle.hpp"
#include "ellhk/report.hpp"

namespace {

using namespace ellhk;
using ordered_json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_invalid = 2;
constexpr int exit_stop_bound = 3;
constexpr int exit_hilbert = 4;
constexpr int exit_h1 = 5;

int exit_code_for(const error& e) {
  switch (e.code()) {
    case errc::stop_bound_exceeded: return exit_stop_bound;
    case errc::hilbert_mismatch: return exit_hilbert;
    case errc::h1_unresolved: return exit_h1;
    default: return exit_invalid;
  }
}

OracleOptions oracle_options() {
  OracleOptions opts;
  if (const char* env = std::getenv("HK_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) opts.threads = n;
  }
  return opts;
}

std::vector<std::uint64_t> parse_q_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    check(!part.empty(), errc::invalid_input, "empty entry in q list");
    out.push_back(std::stoull(part));
  }
  check(!out.empty(), errc::invalid_input, "empty q list");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  check(in.good(), errc::invalid_input, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    check(out.good(), errc::invalid_input, "cannot write " + out_path);
    out << text;
  }
}

ordered_json rational_json(const Rational& r) {
  return ordered_json{{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

std::vector<HomogeneousPoly> resolve_ideal(const CurveSpec& spec, const std::string& desc) {
  if (desc == "maximal") return maximal_ideal_gens(spec.field, spec.num_vars);
  ordered_json j = ordered_json::parse(read_file(desc));
  check(j.contains("gens"), errc::invalid_input, "ideal file needs a gens array");
  std::map<std::string, std::uint32_t> symbols;
  if (j.contains("symbols"))
    for (auto it = j["symbols"].begin(); it != j["symbols"].end(); ++it) {
      std::vector<std::uint32_t> coeffs;
      for (const auto& c : it.value()) coeffs.push_back(spec.field->from_int(c.get<std::int64_t>()));
      symbols[it.key()] = spec.field->from_coeffs(coeffs);
    }
  std::vector<HomogeneousPoly> gens;
  for (const auto& g : j["gens"])
    gens.push_back(parse_poly(g.get<std::string>(), spec.field, spec.num_vars, symbols));
  return gens;
}

// ----- oracle -----

int run_oracle(const std::string& curve, const std::string& ideal_desc, const std::string& q_list,
               const std::string& format, const std::string& out_path) {
  CurveSpec spec = resolve_curve(curve);
  auto ideal = resolve_ideal(spec, ideal_desc);
  auto qs = parse_q_list(q_list);
  auto opts = oracle_options();

  std::vector<ColengthProfile> profiles;
  for (auto q : qs) profiles.push_back(colength(FrobeniusQuery{spec.presentation, ideal, q}, opts));

  std::ostringstream text;
  if (format == "csv") {
    text << "q,m,dim_Rm,dim_Iq_m,colength\n";
    for (const auto& profile : profiles)
      for (const auto& [m, col] : profile.per_degree) {
        std::int64_t dim_rm = spec.presentation->graded_dim(m);
        text << profile.q << "," << m << "," << dim_rm << "," << (dim_rm - col) << "," << col
             << "\n";
      }
  } else {
    auto profile_json = [](const ColengthProfile& profile) {
      ordered_json j;
      j["q"] = profile.q;
      check(profile.total <= std::numeric_limits<std::int64_t>::max(), errc::internal,
            "total out of the JSON integer range");
      j["total"] = std::int64_t(profile.total);
      ordered_json per_degree = ordered_json::array();
      for (const auto& [m, col] : profile.per_degree)
        per_degree.push_back(ordered_json::array({m, col}));
      j["per_degree"] = per_degree;
      j["stop_degree"] = profile.stop_degree;
      if (!profile.diagnostics.empty()) j["diagnostics"] = profile.diagnostics;
      return j;
    };
    if (profiles.size() == 1) {
      text << profile_json(profiles[0]).dump(2) << "\n";
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& profile : profiles) arr.push_back(profile_json(profile));
      text << arr.dump(2) << "\n";
    }
  }
  emit(text.str(), out_path);
  return exit_ok;
}

// ----- formula -----

H1Policy policy_from_json(const ordered_json& params) {
  if (!params.contains("h1")) return AutoZeroPolicy{};
  const auto& h1 = params["h1"];
  if (h1.is_string()) {
    check(h1.get<std::string>() == "auto-zero", errc::invalid_input,
          "h1 must be \"auto-zero\", {\"constant\":[..]} or {\"oracle\":{..}}");
    return AutoZeroPolicy{};
  }
  if (h1.contains("constant")) {
    ConstantPolicy policy;
    for (const auto& v : h1["constant"]) policy.per_summand.push_back(v.get<std::int64_t>());
    return policy;
  }
  check(h1.contains("oracle"), errc::invalid_input, "unrecognized h1 policy");
  CurveSpec spec = resolve_curve(h1["oracle"].at("curve").get<std::string>());
  auto ideal = resolve_ideal(spec, h1["oracle"].value("ideal", "maximal"));
  return OracleBackedPolicy{spec.presentation, std::move(ideal)};
}

int run_formula(const std::string& theorem, const std::string& params_path,
                const std::string& q_list, const std::string& format,
                const std::string& out_path) {
  ordered_json params = ordered_json::parse(read_file(params_path));
  auto qs = parse_q_list(q_list);

  auto evaluate = [&](std::uint64_t q) -> HKValue {
    if (theorem == "general") {
      std::vector<std::int64_t> d_list;
      for (const auto& d : params.at("d_list")) d_list.push_back(d.get<std::int64_t>());
      std::vector<SummandData> summands;
      for (const auto& s : params.at("summands"))
        summands.push_back(
            SummandData{s.at("rank").get<std::int64_t>(), s.at("degree").get<std::int64_t>()});
      return hk_general(params.at("delta").get<std::int64_t>(), d_list, summands,
                        policy_from_json(params), q);
    }
    if (theorem == "semistable") {
      std::vector<std::int64_t> d_list;
      for (const auto& d : params.at("d_list")) d_list.push_back(d.get<std::int64_t>());
      return hk_semistable(params.at("delta").get<std::int64_t>(), d_list,
                           policy_from_json(params), q);
    }
    if (theorem == "complete") {
      std::optional<std::int64_t> h1;
      if (params.contains("h1") && params["h1"].is_number_integer())
        h1 = params["h1"].get<std::int64_t>();
      return hk_complete_embedding(params.at("N").get<std::int64_t>(), q,
                                   params.at("p").get<std::uint64_t>(), h1);
    }
    check(theorem == "space-curve", errc::invalid_input,
          "theorem must be general|semistable|complete|space-curve");
    std::int64_t delta = params.at("delta").get<std::int64_t>();
    const auto& c = params.at("case");
    SplittingCase split = IndecomposableCase{-4 * delta};
    if (c.is_string()) {
      check(c.get<std::string>() == "indecomposable", errc::invalid_input,
            "case must be \"indecomposable\" or an object");
    } else if (c.contains("rank2_degree")) {
      split = RankTwoPlusLineCase{c.at("rank2_degree").get<std::int64_t>(),
                                  c.at("line_degree").get<std::int64_t>()};
    } else {
      check(c.contains("line_degrees"), errc::invalid_input, "unrecognized splitting case");
      ThreeLinesCase lines;
      int i = 0;
      for (const auto& d : c.at("line_degrees")) lines.degrees[i++] = d.get<std::int64_t>();
      split = lines;
    }
    return hk_space_curve(delta, split, q, params.at("p").get<std::uint64_t>(),
                          policy_from_json(params));
  };

  std::ostringstream text;
  if (format == "csv") {
    text << "q,phi,gamma_num,gamma_den\n";
    for (auto q : qs) {
      HKValue v = evaluate(q);
      text << q << "," << v.phi_int.str() << "," << numerator(v.gamma).str() << ","
           << denominator(v.gamma).str() << "\n";
    }
  } else {
    ordered_json j;
    j["theorem"] = theorem;
    ordered_json values = ordered_json::array();
    std::optional<Rational> e_hk;
    std::string provenance;
    for (auto q : qs) {
      HKValue v = evaluate(q);
      e_hk = v.e_hk;
      provenance = v.provenance;
      values.push_back(ordered_json{
          {"q", q}, {"phi", v.phi_int.str()}, {"gamma", rational_json(v.gamma)}});
    }
    j["provenance"] = provenance;
    j["e_hk"] = rational_json(*e_hk);
    j["values"] = values;
    text << j.dump(2) << "\n";
  }
  emit(text.str(), out_path);
  return exit_ok;
}

// ----- verify -----

int run_verify(const std::string& curve, const std::string& ideal_desc, int e_max,
               const std::string& format, const std::string& out_path, bool with_timing) {
  CurveSpec spec = resolve_curve(curve);
  auto ideal = resolve_ideal(spec, ideal_desc);
  if (e_max < 0) e_max = spec.field->characteristic() == 2 ? 3 : 2;
  HKReport report =
      verify_curve(spec, ideal, ideal_desc, e_max, oracle_options(), with_timing);
  std::ostringstream text;
  if (format == "csv") {
    text << "q,phi_oracle,phi_formula,gamma_num,gamma_den\n";
    for (const auto& row : report.rows)
      text << row.q << "," << row.phi_oracle.str() << "," << row.phi_formula.str() << ","
           << numerator(row.gamma).str() << "," << denominator(row.gamma).str() << "\n";
    text << "verdict," << (report.match ? "Match" : "Mismatch") << ",,,\n";
  } else {
    text << report_to_json(report);
  }
  emit(text.str(), out_path);
  return report.match ? exit_ok : exit_mismatch;
}

// ----- classify -----

SummandDescriptor descriptor_from_json(const ordered_json& j) {
  SummandDescriptor s;
  s.rank = j.at("rank").get<std::int64_t>();
  s.degree = j.at("degree").get<std::int64_t>();
  if (!j.contains("kind") || (j["kind"].is_string() && j["kind"] == "Generic")) {
    s.kind = SummandDescriptor::Kind::generic;
  } else {
    const auto& kind = j["kind"];
    if (kind.contains("Line")) {
      s.kind = SummandDescriptor::Kind::line;
      s.label = kind["Line"].get<std::string>();
    } else {
      check(kind.contains("AtiyahTwist"), errc::invalid_input,
            "kind must be Generic, {\"Line\":label} or {\"AtiyahTwist\":label}");
      s.kind = SummandDescriptor::Kind::atiyah_twist;
      s.label = kind["AtiyahTwist"].get<std::string>();
    }
  }
  return s;
}

int run_classify(const std::string& path, const std::string& out_path) {
  ordered_json j = ordered_json::parse(read_file(path));
  std::vector<SummandDescriptor> summands;
  for (const auto& s : j.at("summands")) summands.push_back(descriptor_from_json(s));
  Verdict verdict = is_restricted_cotangent(DecompositionData::make(std::move(summands)));
  ordered_json out;
  switch (verdict.outcome) {
    case Verdict::Outcome::yes: out["verdict"] = "Yes"; break;
    case Verdict::Outcome::no:
      out["verdict"] = "No";
      out["failed_condition"] = verdict.failed_condition;
      out["reason"] = verdict.reason;
      break;
    case Verdict::Outcome::indeterminate:
      out["verdict"] = "Indeterminate";
      out["condition"] = verdict.failed_condition;
      out["missing"] = verdict.reason;
      break;
  }
  emit(out.dump(2) + "\n", out_path);
  return exit_ok;
}

int run_hasse(const std::string& curve, const std::string& out_path) {
  CurveSpec spec = resolve_curve(curve);
  check(spec.num_vars == 3 && spec.gens.size() == 1, errc::not_a_cubic,
        "hasse needs a plane cubic");
  emit(std::to_string(hasse_invariant(spec.gens[0])) + "\n", out_path);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert-Kunz functions of primary ideals on cones over elliptic curves"};
  app.require_subcommand(1);

  std::string curve, ideal = "maximal", q_list = "1", format = "json", out_path;
  std::string theorem, params_path, decomposition_path;
  int e_max = -1;
  bool with_timing = false;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out_path, "write output to a file instead of stdout");
  };

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force colength profiles");
  oracle_cmd->add_option("--curve", curve, "catalog name, family name, or spec file")->required();
  oracle_cmd->add_option("--ideal", ideal, "maximal or an ideal JSON file");
  oracle_cmd->add_option("--q", q_list, "comma-separated prime powers")->required();
  add_io(oracle_cmd);

  auto* formula_cmd = app.add_subcommand("formula", "closed-form evaluation");
  formula_cmd->add_option("--theorem", theorem, "general|semistable|complete|space-curve")
      ->required();
  formula_cmd->add_option("--params", params_path, "parameter JSON file")->required();
  formula_cmd->add_option("--q", q_list, "comma-separated prime powers")->required();
  add_io(formula_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "oracle vs closed form cross-validation");
  verify_cmd->add_option("--curve", curve)->required();
  verify_cmd->add_option("--ideal", ideal);
  verify_cmd->add_option("--e-max", e_max, "largest Frobenius exponent (default 3 for p=2, else 2)");
  verify_cmd->add_flag("--timing", with_timing, "include wall-clock timing in the report");
  add_io(verify_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "restricted twisted cotangent decision");
  classify_cmd->add_option("--decomposition", decomposition_path, "descriptor JSON file")
      ->required();
  classify_cmd->add_option("--out", out_path);

  auto* hasse_cmd = app.add_subcommand("hasse", "Hasse invariant of a plane cubic");
  hasse_cmd->add_option("--curve", curve)->required();
  hasse_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle_cmd->parsed()) return run_oracle(curve, ideal, q_list, format, out_path);
    if (formula_cmd->parsed()) return run_formula(theorem, params_path, q_list, format, out_path);
    if (verify_cmd->parsed())
      return run_verify(curve, ideal, e_max, format, out_path, with_timing);
    if (classify_cmd->parsed()) return run_classify(decomposition_path, out_path);
    if (hasse_cmd->parsed()) return run_hasse(curve, out_path);
  } catch (const error& e) {
    std::cerr << "hk: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "hk: " << e.what() << "\n";
    return exit_invalid;
  }
  return exit_invalid;
}
