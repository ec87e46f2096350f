#include "ellhk/curves.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace ellhk {

CurveSpec build_curve(std::string name, FieldPtr field, std::size_t num_vars, int delta,
                      std::vector<HomogeneousPoly> gens, const CurveValidation& v) {
  check(!gens.empty(), errc::invalid_input, "curve without defining equations");
  if (v.check_smooth)
    check(is_projectively_smooth(gens), errc::singular_curve,
          "the presentation " + name + " defines a singular scheme");
  CurveSpec spec;
  spec.name = std::move(name);
  spec.field = std::move(field);
  spec.num_vars = num_vars;
  spec.delta = delta;
  spec.gens = gens;
  spec.presentation = std::make_shared<GradedQuotientPresentation>(
      spec.field, num_vars, std::move(gens), delta);
  for (int m = 0; m <= v.hilbert_degree_bound; ++m)
    spec.presentation->graded_dim(m);  // throws hilbert_mismatch on failure
  spec.validated = true;
  return spec;
}

HomogeneousPoly hesse_cubic(FieldPtr field, std::uint32_t lambda_code) {
  std::vector<HomogeneousPoly::Term> terms;
  for (std::size_t i = 0; i < 3; ++i) {
    Monomial cube = Monomial::unit(3);
    cube.exps[i] = 3;
    terms.emplace_back(std::move(cube), 1);
  }
  if (lambda_code != 0)
    terms.emplace_back(Monomial(std::vector<std::uint16_t>{1, 1, 1}), lambda_code);
  return HomogeneousPoly::from_terms(std::move(field), 3, std::move(terms));
}

int hasse_invariant(const HomogeneousPoly& cubic) {
  check(cubic.num_vars() == 3 && cubic.degree() == 3 && !cubic.is_zero(), errc::not_a_cubic,
        "hasse_invariant expects a nonzero plane cubic");
  check(is_projectively_smooth({cubic}), errc::singular_curve,
        "hasse_invariant expects a smooth cubic");
  std::uint32_t p = cubic.field().characteristic();
  HomogeneousPoly power = poly_pow(cubic, p - 1);
  Monomial target(std::vector<std::uint16_t>{std::uint16_t(p - 1), std::uint16_t(p - 1),
                                             std::uint16_t(p - 1)});
  return power.coeff_of(target) == 0 ? 0 : 1;
}

namespace {

CurveSpec plane_cubic(const std::string& name, FieldPtr field, std::uint32_t lambda_code) {
  return build_curve(name, field, 3, 3, {hesse_cubic(field, lambda_code)});
}

// Smooth (2,2) complete intersections in P^3, found once by a seeded random
// search and frozen here so builds never re-search. Transcript: candidates
// drawn with mt19937(20240515), normalized so the leading monomials are the
// coprime pair X0^2 / an X0-free quadric, then kept after passing
// is_projectively_smooth plus dim R_m = 4m for m <= 12. Over F_5 the third
// candidate won, over F_2 the fifth; the oracle totals on both match
// (8 q^2 - 5)/3 at q = p, p^2 (65/1665 and 9/41).
CurveSpec ci_quartic_p5() {
  auto field = make_prime_field(5);
  std::vector<HomogeneousPoly> gens{
      parse_poly("X0^2 + X1^2 + 3*X0*X2 + 3*X1*X2 + 2*X2^2 + 4*X0*X3 + X1*X3 + 4*X2*X3",
                 field, 4),
      parse_poly("X1^2 + X0*X2 + 4*X1*X2 + 2*X2^2 + 4*X1*X3 + 4*X2*X3 + 3*X3^2", field, 4),
  };
  return build_curve("ci-quartic:p5", field, 4, 4, std::move(gens));
}

CurveSpec ci_quartic_p2() {
  auto field = make_prime_field(2);
  std::vector<HomogeneousPoly> gens{
      parse_poly("X0^2 + X0*X1 + X1^2 + X0*X2 + X1*X2 + X2^2 + X2*X3 + X3^2", field, 4),
      parse_poly("X2^2 + X1*X3 + X3^2", field, 4),
  };
  return build_curve("ci-quartic:p2", field, 4, 4, std::move(gens));
}

// Elliptic normal quintic in P^4 over F_3, from the Heisenberg-invariant
// family Q_i = x_i^2 + b x_{i+1}x_{i+4} + c x_{i+2}x_{i+3} (indices mod 5).
// The scan over (b,c) found (1,2) smooth on the tenth candidate; validated
// by dim R_m = 5m and the Jacobian-minor emptiness sweep, and the oracle
// totals match (25 q^2 - 17)/8 at q = 1, 3, 9 (1, 26, 251).
CurveSpec quintic_p3() {
  auto field = make_prime_field(3);
  std::vector<HomogeneousPoly> gens;
  for (int i = 0; i < 5; ++i) {
    auto mono = [&](int u, int v) {
      Monomial m = Monomial::unit(5);
      m.exps[std::size_t(u % 5)]++;
      m.exps[std::size_t(v % 5)]++;
      return m;
    };
    std::vector<HomogeneousPoly::Term> terms;
    terms.emplace_back(mono(i, i), 1);
    terms.emplace_back(mono(i + 1, i + 4), 1);
    terms.emplace_back(mono(i + 2, i + 3), 2);
    gens.push_back(HomogeneousPoly::from_terms(field, 5, std::move(terms)));
  }
  CurveValidation v;
  v.hilbert_degree_bound = 8;  // deeper degrees stay checked lazily on use
  return build_curve("quintic:p3", field, 5, 5, std::move(gens), v);
}

std::vector<CurveSpec> build_catalog() {
  std::vector<CurveSpec> out;
  out.push_back(plane_cubic("fermat:p2", make_prime_field(2), 0));
  {
    auto f8 = make_extension(2, 3);
    out.push_back(plane_cubic("hesse:p2:lF8", f8, f8->generator()));
  }
  out.push_back(plane_cubic("hesse:p3:l1", make_prime_field(3), 1));
  out.push_back(plane_cubic("hesse:p5:l1", make_prime_field(5), 1));
  out.push_back(plane_cubic("fermat:p5", make_prime_field(5), 0));
  out.push_back(plane_cubic("fermat:p7", make_prime_field(7), 0));
  out.push_back(ci_quartic_p5());
  out.push_back(ci_quartic_p2());
  out.push_back(quintic_p3());
  return out;
}

}  // namespace

const std::vector<CurveSpec>& catalog() {
  static std::vector<CurveSpec> entries = build_catalog();
  return entries;
}

namespace {

std::optional<CurveSpec> resolve_family(const std::string& name) {
  // fermat:p<P> and hesse:p<P>:l<v>; hesse:p2:lF8 puts lambda = t in F_8
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    return parts;
  };
  auto parts = split(name);
  if (parts.empty()) return std::nullopt;
  auto parse_p = [](const std::string& s) -> std::optional<std::uint32_t> {
    if (s.size() < 2 || s[0] != 'p') return std::nullopt;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    return std::uint32_t(std::stoul(s.substr(1)));
  };
  if (parts[0] == "fermat" && parts.size() == 2) {
    auto p = parse_p(parts[1]);
    if (!p) return std::nullopt;
    return plane_cubic(name, make_prime_field(*p), 0);
  }
  if (parts[0] == "hesse" && parts.size() == 3) {
    auto p = parse_p(parts[1]);
    if (!p || parts[2].empty() || parts[2][0] != 'l') return std::nullopt;
    std::string lam = parts[2].substr(1);
    if (lam == "F8") {
      check(*p == 2, errc::invalid_input, "lF8 is only meaningful in characteristic 2");
      auto f8 = make_extension(2, 3);
      return plane_cubic(name, f8, f8->generator());
    }
    for (char c : lam)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    auto field = make_prime_field(*p);
    return plane_cubic(name, field, field->from_int(std::int64_t(std::stoll(lam))));
  }
  return std::nullopt;
}

}  // namespace

CurveSpec resolve_curve(const std::string& name_or_path) {
  for (const auto& spec : catalog())
    if (spec.name == name_or_path) return spec;
  if (auto family = resolve_family(name_or_path)) return *family;
  std::ifstream in(name_or_path);
  check(in.good(), errc::invalid_input,
        "unknown curve '" + name_or_path + "' (not a catalog name, family name, or readable file)");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return curve_from_json(buffer.str());
}

namespace {

using nlohmann::json;

std::uint32_t coeff_from_json(const FieldCtx& field, const json& j) {
  if (j.is_number_integer()) return field.from_int(j.get<std::int64_t>());
  check(j.is_array(), errc::invalid_input, "coefficient must be an integer or an array");
  std::vector<std::uint32_t> coeffs;
  for (const auto& c : j) coeffs.push_back(field.from_int(c.get<std::int64_t>()));
  return field.from_coeffs(coeffs);
}

HomogeneousPoly poly_from_json(const json& j, FieldPtr field, std::size_t num_vars,
                               const std::map<std::string, std::uint32_t>& symbols) {
  if (j.is_string()) return parse_poly(j.get<std::string>(), field, num_vars, symbols);
  check(j.is_array(), errc::invalid_input, "polynomial must be a string or a term list");
  std::vector<HomogeneousPoly::Term> terms;
  for (const auto& term : j) {
    check(term.contains("exps") && term.contains("coeff"), errc::invalid_input,
          "term needs exps and coeff");
    std::vector<std::uint16_t> exps;
    for (const auto& e : term["exps"]) exps.push_back(std::uint16_t(e.get<int>()));
    check(exps.size() == num_vars, errc::invalid_input, "term with wrong number of exponents");
    terms.emplace_back(Monomial(std::move(exps)), coeff_from_json(*field, term["coeff"]));
  }
  return HomogeneousPoly::from_terms(std::move(field), num_vars, std::move(terms));
}

}  // namespace

CurveSpec curve_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  check(j.contains("p") && j.contains("num_vars") && j.contains("delta") && j.contains("gens"),
        errc::invalid_input, "curve spec needs p, num_vars, delta, gens");
  std::uint32_t p = j["p"].get<std::uint32_t>();
  std::uint32_t k = j.value("k", 1u);
  auto field = make_extension(p, k);
  std::size_t num_vars = j["num_vars"].get<std::size_t>();
  int delta = j["delta"].get<int>();
  std::map<std::string, std::uint32_t> symbols;
  if (j.contains("symbols"))
    for (auto it = j["symbols"].begin(); it != j["symbols"].end(); ++it)
      symbols[it.key()] = coeff_from_json(*field, it.value());
  std::vector<HomogeneousPoly> gens;
  for (const auto& g : j["gens"]) gens.push_back(poly_from_json(g, field, num_vars, symbols));
  std::string name = j.value("name", std::string("user-curve"));
  return build_curve(std::move(name), field, num_vars, delta, std::move(gens));
}

std::string curve_to_json(const CurveSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["p"] = spec.field->characteristic();
  j["k"] = spec.field->extension_degree();
  j["num_vars"] = spec.num_vars;
  j["delta"] = spec.delta;
  json gens = json::array();
  for (const auto& g : spec.gens) {
    json terms = json::array();
    for (const auto& [mono, coeff] : g.terms()) {
      json term;
      term["exps"] = mono.exps;
      json cs = json::array();
      for (auto c : spec.field->coeffs_of(coeff)) cs.push_back(c);
      term["coeff"] = cs;
      terms.push_back(term);
    }
    gens.push_back(terms);
  }
  j["gens"] = gens;
  return j.dump(2);
}

std::string curve_fingerprint(const CurveSpec& spec) {
  std::string out = "p" + std::to_string(spec.field->characteristic()) + "k" +
                    std::to_string(spec.field->extension_degree()) + "|n" +
                    std::to_string(spec.num_vars) + "|d" + std::to_string(spec.delta);
  for (const auto& g : spec.gens) out += "|" + g.str();
  return out;
}

}  // namespace ellhk
