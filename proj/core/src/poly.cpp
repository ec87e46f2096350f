#include "ellhk/poly.hpp"

#include <algorithm>
#include <cctype>

namespace ellhk {

HomogeneousPoly HomogeneousPoly::from_terms(FieldPtr field, std::size_t num_vars,
                                            std::vector<Term> terms) {
  check(!terms.empty(), errc::invalid_input, "from_terms needs at least one term");
  int degree = terms.front().first.degree();
  HomogeneousPoly out(std::move(field), num_vars, degree);
  std::map<Monomial, std::uint32_t, GrevlexGreater> acc;
  for (auto& [mono, coeff] : terms) {
    check(mono.num_vars() == num_vars, errc::invalid_input, "term with wrong variable count");
    check(mono.degree() == degree, errc::invalid_input,
          "inhomogeneous term list: degree " + std::to_string(mono.degree()) + " vs " +
              std::to_string(degree));
    auto [it, inserted] = acc.emplace(mono, coeff);
    if (!inserted) it->second = out.field().add(it->second, coeff);
  }
  for (auto& [mono, coeff] : acc)
    if (coeff != 0) out.terms_.emplace_back(mono, coeff);
  return out;
}

HomogeneousPoly HomogeneousPoly::monomial_poly(FieldPtr field, std::size_t num_vars,
                                               const Monomial& mono, std::uint32_t coeff) {
  HomogeneousPoly out(std::move(field), num_vars, mono.degree());
  if (coeff != 0) out.terms_.emplace_back(mono, coeff);
  return out;
}

const Monomial& HomogeneousPoly::leading_monomial() const {
  check(!terms_.empty(), errc::invalid_input, "leading monomial of zero polynomial");
  return terms_.front().first;
}

std::uint32_t HomogeneousPoly::coeff_of(const Monomial& mono) const {
  for (const auto& [m, c] : terms_)
    if (m == mono) return c;
  return 0;
}

HomogeneousPoly HomogeneousPoly::scaled(std::uint32_t c) const {
  HomogeneousPoly out(field_, num_vars_, degree_);
  if (c == 0) return out;
  out.terms_ = terms_;
  for (auto& [mono, coeff] : out.terms_) coeff = field_->mul(coeff, c);
  return out;
}

HomogeneousPoly HomogeneousPoly::monic() const {
  check(!terms_.empty(), errc::invalid_input, "monic of zero polynomial");
  return scaled(field_->inv(terms_.front().second));
}

namespace {
void check_same_ring(const HomogeneousPoly& f, const HomogeneousPoly& g) {
  check(f.field().same(g.field()), errc::ctx_mismatch, "polynomials over different fields");
  check(f.num_vars() == g.num_vars(), errc::invalid_input, "polynomials in different rings");
}
}  // namespace

HomogeneousPoly operator+(const HomogeneousPoly& f, const HomogeneousPoly& g) {
  check_same_ring(f, g);
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  check(f.degree() == g.degree(), errc::invalid_input, "sum of different degrees");
  std::vector<HomogeneousPoly::Term> terms = f.terms();
  for (const auto& t : g.terms()) terms.push_back(t);
  return HomogeneousPoly::from_terms(f.field_ptr(), f.num_vars(), std::move(terms));
}

HomogeneousPoly operator-(const HomogeneousPoly& f, const HomogeneousPoly& g) {
  return f + g.scaled(g.field().neg(1));
}

bool operator==(const HomogeneousPoly& f, const HomogeneousPoly& g) {
  return f.field().same(g.field()) && f.num_vars() == g.num_vars() && f.terms() == g.terms();
}

HomogeneousPoly multiply(const HomogeneousPoly& f, const HomogeneousPoly& g) {
  check_same_ring(f, g);
  const auto& ctx = f.field();
  HomogeneousPoly out(f.field_ptr(), f.num_vars(), f.degree() + g.degree());
  if (f.is_zero() || g.is_zero()) return out;
  std::map<Monomial, std::uint32_t, GrevlexGreater> acc;
  for (const auto& [ma, ca] : f.terms()) {
    for (const auto& [mb, cb] : g.terms()) {
      Monomial m = ma.times(mb);
      std::uint32_t c = ctx.mul(ca, cb);
      auto [it, inserted] = acc.emplace(std::move(m), c);
      if (!inserted) it->second = ctx.add(it->second, c);
    }
  }
  std::vector<HomogeneousPoly::Term> terms;
  for (auto& [mono, coeff] : acc)
    if (coeff != 0) terms.emplace_back(mono, coeff);
  if (terms.empty()) return out;
  return HomogeneousPoly::from_terms(f.field_ptr(), f.num_vars(), std::move(terms));
}

HomogeneousPoly frobenius_power(const HomogeneousPoly& f, std::uint64_t q) {
  std::uint64_t p = f.field().characteristic();
  std::uint64_t r = q;
  while (r > 1) {
    check(r % p == 0, errc::not_p_power,
          std::to_string(q) + " is not a power of the characteristic " + std::to_string(p));
    r /= p;
  }
  check(q >= 1, errc::not_p_power, "q must be >= 1");
  if (q == 1) return f;
  std::vector<HomogeneousPoly::Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& [mono, coeff] : f.terms())
    terms.emplace_back(mono.power(q), f.field().pow(coeff, q));
  if (terms.empty()) return HomogeneousPoly(f.field_ptr(), f.num_vars(), int(f.degree() * q));
  return HomogeneousPoly::from_terms(f.field_ptr(), f.num_vars(), std::move(terms));
}

HomogeneousPoly poly_pow(const HomogeneousPoly& f, std::uint32_t e) {
  HomogeneousPoly result = HomogeneousPoly::monomial_poly(
      f.field_ptr(), f.num_vars(), Monomial::unit(f.num_vars()), 1);
  HomogeneousPoly base = f;
  while (e) {
    if (e & 1) result = multiply(result, base);
    if (e >>= 1) base = multiply(base, base);
  }
  return result;
}

HomogeneousPoly derivative(const HomogeneousPoly& f, std::size_t var) {
  std::vector<HomogeneousPoly::Term> terms;
  for (const auto& [mono, coeff] : f.terms()) {
    if (mono.exps[var] == 0) continue;
    std::uint32_t c = f.field().mul(coeff, f.field().from_int(mono.exps[var]));
    if (c == 0) continue;
    Monomial m = mono;
    m.exps[var] -= 1;
    terms.emplace_back(std::move(m), c);
  }
  if (terms.empty()) return HomogeneousPoly(f.field_ptr(), f.num_vars(), std::max(0, f.degree() - 1));
  return HomogeneousPoly::from_terms(f.field_ptr(), f.num_vars(), std::move(terms));
}

HomogeneousPoly substitute_linear(const HomogeneousPoly& f,
                                  const std::vector<std::vector<std::uint32_t>>& a) {
  std::size_t n = f.num_vars();
  check(a.size() == n, errc::invalid_input, "substitution matrix has wrong size");
  std::vector<HomogeneousPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    check(a[i].size() == n, errc::invalid_input, "substitution matrix has wrong size");
    std::vector<HomogeneousPoly::Term> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] == 0) continue;
      Monomial m = Monomial::unit(n);
      m.exps[j] = 1;
      terms.emplace_back(std::move(m), a[i][j]);
    }
    check(!terms.empty(), errc::invalid_input, "substitution sends a variable to zero");
    images.push_back(HomogeneousPoly::from_terms(f.field_ptr(), n, std::move(terms)));
  }
  HomogeneousPoly out(f.field_ptr(), n, f.degree());
  for (const auto& [mono, coeff] : f.terms()) {
    HomogeneousPoly term = HomogeneousPoly::monomial_poly(f.field_ptr(), n, Monomial::unit(n), coeff);
    for (std::size_t j = 0; j < n; ++j)
      for (std::uint16_t e = 0; e < mono.exps[j]; ++e) term = multiply(term, images[j]);
    out = out.is_zero() ? term : out + term;
  }
  return out;
}

std::uint32_t evaluate(const HomogeneousPoly& f, const std::vector<std::uint32_t>& point) {
  check(point.size() == f.num_vars(), errc::invalid_input, "point has wrong dimension");
  const auto& ctx = f.field();
  std::uint32_t acc = 0;
  for (const auto& [mono, coeff] : f.terms()) {
    std::uint32_t v = coeff;
    for (std::size_t i = 0; i < point.size(); ++i)
      if (mono.exps[i]) v = ctx.mul(v, ctx.pow(point[i], mono.exps[i]));
    acc = ctx.add(acc, v);
  }
  return acc;
}

std::string HomogeneousPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [mono, coeff] : terms_) {
    if (!out.empty()) out += " + ";
    bool unit_mono = mono.degree() == 0;
    if (coeff != 1 || unit_mono) {
      std::string c = field_->to_string(coeff);
      out += c.find('+') != std::string::npos ? "(" + c + ")" : c;
      if (!unit_mono) out += "*";
    }
    if (!unit_mono) out += mono.str();
  }
  return out;
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  FieldPtr field;
  std::size_t num_vars;
  const std::map<std::string, std::uint32_t>& symbols;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void syntax(const std::string& what) {
    fail(errc::invalid_input, "polynomial parse error at position " + std::to_string(pos) + ": " + what);
  }

  std::string read_name() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) syntax("expected identifier");
    return text.substr(start, pos - start);
  }

  std::uint32_t read_uint() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) syntax("expected number");
    return std::uint32_t(std::stoul(text.substr(start, pos - start)));
  }

  int var_index(const std::string& name) {
    static const std::string aliases = "XYZW";
    if (name.size() == 1) {
      auto hit = aliases.find(name[0]);
      if (hit != std::string::npos && hit < num_vars) return int(hit);
    }
    if (name.size() >= 2 && name[0] == 'X' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int idx = std::stoi(name.substr(1));
      if (idx >= 0 && std::size_t(idx) < num_vars) return idx;
      syntax("variable " + name + " out of range");
    }
    return -1;
  }

  // factor := uint | symbol | var('^' uint)?
  void read_factor(Monomial& mono, std::uint32_t& coeff) {
    skip_ws();
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = field->mul(coeff, field->from_int(read_uint()));
      return;
    }
    std::string name = read_name();
    int idx = var_index(name);
    if (idx >= 0) {
      std::uint32_t e = 1;
      if (eat('^')) e = read_uint();
      check(mono.exps[std::size_t(idx)] + e < 256, errc::degree_too_large, "exponent too large");
      mono.exps[std::size_t(idx)] = std::uint16_t(mono.exps[std::size_t(idx)] + e);
      return;
    }
    auto it = symbols.find(name);
    if (it == symbols.end()) syntax("unknown symbol " + name);
    coeff = field->mul(coeff, it->second);
  }

  HomogeneousPoly parse() {
    std::vector<HomogeneousPoly::Term> terms;
    bool negate = eat('-');
    while (true) {
      Monomial mono = Monomial::unit(num_vars);
      std::uint32_t coeff = 1;
      read_factor(mono, coeff);
      while (eat('*')) read_factor(mono, coeff);
      if (negate) coeff = field->neg(coeff);
      terms.emplace_back(std::move(mono), coeff);
      skip_ws();
      if (pos >= text.size()) break;
      if (eat('+')) {
        negate = false;
      } else if (eat('-')) {
        negate = true;
      } else {
        syntax("expected + or -");
      }
    }
    return HomogeneousPoly::from_terms(field, num_vars, std::move(terms));
  }
};

}  // namespace

HomogeneousPoly parse_poly(const std::string& text, FieldPtr field, std::size_t num_vars,
                           const std::map<std::string, std::uint32_t>& symbols) {
  check(num_vars >= 1 && num_vars <= 8, errc::invalid_input, "num_vars outside [1,8]");
  Parser parser{text, 0, std::move(field), num_vars, symbols};
  return parser.parse();
}

std::vector<HomogeneousPoly> maximal_ideal_gens(FieldPtr field, std::size_t num_vars) {
  std::vector<HomogeneousPoly> out;
  for (std::size_t i = 0; i < num_vars; ++i) {
    Monomial m = Monomial::unit(num_vars);
    m.exps[i] = 1;
    out.push_back(HomogeneousPoly::monomial_poly(field, num_vars, m, 1));
  }
  return out;
}

}  // namespace ellhk
