#include "ellhk/classifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ellhk {

Rational slope(const SummandDescriptor& s) { return s.slope(); }

bool is_stable(const SummandDescriptor& s) {
  if (s.rank == 1) return true;
  return std::gcd(s.rank, s.degree < 0 ? -s.degree : s.degree) == 1;
}

std::int64_t DecompositionData::total_rank() const {
  std::int64_t r = 0;
  for (const auto& s : summands) r += s.rank;
  return r;
}

std::int64_t DecompositionData::total_degree() const {
  std::int64_t d = 0;
  for (const auto& s : summands) d += s.degree;
  return d;
}

DecompositionData DecompositionData::make(std::vector<SummandDescriptor> summands) {
  check(!summands.empty(), errc::invalid_input, "empty decomposition");
  std::map<std::string, std::int64_t> label_degree;  // implied degree of each labeled line
  for (const auto& s : summands) {
    check(s.rank >= 1, errc::invalid_input, "summand with rank < 1");
    switch (s.kind) {
      case SummandDescriptor::Kind::line:
        check(s.rank == 1, errc::invalid_input, "line summand must have rank 1");
        check(!s.label.empty(), errc::invalid_input, "line summand needs a label");
        break;
      case SummandDescriptor::Kind::atiyah_twist:
        check(s.rank >= 2, errc::invalid_input, "Atiyah twist needs rank >= 2");
        check(!s.label.empty(), errc::invalid_input, "Atiyah twist needs a base line label");
        check(s.degree % s.rank == 0, errc::invalid_input,
              "Atiyah twist degree must be rank * deg(base line)");
        break;
      case SummandDescriptor::Kind::generic:
        break;
    }
    if (!s.label.empty()) {
      std::int64_t line_degree =
          s.kind == SummandDescriptor::Kind::atiyah_twist ? s.degree / s.rank : s.degree;
      auto [it, inserted] = label_degree.emplace(s.label, line_degree);
      check(inserted || it->second == line_degree, errc::invalid_input,
            "label " + s.label + " used with two different line degrees");
    }
  }
  std::stable_sort(summands.begin(), summands.end(),
                   [](const SummandDescriptor& a, const SummandDescriptor& b) {
                     return a.slope() > b.slope();
                   });
  return DecompositionData{std::move(summands)};
}

namespace {

enum class Tri { pass, fail, unknown };

struct ConditionResult {
  Tri state = Tri::pass;
  std::string reason;
};

bool slopes_sorted(const DecompositionData& dd) {
  for (std::size_t i = 0; i + 1 < dd.summands.size(); ++i)
    if (dd.summands[i].slope() < dd.summands[i + 1].slope()) return false;
  return true;
}

// (i): the biggest slope must satisfy mu < -1
ConditionResult condition_i(const DecompositionData& dd) {
  if (dd.summands.front().slope() < Rational(-1)) return {};
  return {Tri::fail, "max slope " + dd.summands.front().slope().str() + " is not < -1"};
}

// (ii): F1 (+) M with F1 stable of rank r-1 and degree -r, M a line bundle
ConditionResult condition_ii(const DecompositionData& dd, std::int64_t r) {
  if (dd.summands.size() != 2) return {};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& f1 = dd.summands[i];
    const auto& m = dd.summands[1 - i];
    if (f1.rank == r - 1 && m.rank == 1 && f1.degree == -r)
      return {Tri::fail, "isomorphic to F1 (+) M with F1 stable of rank " + std::to_string(r - 1) +
                             " and degree " + std::to_string(-r)};
  }
  return {};
}

// Same-isomorphism-class test for two rank-1 summands of equal degree.
Tri same_line(const SummandDescriptor& a, const SummandDescriptor& b) {
  if (a.degree != b.degree) return Tri::fail;
  bool a_known = a.kind == SummandDescriptor::Kind::line;
  bool b_known = b.kind == SummandDescriptor::Kind::line;
  if (a_known && b_known) return a.label == b.label ? Tri::pass : Tri::fail;
  return Tri::unknown;
}

// (iii): F1 (+) L^(r2) with 0 < r2 <= r-2, deg L = -2, F1 stable of degree
// r2 - r - 1
ConditionResult condition_iii(const DecompositionData& dd, std::int64_t r) {
  for (std::int64_t r2 = 1; r2 <= r - 2; ++r2) {
    if (std::int64_t(dd.summands.size()) != r2 + 1) continue;
    for (std::size_t f1_idx = 0; f1_idx < dd.summands.size(); ++f1_idx) {
      const auto& f1 = dd.summands[f1_idx];
      if (f1.rank != r - r2 || f1.degree != r2 - r - 1) continue;
      std::vector<const SummandDescriptor*> lines;
      bool shape_ok = true;
      for (std::size_t i = 0; i < dd.summands.size(); ++i) {
        if (i == f1_idx) continue;
        if (dd.summands[i].rank != 1 || dd.summands[i].degree != -2) {
          shape_ok = false;
          break;
        }
        lines.push_back(&dd.summands[i]);
      }
      if (!shape_ok) continue;
      // the r2 lines must all be the same line bundle
      Tri all_same = Tri::pass;
      for (std::size_t i = 0; i + 1 < lines.size() && all_same != Tri::fail; ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
          Tri t = same_line(*lines[i], *lines[j]);
          if (t == Tri::fail) {
            all_same = Tri::fail;
            break;
          }
          if (t == Tri::unknown) all_same = Tri::unknown;
        }
      if (all_same == Tri::pass)
        return {Tri::fail, "isomorphic to F1 (+) L^" + std::to_string(r2) +
                               " with deg(L) = -2 and F1 stable of degree " +
                               std::to_string(r2 - r - 1)};
      if (all_same == Tri::unknown)
        return {Tri::unknown, "cannot decide whether the degree -2 line summands are isomorphic"};
    }
  }
  return {};
}

// (iv): an exact sequence 0 -> L^(r-1) -> F -> M -> 0 with deg L = -2 and
// deg M <= -2. Split shape: L^(r-1) (+) M as summands. Non-split forces
// M = L and F = L^(r-2) (+) (F_2 tensor L), the Atiyah extension.
ConditionResult condition_iv(const DecompositionData& dd, std::int64_t r) {
  // split pattern: all summands are lines, some isomorphism class of
  // degree -2 has multiplicity >= r-1 (the leftover line has degree <= -2
  // whenever condition (i) already holds)
  if (std::int64_t(dd.summands.size()) == r) {
    bool all_lines = true;
    for (const auto& s : dd.summands)
      if (s.rank != 1) all_lines = false;
    if (all_lines) {
      std::map<std::string, std::int64_t> known_classes;
      std::int64_t unknown_minus2 = 0, total_minus2 = 0;
      for (const auto& s : dd.summands) {
        if (s.degree != -2) continue;
        ++total_minus2;
        if (s.kind == SummandDescriptor::Kind::line)
          ++known_classes[s.label];
        else
          ++unknown_minus2;
      }
      std::int64_t best_known = 0;
      for (const auto& [label, count] : known_classes) best_known = std::max(best_known, count);
      if (best_known >= r - 1)
        return {Tri::fail,
                "contains L^" + std::to_string(r - 1) + " with deg(L) = -2 plus a line of degree <= -2"};
      if (total_minus2 >= r - 1 && best_known + unknown_minus2 >= r - 1 && unknown_minus2 > 0)
        return {Tri::unknown,
                "cannot decide whether " + std::to_string(r - 1) +
                    " of the degree -2 line summands are isomorphic"};
    }
  }
  // non-split pattern: L^(r-2) (+) (F_2 tensor L)
  if (std::int64_t(dd.summands.size()) == r - 1) {
    for (std::size_t twist_idx = 0; twist_idx < dd.summands.size(); ++twist_idx) {
      const auto& twist = dd.summands[twist_idx];
      if (twist.rank != 2 || twist.degree != -4) continue;
      if (twist.kind == SummandDescriptor::Kind::line) continue;
      bool lines_ok = true;
      std::vector<const SummandDescriptor*> lines;
      for (std::size_t i = 0; i < dd.summands.size(); ++i) {
        if (i == twist_idx) continue;
        if (dd.summands[i].rank != 1 || dd.summands[i].degree != -2) {
          lines_ok = false;
          break;
        }
        lines.push_back(&dd.summands[i]);
      }
      if (!lines_ok || lines.empty()) continue;
      // all the lines must be one class, and the twist must sit over it
      Tri lines_same = Tri::pass;
      for (std::size_t i = 0; i + 1 < lines.size() && lines_same != Tri::fail; ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
          Tri t = same_line(*lines[i], *lines[j]);
          if (t == Tri::fail) {
            lines_same = Tri::fail;
            break;
          }
          if (t == Tri::unknown && lines_same == Tri::pass) lines_same = Tri::unknown;
        }
      if (lines_same == Tri::fail) continue;
      Tri base_match;
      if (twist.kind == SummandDescriptor::Kind::atiyah_twist) {
        const SummandDescriptor* labeled = nullptr;
        for (const auto* l : lines)
          if (l->kind == SummandDescriptor::Kind::line) labeled = l;
        if (labeled)
          base_match = labeled->label == twist.label ? Tri::pass : Tri::fail;
        else
          base_match = Tri::unknown;
      } else {
        base_match = Tri::unknown;  // generic rank-2: twist base line unknown
      }
      if (base_match == Tri::fail) continue;
      if (lines_same == Tri::pass && base_match == Tri::pass)
        return {Tri::fail, "the non-split extension L^" + std::to_string(r - 2) +
                               " (+) (F_2 tensor L) admits 0 -> L^" + std::to_string(r - 1) +
                               " -> F -> L -> 0"};
      return {Tri::unknown,
              "cannot decide whether the rank-2 summand is the Atiyah extension over the "
              "degree -2 line summand"};
    }
  }
  return {};
}

}  // namespace

Verdict is_restricted_cotangent(const DecompositionData& dd) {
  check(!dd.summands.empty(), errc::invalid_input, "empty decomposition");
  std::int64_t r = dd.total_rank();
  check(r >= 3, errc::rank_too_small, "classifier needs total rank >= 3");
  check(slopes_sorted(dd), errc::unordered_slopes,
        "summands must be sorted by non-increasing slope");

  struct Named {
    const char* name;
    ConditionResult result;
  };
  Named results[] = {
      {"i", condition_i(dd)},
      {"ii", condition_ii(dd, r)},
      {"iii", condition_iii(dd, r)},
      {"iv", condition_iv(dd, r)},
  };
  for (const auto& [name, result] : results)
    if (result.state == Tri::fail) return {Verdict::Outcome::no, name, result.reason};
  for (const auto& [name, result] : results)
    if (result.state == Tri::unknown)
      return {Verdict::Outcome::indeterminate, name, result.reason};
  check(dd.summands.front().slope() < Rational(-1), errc::internal,
        "accepted decomposition with max slope >= -1");
  return {Verdict::Outcome::yes, "", ""};
}

std::vector<Rank3Entry> rank3_table() {
  auto expect_rank3 = [](const DecompositionData& dd) {
    check(dd.total_rank() == 3, errc::invalid_input, "rank-3 table needs total rank 3");
  };

  std::vector<Rank3Entry> table;
  table.push_back(Rank3Entry{
      "indecomposable", "accept iff deg(F) <= -4",
      [expect_rank3](const DecompositionData& dd) -> Verdict {
        expect_rank3(dd);
        check(dd.summands.size() == 1, errc::invalid_input, "shape mismatch");
        if (dd.summands[0].degree <= -4) return {Verdict::Outcome::yes, "", ""};
        return {Verdict::Outcome::no, "i", "deg(F) > -4"};
      }});
  table.push_back(Rank3Entry{
      "rank2+line",
      "accept iff deg(F1) <= -4 and deg(L) <= -2; at (-4,-2) additionally Hom(F1,L) = 0",
      [expect_rank3](const DecompositionData& dd) -> Verdict {
        expect_rank3(dd);
        check(dd.summands.size() == 2, errc::invalid_input, "shape mismatch");
        const auto& f1 = dd.summands[dd.summands[0].rank == 2 ? 0 : 1];
        const auto& line = dd.summands[dd.summands[0].rank == 2 ? 1 : 0];
        check(f1.rank == 2 && line.rank == 1, errc::invalid_input, "shape mismatch");
        if (line.degree >= -1)
          return {Verdict::Outcome::no, "i", "deg(L) > -2"};
        if (f1.degree == -3)
          return {Verdict::Outcome::no, "ii", "F1 stable of degree -3 = -r"};
        if (f1.degree > -3)
          return {Verdict::Outcome::no, "i", "slope of F1 is not < -1"};
        if (f1.degree == -4 && line.degree == -2) {
          if (f1.kind == SummandDescriptor::Kind::atiyah_twist &&
              line.kind == SummandDescriptor::Kind::line)
            return f1.label == line.label
                       ? Verdict{Verdict::Outcome::no, "iv", "Hom(F1, L) != 0: F1 = F_2 tensor L"}
                       : Verdict{Verdict::Outcome::yes, "", ""};
          return {Verdict::Outcome::indeterminate, "iv",
                  "Hom(F1, L) undecidable without isomorphism data"};
        }
        return {Verdict::Outcome::yes, "", ""};
      }});
  table.push_back(Rank3Entry{
      "three lines",
      "accept iff all deg(L_i) <= -2 and no two degree -2 lines are isomorphic",
      [expect_rank3](const DecompositionData& dd) -> Verdict {
        expect_rank3(dd);
        check(dd.summands.size() == 3, errc::invalid_input, "shape mismatch");
        for (const auto& s : dd.summands) {
          check(s.rank == 1, errc::invalid_input, "shape mismatch");
          if (s.degree >= -1) return {Verdict::Outcome::no, "i", "a line has degree > -2"};
        }
        bool unknown = false;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = i + 1; j < 3; ++j) {
            if (dd.summands[i].degree != -2 || dd.summands[j].degree != -2) continue;
            Tri t = same_line(dd.summands[i], dd.summands[j]);
            if (t == Tri::pass)
              return {Verdict::Outcome::no, "iv", "two isomorphic line bundles of degree -2"};
            if (t == Tri::unknown) unknown = true;
          }
        if (unknown)
          return {Verdict::Outcome::indeterminate, "iv",
                  "isomorphism of degree -2 lines undecidable without labels"};
        return {Verdict::Outcome::yes, "", ""};
      }});
  return table;
}

SplittingCase feed_formula(const DecompositionData& dd, std::int64_t delta) {
  check(dd.total_rank() == 3, errc::decomposition_inconsistent, "total rank must be 3");
  check(dd.total_degree() == -4 * delta, errc::decomposition_inconsistent,
        "total degree must be -4*delta");
  if (dd.summands.size() == 1) return IndecomposableCase{dd.summands[0].degree};
  if (dd.summands.size() == 2) {
    const auto& s = dd.summands[dd.summands[0].rank == 2 ? 0 : 1];
    const auto& m = dd.summands[dd.summands[0].rank == 2 ? 1 : 0];
    check(s.rank == 2 && m.rank == 1, errc::decomposition_inconsistent,
          "rank pattern must be (2,1)");
    return RankTwoPlusLineCase{s.degree, m.degree};
  }
  check(dd.summands.size() == 3, errc::decomposition_inconsistent, "at most three summands");
  ThreeLinesCase out;
  for (std::size_t i = 0; i < 3; ++i) {
    check(dd.summands[i].rank == 1, errc::decomposition_inconsistent, "three summands must be lines");
    out.degrees[i] = dd.summands[i].degree;
  }
  return out;
}

}  // namespace ellhk
