#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ellhk/formulas.hpp"
#include "ellhk/rational.hpp"

namespace ellhk {

/// Symbolic description of one indecomposable summand of a bundle on an
/// elliptic curve. Labels name isomorphism classes of line bundles among
/// the summands: equal labels mean the same line bundle, distinct labels
/// mean non-isomorphic ones (of possibly equal degree).
struct SummandDescriptor {
  enum class Kind {
    generic,       // indecomposable, no isomorphism data
    line,          // rank 1 with iso label
    atiyah_twist,  // F_r tensor L(label): the unique indecomposable rank-r
                   // degree-0 bundle with a section, twisted by the line
  };

  std::int64_t rank = 1;
  std::int64_t degree = 0;
  Kind kind = Kind::generic;
  std::string label;  // line: own label; atiyah_twist: base line label

  Rational slope() const { return Rational(BigInt(degree), BigInt(rank)); }
};

/// slope = degree/rank; indecomposables of rank >= 2 are stable iff rank
/// and degree are coprime, line bundles always.
Rational slope(const SummandDescriptor& s);
bool is_stable(const SummandDescriptor& s);

struct DecompositionData {
  std::vector<SummandDescriptor> summands;

  /// Sorts by non-increasing slope and validates label/kind consistency.
  static DecompositionData make(std::vector<SummandDescriptor> summands);

  std::int64_t total_rank() const;
  std::int64_t total_degree() const;
};

struct Verdict {
  enum class Outcome { yes, no, indeterminate };
  Outcome outcome = Outcome::yes;
  std::string failed_condition;  // "i".."iv" when outcome == no
  std::string reason;

  bool accepted() const { return outcome == Outcome::yes; }
};

/// Decides whether the decomposition can arise as Omega_{P^r}(1) restricted
/// to an elliptic curve along some embedding (rank r >= 3, no global
/// sections). Descriptors without enough isomorphism data to settle a
/// Hom/extension clause yield indeterminate rather than a guess.
Verdict is_restricted_cotangent(const DecompositionData& dd);

/// The rank-3 case list with explicit accept/reject predicates.
struct Rank3Entry {
  std::string shape;       // "indecomposable", "rank2+line", "three lines"
  std::string predicate;   // human-readable description
  std::function<Verdict(const DecompositionData&)> decide;
};
std::vector<Rank3Entry> rank3_table();

/// Maps a rank-3, total-degree -4*delta decomposition onto the splitting
/// case taken by hk_space_curve.
SplittingCase feed_formula(const DecompositionData& dd, std::int64_t delta);

}  // namespace ellhk
