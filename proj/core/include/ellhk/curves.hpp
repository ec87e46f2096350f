#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellhk/presentation.hpp"

namespace ellhk {

/// A validated smooth genus-1 presentation: the smoothness check and the
/// Hilbert-function check (dim R_m = delta*m) have both passed before the
/// spec is handed to the oracle.
struct CurveSpec {
  std::string name;
  FieldPtr field;
  std::size_t num_vars = 3;
  int delta = 3;
  std::vector<HomogeneousPoly> gens;
  PresentationPtr presentation;
  bool validated = false;
};

struct CurveValidation {
  bool check_smooth = true;
  int hilbert_degree_bound = 12;
};

/// Builds and validates; errors singular_curve / hilbert_mismatch on bad input.
CurveSpec build_curve(std::string name, FieldPtr field, std::size_t num_vars, int delta,
                      std::vector<HomogeneousPoly> gens, const CurveValidation& v = {});

/// X^3 + Y^3 + Z^3 + lambda*X*Y*Z (lambda = 0 gives the Fermat cubic).
HomogeneousPoly hesse_cubic(FieldPtr field, std::uint32_t lambda_code);

/// Hasse invariant of a smooth plane cubic: 0 iff the coefficient of
/// (XYZ)^(p-1) in F^(p-1) vanishes. errors not_a_cubic / singular_curve.
int hasse_invariant(const HomogeneousPoly& cubic);

/// The built-in validated curves. Construction is lazy and happens once.
const std::vector<CurveSpec>& catalog();

/// Accepts a catalog name, a family name (fermat:p<P>, hesse:p<P>:l<v>,
/// hesse:p2:lF8), or a path to a curve spec JSON file.
CurveSpec resolve_curve(const std::string& name_or_path);

CurveSpec curve_from_json(const std::string& json_text);
std::string curve_to_json(const CurveSpec& spec);

/// Canonical string for hashing/reporting.
std::string curve_fingerprint(const CurveSpec& spec);

}  // namespace ellhk
