#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ellhk/poly.hpp"

namespace ellhk {

/// Per-degree reduction data for R_m = (S/a)_m. The standard monomials are
/// the complement of the pivot monomials of the echelonized span of
/// { g * mu : g ideal generator, deg mu = m - deg g }; leading/pivot
/// monomials agree between the two backends, so callers never see which one
/// produced the data.
struct DegreeData {
  int m = 0;
  std::vector<Monomial> monomials;                 // all of S_m, grevlex descending
  std::unordered_map<std::uint64_t, std::int32_t> position;  // packed monomial -> index
  std::vector<std::int32_t> pos_to_std;            // -1 on pivot positions
  std::vector<std::int32_t> std_positions;         // basis of R_m, ascending position

  // division backend: reducing generator per pivot position
  std::vector<std::int8_t> pos_gen;
  // echelon backend: fully reduced pivot rows, tails over the standard basis
  std::vector<std::int32_t> pos_pivot_row;
  std::vector<std::vector<std::uint32_t>> pivot_tails;
  bool division_mode = true;

  int dim() const { return int(std_positions.size()); }
};

enum class ReductionBackend {
  automatic,  // division by leading terms when certified, echelon otherwise
  echelon,    // force the generic echelon-of-generator-multiples path
};

/// Graded quotient R = k[X0..XN]/a for a homogeneous ideal a, with cached
/// per-degree standard-monomial bases. When expected_delta is set, every
/// cached degree m >= 1 is checked against dim R_m = delta*m and a mismatch
/// is a hard error: the downstream formulas assume the genus-1 Hilbert
/// function, so a mismatch invalidates the whole run.
///
/// A presentation is immutable after construction; per-degree cache
/// population is serialized internally, concurrent reads are safe.
class GradedQuotientPresentation {
public:
  GradedQuotientPresentation(FieldPtr field, std::size_t num_vars,
                             std::vector<HomogeneousPoly> ideal_gens,
                             std::optional<int> expected_delta,
                             ReductionBackend backend = ReductionBackend::automatic);

  const FieldCtx& field() const { return *field_; }
  FieldPtr field_ptr() const { return field_; }
  std::size_t num_vars() const { return num_vars_; }
  const std::vector<HomogeneousPoly>& ideal_gens() const { return gens_; }
  std::optional<int> expected_delta() const { return expected_delta_; }

  /// True when the generators certify the division backend syntactically:
  /// a single generator, or pairwise coprime leading monomials (Buchberger's
  /// first criterion). Informational; callers get the same answers either way.
  bool division_certified() const { return division_certified_; }

  /// Quotient rings of this shape are generated in degree one.
  bool standard_graded() const { return true; }

  std::shared_ptr<const DegreeData> degree_data(int m) const;

  /// dim R_m; 0 for negative m.
  int graded_dim(int m) const;

  /// Standard monomial basis of R_m.
  std::vector<Monomial> graded_piece(int m) const;

  /// Coordinates of f modulo a in the standard basis of R_{deg f}.
  std::vector<std::uint32_t> normal_form(const HomogeneousPoly& f) const;

  /// Kernel-level reducer: accumulate the residue of sum coeff*mono (all of
  /// degree dd.m) into out (length dd.dim(), caller-zeroed). scratch must
  /// have length dd.monomials.size(); it is clobbered.
  void reduce_terms(const DegreeData& dd, const std::vector<HomogeneousPoly::Term>& terms,
                    std::uint32_t* out, std::vector<std::uint32_t>& scratch) const;

private:
  std::shared_ptr<const DegreeData> build_degree(int m) const;
  void build_division(DegreeData& dd) const;
  void build_echelon(DegreeData& dd) const;

  FieldPtr field_;
  std::size_t num_vars_;
  std::vector<HomogeneousPoly> gens_;  // monic
  std::optional<int> expected_delta_;
  ReductionBackend backend_;
  bool division_certified_ = false;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<int, std::shared_ptr<const DegreeData>> cache_;
};

using PresentationPtr = std::shared_ptr<const GradedQuotientPresentation>;

/// Evaluation map (+)_i R_{m - deg f_i} -> R_m with multiplier polynomials
/// f_i, in standard-monomial coordinates.
struct GradedMap {
  PresentationPtr pres;
  std::vector<HomogeneousPoly> multipliers;
  int target_degree = 0;
};

struct MapDims {
  std::int64_t source_dim = 0;
  std::int64_t rank = 0;
  std::int64_t kernel_dim = 0;
};

MapDims map_dims(const GradedMap& map);
std::int64_t image_rank(const GradedMap& map);
std::int64_t kernel_dim(const GradedMap& map);

/// Projective emptiness test for the singular locus: true iff the ideal
/// generated by gens and the codimension-sized minors of their Jacobian
/// contains every form of some degree m <= bound. The sweep is decisive:
/// a Macaulay-type regularity bound caps the degree at which fullness must
/// occur for an empty locus, so falling through proves a singular point
/// (possibly over an extension field). errors bound_exceeded only in the
/// defensive case that the configured bound cannot reach the decisive one.
bool is_projectively_smooth(const std::vector<HomogeneousPoly>& gens);

}  // namespace ellhk
