#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellhk/curves.hpp"
#include "ellhk/oracle.hpp"

namespace ellhk {

struct HKReportRow {
  std::uint64_t q = 1;
  BigInt phi_oracle;
  BigInt phi_formula;
  Rational gamma;
  std::vector<std::pair<int, std::int64_t>> profile;

  friend bool operator==(const HKReportRow&, const HKReportRow&) = default;
};

inline bool operator==(const PeriodicityDiagnosis& a, const PeriodicityDiagnosis& b) {
  return a.stabilized == b.stabilized && a.onset_e == b.onset_e && a.period == b.period;
}

/// Cross-validation record: brute-force totals against the closed form for
/// q = p^e, e = 0..E. Match means exact integer equality at every q.
struct HKReport {
  std::string curve;
  std::string spec_hash;
  std::string ideal;
  Rational e_hk;
  std::vector<HKReportRow> rows;
  bool match = false;
  std::string mismatch_details;
  PeriodicityDiagnosis gamma_cycle;
  std::optional<double> timing_ms;  // only set when timing was requested

  friend bool operator==(const HKReport&, const HKReport&) = default;
};

/// Runs the oracle for e = 0..e_max and the semistable closed form with the
/// oracle-backed h1 policy, and compares. Requires the maximal ideal of a
/// complete embedding (dim R_1 = delta = number of variables), which covers
/// every catalog curve. errors invalid_input when no formula route applies.
HKReport verify_curve(const CurveSpec& spec, const std::vector<HomogeneousPoly>& ideal,
                      const std::string& ideal_description, int e_max,
                      const OracleOptions& opts = {}, bool with_timing = false);

std::string report_to_json(const HKReport& report);
HKReport report_from_json(const std::string& text);

std::uint64_t fnv1a(const std::string& text);

}  // namespace ellhk
