#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nikulin/io.hpp"
#include "nikulin/model.hpp"
#include "nikulin/orbit.hpp"

namespace nikulin {

enum class ClaimStatus { Verified, Refuted, NotCheckable };

std::string to_string(ClaimStatus s);
std::optional<ClaimStatus> claim_status_from_string(const std::string& s);

struct Claim {
  std::string id;
  std::string description;
  /// Status an exact run is expected to produce with the default eta variant.
  ClaimStatus expected = ClaimStatus::Verified;
};

/// The fixed catalog, in report order.
const std::vector<Claim>& claim_catalog();

struct ClaimResult {
  std::string id;
  ClaimStatus status = ClaimStatus::NotCheckable;
  ClaimStatus expected = ClaimStatus::Verified;
  Json computed = Json::object();
  std::string note;

  bool as_expected() const { return status == expected; }
};

struct AuditOptions {
  OrbitBudget budget;
  /// Eta variants to report on; empty means every registered variant with
  /// "as-written" first. The first entry decides the status of the eta claims.
  std::vector<std::string> eta_variants;
  /// Claims run concurrently on this many threads; the report order is fixed.
  std::size_t workers = 1;
};

struct AuditReport {
  std::vector<ClaimResult> results;

  std::size_t count(ClaimStatus s) const;
  bool all_as_expected() const;
  /// [{"id", "status", "expected", "computed", "note"}, ...]
  Json to_json() const;
  static AuditReport from_json(const Json& j);
  std::string to_text() const;
};

/// Runs one catalog entry. Unknown ids throw DomainError.
ClaimResult run_claim(const NamedModel& model, const std::string& id, const AuditOptions& options = {});

AuditReport run_all(const NamedModel& model, const AuditOptions& options = {});

/// Intersection arithmetic for a fibration class l_X = a (H - delta):
///   3 (a qH) qH = N,  k^2 = a^2 q / 2,  (l_Y, SigmaY) = -2k.
struct MtCoefficients {
  bool consistent = false;
  std::string error;  // set when the inputs admit no integral solution
  Integer a;
  std::vector<Integer> k_candidates;
  std::vector<Integer> pair_sigma;  // -2k for each candidate
  int pair_sigma_mod4 = 0;
  /// "A" when (l_Y, SigmaY) = 2 mod 4, else "undetermined-by-lemma".
  std::string type;
};

/// qH must be positive (DomainError otherwise).
MtCoefficients mt_coefficients(const Integer& qH, const Integer& intersection_number, const Integer& q_h_minus_delta);

Json to_json(const MtCoefficients& m);

}  // namespace nikulin
