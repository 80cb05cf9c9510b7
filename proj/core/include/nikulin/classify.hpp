#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nikulin/lattice.hpp"
#include "nikulin/model.hpp"

namespace nikulin {

/// Numerical invariants of a vector of Lambda_Y that the orbit table reads.
struct VectorProfile {
  Integer q;
  Integer div;
  bool primitive = false;
  bool u_part_div_by_2 = false;
  std::vector<Integer> e8_part;  // 8 coordinates in the eps basis
  bool e8_part_div_by_2 = false;
  /// Image of the E8(-1) part in E8(-1)/4E8(-1) is zero.
  bool e8_residue_mod4_zero = false;
  Integer q_e8;
  int q_e8_mod4 = 0;
  Integer gamma_k;  // gamma1 coordinate
  Integer gamma_m;  // gamma2 coordinate
  bool gamma_in_delta_sigma_span = false;
  Integer pair_sigma;
  int pair_sigma_mod4 = 0;
};

struct StarCondition {
  bool u_part_not_div_by_2 = false;
  bool e8_part_div_by_2 = false;
  bool gamma_in_delta_sigma_span = false;

  bool holds() const { return u_part_not_div_by_2 && e8_part_div_by_2 && gamma_in_delta_sigma_span; }
};

enum class OrbitCase { Star1, Case2, Case3, Case4, Case5, Case6, Case7, Case8, Case9, Unmatched };

std::string to_string(OrbitCase c);
std::optional<OrbitCase> orbit_case_from_string(const std::string& s);

struct OrbitClass {
  OrbitCase orbit_case = OrbitCase::Unmatched;
  Integer i;
  std::optional<LatticeVector> representative;
  VectorProfile profile;

  bool negative_parameter() const { return orbit_case != OrbitCase::Unmatched && i < 0; }
};

enum class FibrationKind { A, B };

struct FibrationType {
  FibrationKind kind = FibrationKind::A;
  LatticeVector orbit_representative;
  std::pair<int, int> polarisation;
  int pair_sigma_mod4 = 0;
  /// (v, SigmaY) = 2 mod 4 forces type A.
  bool sigma_pairing_forces_a = false;
};

std::string to_string(FibrationKind k);

VectorProfile vector_profile(const NamedModel& model, const LatticeVector& v);
StarCondition star_condition(const NamedModel& model, const LatticeVector& v);

/// Printed representative of a row with parameter i.
LatticeVector row_representative(const NamedModel& model, OrbitCase row, const Integer& i);

/// The representative as a vector expression, e.g. "2*L(2)+2*e2-deltaY".
std::string row_formula(OrbitCase row, const Integer& i);

/// Rows 2..9 whose (div, q, E8 residue) signature v satisfies, with the
/// parameter i solved from q. Used by the classifier and by the table audit.
std::vector<std::pair<OrbitCase, Integer>> matching_rows(const VectorProfile& p);

OrbitClass classify_orbit(const NamedModel& model, const LatticeVector& v);

FibrationType classify_isotropic_type(const NamedModel& model, const LatticeVector& v);

/// Fibre polarisation attached to a type.
std::pair<int, int> polarisation_of(FibrationKind k);

}  // namespace nikulin
