#include "nikulin/classify.hpp"

#include <stdexcept>

namespace nikulin {

namespace {

bool all_even(std::span<const Integer> coords) {
  for (const auto& c : coords)
    if (!divides(2, c)) return false;
  return true;
}

bool all_divisible_by_4(std::span<const Integer> coords) {
  for (const auto& c : coords)
    if (!divides(4, c)) return false;
  return true;
}

// i with q = slope * i + offset, if integral.
std::optional<Integer> solve_parameter(const Integer& q, long slope, long offset) {
  Integer shifted = q - offset;
  if (!divides(slope, shifted)) return std::nullopt;
  Integer i;
  mpz_divexact_ui(i.get_mpz_t(), shifted.get_mpz_t(), static_cast<unsigned long>(slope));
  return i;
}

void require_vector_in_y(const NamedModel& model, const LatticeVector& v) {
  if (!v.lattice()->same_as(*model.lambda_y())) throw DomainError("expected a vector of LY, got " + v.lattice()->label());
  if (v.is_zero()) throw DomainError("zero vector");
}

}  // namespace

std::string to_string(OrbitCase c) {
  switch (c) {
    case OrbitCase::Star1: return "Star1";
    case OrbitCase::Case2: return "Case2";
    case OrbitCase::Case3: return "Case3";
    case OrbitCase::Case4: return "Case4";
    case OrbitCase::Case5: return "Case5";
    case OrbitCase::Case6: return "Case6";
    case OrbitCase::Case7: return "Case7";
    case OrbitCase::Case8: return "Case8";
    case OrbitCase::Case9: return "Case9";
    case OrbitCase::Unmatched: return "Unmatched";
  }
  return "?";
}

std::optional<OrbitCase> orbit_case_from_string(const std::string& s) {
  for (auto c : {OrbitCase::Star1, OrbitCase::Case2, OrbitCase::Case3, OrbitCase::Case4, OrbitCase::Case5,
                 OrbitCase::Case6, OrbitCase::Case7, OrbitCase::Case8, OrbitCase::Case9, OrbitCase::Unmatched})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

std::string to_string(FibrationKind k) { return k == FibrationKind::A ? "A" : "B"; }

std::pair<int, int> polarisation_of(FibrationKind k) {
  return k == FibrationKind::A ? std::pair{1, 2} : std::pair{1, 1};
}

VectorProfile vector_profile(const NamedModel& model, const LatticeVector& v) {
  require_vector_in_y(model, v);
  const Lattice& ly = *model.lambda_y();
  VectorProfile p;
  p.q = square(v);
  p.div = divisibility(v);
  p.primitive = is_primitive(v);

  std::vector<Integer> u_part;
  for (const char* b : {"U1", "U2", "U3"}) {
    const auto c = v.block_coords(ly.block(b));
    u_part.insert(u_part.end(), c.begin(), c.end());
  }
  p.u_part_div_by_2 = all_even(u_part);

  const Block& e8 = ly.block("E8");
  p.e8_part = v.block_coords(e8);
  p.e8_part_div_by_2 = all_even(p.e8_part);
  p.e8_residue_mod4_zero = all_divisible_by_4(p.e8_part);
  p.q_e8 = square(v.project(e8));
  p.q_e8_mod4 = static_cast<int>(mod(p.q_e8, 4).get_si());

  p.gamma_k = v[layout::kY_Gamma1];
  p.gamma_m = v[layout::kY_Gamma2];
  p.gamma_in_delta_sigma_span = divides(2, p.gamma_k - p.gamma_m);
  p.pair_sigma = pair(v, model.sigma_y());
  p.pair_sigma_mod4 = static_cast<int>(mod(p.pair_sigma, 4).get_si());
  return p;
}

StarCondition star_condition(const NamedModel& model, const LatticeVector& v) {
  const auto p = vector_profile(model, v);
  return {!p.u_part_div_by_2, p.e8_part_div_by_2, p.gamma_in_delta_sigma_span};
}

LatticeVector row_representative(const NamedModel& m, OrbitCase row, const Integer& i) {
  const Integer two = 2;
  switch (row) {
    case OrbitCase::Star1: return m.L(i);
    case OrbitCase::Case2: return two * m.L(i) - m.delta_y();
    case OrbitCase::Case3: return two * m.L(i + 1) + two * m.e2() - m.delta_y();
    case OrbitCase::Case4: return m.L(i) - m.gamma1();
    case OrbitCase::Case5: return m.L(i + 1) + m.e2() - m.gamma1();
    case OrbitCase::Case6: return m.L(i) + m.e1();
    case OrbitCase::Case7: return two * m.L(i) + two * m.e1() - m.delta_y();
    case OrbitCase::Case8: return m.L(i) + m.e1() - m.gamma1();
    case OrbitCase::Case9: return m.L(i + 1) + m.e2();
    case OrbitCase::Unmatched: break;
  }
  throw DomainError("Unmatched has no representative");
}

std::string row_formula(OrbitCase row, const Integer& i) {
  const std::string L = "L(" + i.get_str() + ")";
  const std::string L_next = "L(" + Integer(i + 1).get_str() + ")";
  switch (row) {
    case OrbitCase::Star1: return L;
    case OrbitCase::Case2: return "2*" + L + "-deltaY";
    case OrbitCase::Case3: return "2*" + L_next + "+2*e2-deltaY";
    case OrbitCase::Case4: return L + "-gamma1";
    case OrbitCase::Case5: return L_next + "+e2-gamma1";
    case OrbitCase::Case6: return L + "+e1";
    case OrbitCase::Case7: return "2*" + L + "+2*e1-deltaY";
    case OrbitCase::Case8: return L + "+e1-gamma1";
    case OrbitCase::Case9: return L_next + "+e2";
    case OrbitCase::Unmatched: break;
  }
  throw DomainError("Unmatched has no representative");
}

std::vector<std::pair<OrbitCase, Integer>> matching_rows(const VectorProfile& p) {
  std::vector<std::pair<OrbitCase, Integer>> out;
  auto consider = [&](OrbitCase row, bool guard, long slope, long offset) {
    if (!guard) return;
    if (auto i = solve_parameter(p.q, slope, offset)) out.emplace_back(row, *i);
  };
  const bool div2 = p.div == 2;
  const bool div1 = p.div == 1;
  consider(OrbitCase::Case2, div2 && p.e8_residue_mod4_zero, 16, -4);
  consider(OrbitCase::Case3, div2 && !p.e8_residue_mod4_zero, 16, -4);
  consider(OrbitCase::Case4, div2 && p.e8_residue_mod4_zero, 4, -2);
  consider(OrbitCase::Case5, div1 && p.q_e8_mod4 == 0, 4, -2);
  consider(OrbitCase::Case6, div1 && p.q_e8_mod4 == 2, 4, -2);
  consider(OrbitCase::Case7, div2 && !p.e8_residue_mod4_zero, 16, -12);
  consider(OrbitCase::Case8, div1 && p.q_e8_mod4 == 2, 4, -4);
  consider(OrbitCase::Case9, div1 && p.q_e8_mod4 == 0, 4, 0);
  return out;
}

OrbitClass classify_orbit(const NamedModel& model, const LatticeVector& v) {
  require_vector_in_y(model, v);
  OrbitClass out;
  out.profile = vector_profile(model, v);
  if (!out.profile.primitive) throw DomainError("vector not primitive");

  const StarCondition star{!out.profile.u_part_div_by_2, out.profile.e8_part_div_by_2,
                           out.profile.gamma_in_delta_sigma_span};
  if (star.holds()) {
    auto i = solve_parameter(out.profile.q, 4, 0);
    if (!i) throw std::logic_error("vector satisfying (*) has q not divisible by 4");
    out.orbit_case = OrbitCase::Star1;
    out.i = *i;
  } else {
    const auto rows = matching_rows(out.profile);
    if (rows.size() > 1)
      throw std::logic_error("orbit table rows " + to_string(rows[0].first) + " and " + to_string(rows[1].first) +
                             " both match " + format_coords(v.coords_span()));
    if (rows.empty()) return out;
    out.orbit_case = rows.front().first;
    out.i = rows.front().second;
  }

  auto rep = row_representative(model, out.orbit_case, out.i);
  if (square(rep) != out.profile.q || divisibility(rep) != out.profile.div)
    throw std::logic_error("representative of " + to_string(out.orbit_case) + " does not match the input invariants");
  out.representative = std::move(rep);
  return out;
}

FibrationType classify_isotropic_type(const NamedModel& model, const LatticeVector& v) {
  require_vector_in_y(model, v);
  const auto p = vector_profile(model, v);
  if (!p.primitive) throw DomainError("vector not primitive");
  if (p.q != 0) throw DomainError("vector not isotropic (square " + p.q.get_str() + ")");
  FibrationType out{FibrationKind::A, model.L(1) + model.e2(), {1, 2}, p.pair_sigma_mod4, p.pair_sigma_mod4 == 2};
  if (p.div == 2) {
    out.kind = FibrationKind::B;
    out.orbit_representative = model.L(0);
    out.polarisation = polarisation_of(FibrationKind::B);
  } else if (p.div != 1) {
    throw std::logic_error("primitive isotropic vector of divisibility " + p.div.get_str());
  }
  if (out.sigma_pairing_forces_a && out.kind != FibrationKind::A)
    throw std::logic_error("(v, SigmaY) = 2 mod 4 but divisibility is 2");
  return out;
}

}  // namespace nikulin
