#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nikulin/isometry.hpp"
#include "nikulin/lattice.hpp"
#include "nikulin/sublattice.hpp"

namespace nikulin {

// Coordinate layout (0-based) of the three lattices, fixed once and for all.
//
//   Lambda_Y   (rank 16) = U(2)^3 + E8(-1) + <-2>^2
//     blocks U1 [0,2) U2 [2,4) U3 [4,6) E8 [6,14) G1 {14} G2 {15}
//   Lambda_X   (rank 23) = U^3 + E8(-1)^2 + <-2>
//     blocks U1 U2 U3 [0,6) E8a [6,14) E8b [14,22) D {22}
//   Lambda_fix (rank 15) = U^3 + E8(-2) + <-2>
//     blocks U1 U2 U3 [0,6) E8 [6,14) A {14}
//
// Inside every E8 block the basis is eps1..eps8 with Gram e8_neg_gram().
namespace layout {
inline constexpr std::size_t kY_E8 = 6;
inline constexpr std::size_t kY_Gamma1 = 14;
inline constexpr std::size_t kY_Gamma2 = 15;
inline constexpr std::size_t kX_E8a = 6;
inline constexpr std::size_t kX_E8b = 14;
inline constexpr std::size_t kX_Delta = 22;
inline constexpr std::size_t kFix_E8 = 6;
inline constexpr std::size_t kFix_Alpha = 14;
}  // namespace layout

/// One registered matrix for the Lambda_fix -> Lambda_Y embedding.
struct EtaVariant {
  std::string name;
  IntMatrix matrix;  // 16 x 15
};

/// The three lattices with their fixed bases and the named classes of
/// Lambda_Y. Built once and shared read-only.
class NamedModel {
 public:
  NamedModel();

  const LatticePtr& lambda_x() const { return lambda_x_; }
  const LatticePtr& lambda_fix() const { return lambda_fix_; }
  const LatticePtr& lambda_y() const { return lambda_y_; }
  /// Lambda_fix with its form doubled; the domain of eta.
  const LatticePtr& lambda_fix_doubled() const { return lambda_fix_doubled_; }

  // Named vectors of Lambda_Y.
  LatticeVector u(std::size_t k) const;    // k = 1..6, basis of U(2)^3
  LatticeVector eps(std::size_t k) const;  // k = 1..8, simple roots
  LatticeVector L(const Integer& i) const;  // u1 + i u2
  LatticeVector e1() const;                 // eps1
  LatticeVector e2() const;                 // eps1 + eps3
  LatticeVector ew() const;                 // eps4 + eps6
  LatticeVector gamma1() const;
  LatticeVector gamma2() const;
  LatticeVector delta_y() const;  // gamma1 + gamma2
  LatticeVector sigma_y() const;  // gamma1 - gamma2
  LatticeVector w() const;        // L(1) + ew + gamma1

  /// Resolves a symbolic name ("L", "e2", "gamma1", "u", "eps", ...). The
  /// argument is required for L, u and eps and forbidden otherwise.
  LatticeVector named(const std::string& name, std::optional<Integer> arg) const;
  static const std::vector<std::string>& names();

  /// sigma^* on Lambda_X: exchanges the two E8(-1) blocks.
  LatticeVector sigma_star(const LatticeVector& v) const;
  Isometry sigma_star_isometry() const;
  /// Lambda_fix -> Lambda_X, u + e + a -> u + (e, e) + a delta_X.
  EmbeddingMap fix_to_x() const;

  /// Registered eta variants; "as-written" is always present.
  std::vector<std::string> eta_variant_names() const;
  const EtaVariant& eta_variant(const std::string& name) const;
  void register_eta_variant(EtaVariant variant);
  /// Embedding Lambda_fix(2) -> Lambda_Y for a variant.
  EmbeddingMap eta_embedding(const std::string& variant) const;
  /// eta applied to a vector of Lambda_fix (or Lambda_fix(2)).
  LatticeVector eta(const std::string& variant, const LatticeVector& v) const;

 private:
  LatticePtr lambda_x_;
  LatticePtr lambda_fix_;
  LatticePtr lambda_fix_doubled_;
  LatticePtr lambda_y_;
  std::map<std::string, EtaVariant> eta_variants_;
};

/// Shared immutable default model (no user variants).
const NamedModel& default_model();

/// The eta matrix u + e + a -> u + 2e + a gamma1 + a gamma2.
IntMatrix eta_as_written_matrix();

}  // namespace nikulin
