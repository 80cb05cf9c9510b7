#pragma once

#include <optional>
#include <vector>

#include "nikulin/lattice.hpp"
#include "nikulin/matrix.hpp"

namespace nikulin {

/// An integral matrix preserving the Gram form of its lattice. Isometries
/// built by `reflection` remember their root, which lets the orbit kernels
/// apply them in O(rank) instead of O(rank^2).
class Isometry {
 public:
  /// Throws DomainError unless matrix is a Gram-preserving square matrix of
  /// the lattice's rank.
  Isometry(LatticePtr lattice, IntMatrix matrix);

  static Isometry identity(LatticePtr lattice);

  const LatticePtr& lattice() const { return lattice_; }
  const IntMatrix& matrix() const { return matrix_; }
  const std::optional<LatticeVector>& root() const { return root_; }

  LatticeVector operator()(const LatticeVector& x) const;
  Isometry inverse() const;

  friend bool operator==(const Isometry& a, const Isometry& b) {
    return a.lattice_->same_as(*b.lattice_) && a.matrix_ == b.matrix_;
  }

 private:
  friend Isometry reflection(const LatticeVector& root);
  Isometry(LatticePtr lattice, IntMatrix matrix, LatticeVector root);

  LatticePtr lattice_;
  IntMatrix matrix_;
  std::optional<LatticeVector> root_;
};

/// x -> x + (x, v) v. Integral and involutive exactly when v^2 = -2.
Isometry reflection(const LatticeVector& root);

/// a after b.
Isometry compose(const Isometry& a, const Isometry& b);

bool is_isometry(const Lattice& lattice, const IntMatrix& m);

}  // namespace nikulin
