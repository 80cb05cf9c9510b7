#pragma once

#include <vector>

#include "nikulin/lattice.hpp"
#include "nikulin/matrix.hpp"

namespace nikulin {

/// left * M * right = diagonal, with left and right unimodular. The inverses
/// are tracked alongside so callers never invert a matrix themselves.
struct SmithDecomposition {
  IntMatrix left;
  IntMatrix diagonal;
  IntMatrix right;
  IntMatrix left_inverse;
  IntMatrix right_inverse;

  /// Nonzero diagonal entries in order; each divides the next.
  std::vector<Integer> invariant_factors() const;
  std::size_t rank() const { return invariant_factors().size(); }
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Row Hermite normal form: same row lattice, echelon with positive pivots and
/// entries above each pivot reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& rows);

/// Invariant factors > 1 of coker(gram), i.e. the discriminant group L^v/L.
std::vector<Integer> discriminant_group(const Lattice& lattice);

Integer group_order(const std::vector<Integer>& invariant_factors);

}  // namespace nikulin
