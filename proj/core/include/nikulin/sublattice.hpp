#pragma once

#include <vector>

#include "nikulin/lattice.hpp"
#include "nikulin/matrix.hpp"

namespace nikulin {

struct SublatticeReport {
  std::vector<LatticeVector> generators;
  /// Basis of (Q-span of generators) intersected with the ambient lattice.
  std::vector<LatticeVector> saturation_basis;
  /// Invariant factors > 1 of saturation / span(generators).
  std::vector<Integer> index_invariant_factors;
  Integer total_index = 1;
  /// Column j: coordinates of generator j in saturation_basis.
  IntMatrix generator_coordinates;
};

SublatticeReport saturate(const LatticePtr& lattice, const std::vector<LatticeVector>& generators);

/// Column j of matrix is the image of the j-th domain basis vector.
struct EmbeddingMap {
  LatticePtr domain;
  LatticePtr codomain;
  IntMatrix matrix;

  LatticeVector apply(const LatticeVector& v) const;
  std::vector<LatticeVector> image_basis() const;
};

struct EmbeddingCheck {
  bool isometric = false;
  bool primitive = false;
  Integer saturation_index = 1;
  std::vector<Integer> index_invariant_factors;
  /// Number of (i <= j) basis pairs compared for Gram conservation.
  std::size_t pairs_checked = 0;
};

EmbeddingMap make_embedding(LatticePtr domain, LatticePtr codomain, IntMatrix matrix);

EmbeddingCheck check_embedding(const EmbeddingMap& map);

}  // namespace nikulin
