#include "nikulin/sublattice.hpp"

#include "nikulin/smith.hpp"

#include <stdexcept>

namespace nikulin {

SublatticeReport saturate(const LatticePtr& lattice, const std::vector<LatticeVector>& generators) {
  if (generators.empty()) throw DomainError("saturation of an empty generator list");
  const std::size_t n = lattice->rank();
  std::vector<std::vector<Integer>> cols;
  cols.reserve(generators.size());
  for (const auto& g : generators) {
    if (!g.lattice()->same_as(*lattice)) throw DomainError("generator outside lattice " + lattice->label());
    cols.push_back(g.coords());
  }
  const IntMatrix m = IntMatrix::from_columns(cols, n);
  const auto snf = smith_normal_form(m);
  const auto factors = snf.invariant_factors();
  const std::size_t r = factors.size();
  if (r != generators.size()) throw DomainError("generators are linearly dependent");

  // m = left_inverse * D * right_inverse, so the first r columns of the
  // unimodular left_inverse span the saturated module. Report that module in
  // Hermite normal form and solve for the generator coordinates by
  // back-substitution along the pivots.
  IntMatrix basis_rows(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) basis_rows(i, j) = snf.left_inverse(j, i);
  const IntMatrix h = hermite_normal_form(basis_rows);
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t p = 0;
    while (h(i, p) == 0) ++p;
    pivots.push_back(p);
  }
  SublatticeReport report;
  report.generators = generators;
  for (std::size_t i = 0; i < r; ++i) report.saturation_basis.emplace_back(lattice, h.row(i));

  IntMatrix coords(r, generators.size());
  for (std::size_t g = 0; g < generators.size(); ++g)
    for (std::size_t i = 0; i < r; ++i) {
      Integer rest = generators[g][pivots[i]];
      for (std::size_t l = 0; l < i; ++l) rest -= coords(l, g) * h(l, pivots[i]);
      if (!divides(h(i, pivots[i]), rest)) throw std::logic_error("generator outside its saturation");
      coords(i, g) = rest / h(i, pivots[i]);
    }
  report.generator_coordinates = std::move(coords);

  for (const auto& f : factors) {
    if (f != 1) report.index_invariant_factors.push_back(f);
    report.total_index *= f;
  }
  return report;
}

EmbeddingMap make_embedding(LatticePtr domain, LatticePtr codomain, IntMatrix matrix) {
  if (matrix.rows() != codomain->rank() || matrix.cols() != domain->rank())
    throw DomainError("embedding matrix must be codomain-rank x domain-rank");
  if (matrix.rank() != domain->rank()) throw DomainError("embedding matrix is not injective");
  return {std::move(domain), std::move(codomain), std::move(matrix)};
}

LatticeVector EmbeddingMap::apply(const LatticeVector& v) const {
  if (!v.lattice()->same_as(*domain)) throw DomainError("vector is not in the embedding domain " + domain->label());
  return {codomain, matrix * v.coords_span()};
}

std::vector<LatticeVector> EmbeddingMap::image_basis() const {
  std::vector<LatticeVector> out;
  for (std::size_t j = 0; j < matrix.cols(); ++j) out.emplace_back(codomain, matrix.column(j));
  return out;
}

EmbeddingCheck check_embedding(const EmbeddingMap& map) {
  if (map.matrix.rank() != map.domain->rank()) throw DomainError("embedding matrix is rank deficient");
  EmbeddingCheck out;
  const auto images = map.image_basis();
  out.isometric = true;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i; j < images.size(); ++j) {
      ++out.pairs_checked;
      if (pair(images[i], images[j]) != map.domain->gram()(i, j)) out.isometric = false;
    }
  const auto report = saturate(map.codomain, images);
  out.saturation_index = report.total_index;
  out.index_invariant_factors = report.index_invariant_factors;
  out.primitive = report.total_index == 1;
  return out;
}

}  // namespace nikulin
