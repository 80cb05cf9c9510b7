#include "nikulin/isometry.hpp"

#include "nikulin/smith.hpp"

namespace nikulin {

bool is_isometry(const Lattice& lattice, const IntMatrix& m) {
  if (m.rows() != lattice.rank() || m.cols() != lattice.rank())
    throw DomainError("isometry candidate has the wrong shape for " + lattice.label());
  return m.transpose() * lattice.gram() * m == lattice.gram();
}

Isometry::Isometry(LatticePtr lattice, IntMatrix matrix) : lattice_(std::move(lattice)), matrix_(std::move(matrix)) {
  if (!is_isometry(*lattice_, matrix_)) throw DomainError("matrix does not preserve the form of " + lattice_->label());
}

Isometry::Isometry(LatticePtr lattice, IntMatrix matrix, LatticeVector root)
    : lattice_(std::move(lattice)), matrix_(std::move(matrix)), root_(std::move(root)) {}

Isometry Isometry::identity(LatticePtr lattice) {
  const std::size_t n = lattice->rank();
  return {std::move(lattice), IntMatrix::identity(n)};
}

LatticeVector Isometry::operator()(const LatticeVector& x) const {
  if (!x.lattice()->same_as(*lattice_)) throw DomainError("vector is not in " + lattice_->label());
  if (root_) {
    const Integer c = pair(x, *root_);
    return x + c * *root_;
  }
  return {lattice_, matrix_ * x.coords_span()};
}

Isometry Isometry::inverse() const {
  if (root_) return *this;
  // g^-1 = G^-1 g^T G. With left G right = D we get G^-1 = right D^-1 left,
  // and D^-1 (left g^T G) is integral because right is unimodular.
  const auto snf = smith_normal_form(lattice_->gram());
  IntMatrix y = snf.left * matrix_.transpose() * lattice_->gram();
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) {
      const Integer& d = snf.diagonal(i, i);
      if (!divides(d, y(i, j))) throw DomainError("isometry inverse is not integral");
      mpz_divexact(y(i, j).get_mpz_t(), y(i, j).get_mpz_t(), d.get_mpz_t());
    }
  return {lattice_, snf.right * y};
}

Isometry reflection(const LatticeVector& root) {
  if (root.is_zero()) throw DomainError("reflection in the zero vector");
  const Integer sq = square(root);
  if (sq != -2)
    throw DomainError("reflection x -> x + (x,v)v needs v^2 = -2, got " + sq.get_str() +
                      "; generalized reflections are not supported");
  const auto& lattice = root.lattice();
  const std::size_t n = lattice->rank();
  const auto gv = gram_image(root);
  IntMatrix m = IntMatrix::identity(n);
  // column j = e_j + (e_j, v) v
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += gv[j] * root[i];
  return Isometry(lattice, std::move(m), root);
}

Isometry compose(const Isometry& a, const Isometry& b) {
  if (!a.lattice()->same_as(*b.lattice())) throw DomainError("composing isometries of different lattices");
  return Isometry(a.lattice(), a.matrix() * b.matrix());
}

}  // namespace nikulin
