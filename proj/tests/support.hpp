#pragma once

#include <random>
#include <vector>

#include "nikulin/lattice.hpp"
#include "nikulin/matrix.hpp"

namespace nikulin::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260514);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline LatticeVector random_vector(const LatticePtr& l, long bound = 3) {
  std::vector<Integer> c(l->rank());
  for (auto& x : c) x = uniform(-bound, bound);
  return {l, std::move(c)};
}

inline LatticeVector random_nonzero_vector(const LatticePtr& l, long bound = 3) {
  for (;;) {
    auto v = random_vector(l, bound);
    if (!v.is_zero()) return v;
  }
}

inline IntMatrix random_matrix(std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(-bound, bound);
  return m;
}

// Pairing straight from the Gram entries, without the library's kernels.
inline Integer naive_pair(const LatticeVector& v, const LatticeVector& w) {
  Integer s = 0;
  const auto& g = v.lattice()->gram();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) s += v[i] * g(i, j) * w[j];
  return s;
}

inline Integer naive_divisibility(const LatticeVector& v) {
  Integer d = 0;
  for (std::size_t i = 0; i < v.size(); ++i) d = gcd(d, naive_pair(v, LatticeVector::basis(v.lattice(), i)));
  return d;
}

// Negated Cartan matrix of E8 built from its Dynkin edges: path 1-2-...-7, node 8 on node 5.
inline IntMatrix e8_from_dynkin() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  const std::pair<int, int> edges[] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}};
  for (auto [a, b] : edges) g(a, b) = g(b, a) = 1;
  return g;
}

// Matrix with the given rows removed; for maximal-minor computations.
inline IntMatrix drop_row(const IntMatrix& m, std::size_t skip) {
  IntMatrix out(m.rows() - 1, m.cols());
  for (std::size_t i = 0, k = 0; i < m.rows(); ++i) {
    if (i == skip) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out(k, j) = m(i, j);
    ++k;
  }
  return out;
}

// Index of the column span of an (n+1) x n matrix in its saturation: the gcd
// of its maximal minors.
inline Integer index_by_minors(const IntMatrix& m) {
  Integer g = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) g = gcd(g, drop_row(m, r).determinant());
  return abs(g);
}

}  // namespace nikulin::testing
