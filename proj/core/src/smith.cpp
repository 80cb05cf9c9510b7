#include "nikulin/smith.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace nikulin {

namespace {

class SmithState {
 public:
  explicit SmithState(const IntMatrix& m)
      : a(m),
        left(IntMatrix::identity(m.rows())),
        right(IntMatrix::identity(m.cols())),
        left_inv(IntMatrix::identity(m.rows())),
        right_inv(IntMatrix::identity(m.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    left.swap_rows(i, j);
    left_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    right.swap_cols(i, j);
    right_inv.swap_rows(i, j);
  }
  // row[dst] += q * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    a.add_row_multiple(dst, src, q);
    left.add_row_multiple(dst, src, q);
    left_inv.add_col_multiple(src, dst, -q);
  }
  // col[dst] += q * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    a.add_col_multiple(dst, src, q);
    right.add_col_multiple(dst, src, q);
    right_inv.add_row_multiple(src, dst, -q);
  }
  void negate_row(std::size_t i) {
    a.negate_row(i);
    left.negate_row(i);
    left_inv.negate_col(i);
  }

  IntMatrix a, left, right, left_inv, right_inv;
};

std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs(a(i, j));
      if (!best || v < best_abs) {
        best = {i, j};
        best_abs = std::move(v);
        if (best_abs == 1) return best;
      }
    }
  return best;
}

// a / b rounded to the nearest integer, so the remainder is at most |b| / 2.
Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += (sgn(r) == sgn(b)) ? 1 : -1;
  return q;
}

}  // namespace

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(diagonal.rows(), diagonal.cols());
  for (std::size_t i = 0; i < n; ++i)
    if (diagonal(i, i) != 0) out.push_back(diagonal(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithState s(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t n = std::min(rows, cols);

  // Each pass moves the smallest remaining entry to (t, t) and reduces its row
  // and column with nearest-integer quotients. Re-picking the global minimum
  // keeps intermediate entries small; fixing one pivot and swapping in
  // remainders blows up exponentially on dense random input.
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      auto pivot = smallest_entry(s.a, t);
      if (!pivot) break;
      s.swap_rows(t, pivot->first);
      s.swap_cols(t, pivot->second);

      bool clear = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s.a(i, t) == 0) continue;
        s.add_row(i, t, -nearest_quotient(s.a(i, t), s.a(t, t)));
        clear = clear && s.a(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s.a(t, j) == 0) continue;
        s.add_col(j, t, -nearest_quotient(s.a(t, j), s.a(t, t)));
        clear = clear && s.a(t, j) == 0;
      }
      if (!clear) continue;

      // Pivot row and column are clear; enforce the divisibility chain.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(s.a(t, t), s.a(i, j))) {
            offending = i;
            break;
          }
      if (!offending) break;
      s.add_row(t, *offending, 1);
    }
    if (s.a(t, t) < 0) s.negate_row(t);
  }

  return {std::move(s.left), std::move(s.a), std::move(s.right), std::move(s.left_inv), std::move(s.right_inv)};
}

std::vector<Integer> discriminant_group(const Lattice& lattice) {
  const auto snf = smith_normal_form(lattice.gram());
  const auto factors = snf.invariant_factors();
  if (factors.size() != lattice.rank()) throw DomainError("degenerate Gram matrix");
  std::vector<Integer> out;
  for (const auto& f : factors)
    if (f != 1) out.push_back(f);
  return out;
}

Integer group_order(const std::vector<Integer>& invariant_factors) {
  Integer order = 1;
  for (const auto& f : invariant_factors) order *= f;
  return order;
}

IntMatrix hermite_normal_form(const IntMatrix& rows) {
  IntMatrix h = rows;
  const std::size_t r = h.rows(), n = h.cols();
  std::size_t k = 0;
  for (std::size_t col = 0; col < n && k < r; ++col) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = k; i < r; ++i)
        if (h(i, col) != 0 && (!best || abs(h(i, col)) < abs(h(*best, col)))) best = i;
      if (!best) break;
      h.swap_rows(k, *best);
      bool clean = true;
      for (std::size_t i = k + 1; i < r; ++i) {
        if (h(i, col) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(k, col).get_mpz_t());
        h.add_row_multiple(i, k, -q);
        clean = clean && h(i, col) == 0;
      }
      if (clean) break;
    }
    if (h(k, col) == 0) continue;
    if (h(k, col) < 0) h.negate_row(k);
    for (std::size_t i = 0; i < k; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(k, col).get_mpz_t());
      if (q != 0) h.add_row_multiple(i, k, -q);
    }
    ++k;
  }
  IntMatrix out(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
  return out;
}

}  // namespace nikulin
