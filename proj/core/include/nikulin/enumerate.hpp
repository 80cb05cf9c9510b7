#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nikulin/lattice.hpp"

namespace nikulin {

/// A sub-collection of blocks of a lattice plus a coordinate bound.
struct EnumerationWindow {
  std::vector<std::string> blocks;
  int64_t bound = 1;

  std::string describe() const;
};

/// Every v supported on the window's blocks with |coords| <= bound and
/// square(v) = target, in lexicographic order. Negative-definite blocks are
/// enumerated first; since their contributions only decrease the square,
/// partial sums below target - (max of the indefinite part) are cut.
std::vector<LatticeVector> enumerate_vectors_of_square(const LatticePtr& lattice, const EnumerationWindow& window,
                                                       const Integer& target);

/// Primitive isotropic vectors of the window, lexicographic order.
std::vector<LatticeVector> enumerate_primitive_isotropic(const LatticePtr& lattice, const EnumerationWindow& window);

/// (-2)-vectors of the window, one per +-pair (first nonzero coordinate
/// positive), lexicographic order.
std::vector<LatticeVector> window_roots(const LatticePtr& lattice, const EnumerationWindow& window);

/// Streaming view over enumerate_primitive_isotropic; one consumer at a time.
class IsotropicStream {
 public:
  IsotropicStream(const LatticePtr& lattice, const EnumerationWindow& window);
  std::optional<LatticeVector> next();
  std::size_t yielded() const { return position_; }

 private:
  std::vector<LatticeVector> items_;
  std::size_t position_ = 0;
};

}  // namespace nikulin
