#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nikulin/integer.hpp"
#include "nikulin/matrix.hpp"

namespace nikulin {

/// A named summand of a direct sum, addressed by coordinate range.
struct Block {
  std::string label;
  std::size_t offset = 0;
  std::size_t rank = 0;

  friend bool operator==(const Block&, const Block&) = default;
};

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// Free Z-module with a nondegenerate symmetric integral Gram form.
///
/// Lattices are immutable and shared by pointer; vectors keep their ambient
/// lattice alive. Direct sums remember their summands as blocks so a vector
/// can be projected onto a component later.
class Lattice {
 public:
  /// Validates symmetry and nondegeneracy. An empty block list means the
  /// lattice is its own single block.
  static LatticePtr make(std::string label, IntMatrix gram, std::vector<Block> blocks = {});

  const std::string& label() const { return label_; }
  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Integer& determinant() const { return det_; }

  bool is_even() const;
  bool is_unimodular() const { return det_ == 1 || det_ == -1; }

  /// Index of the first block with this label; throws if absent.
  const Block& block(const std::string& label) const;
  const Block& block(std::size_t index) const { return blocks_.at(index); }

  /// Same label and Gram matrix.
  bool same_as(const Lattice& other) const;

 private:
  Lattice(std::string label, IntMatrix gram, std::vector<Block> blocks, Integer det);

  std::string label_;
  IntMatrix gram_;
  std::vector<Block> blocks_;
  Integer det_;
};

/// Integer coordinates with respect to the basis of a lattice.
class LatticeVector {
 public:
  LatticeVector(LatticePtr lattice, std::vector<Integer> coords);
  static LatticeVector zero(LatticePtr lattice);
  static LatticeVector basis(LatticePtr lattice, std::size_t index);

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<Integer>& coords() const { return coords_; }
  std::span<const Integer> coords_span() const { return coords_; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }

  bool is_zero() const;
  /// Coordinates restricted to one block, zero elsewhere.
  LatticeVector project(const Block& block) const;
  std::vector<Integer> block_coords(const Block& block) const;

  LatticeVector operator+(const LatticeVector& other) const;
  LatticeVector operator-(const LatticeVector& other) const;
  LatticeVector operator-() const;
  friend LatticeVector operator*(const Integer& k, const LatticeVector& v);

  /// Lexicographic on coordinates; both vectors must share a lattice.
  friend bool operator<(const LatticeVector& a, const LatticeVector& b);
  friend bool operator==(const LatticeVector& a, const LatticeVector& b);

 private:
  LatticePtr lattice_;
  std::vector<Integer> coords_;
};

std::string format_coords(std::span<const Integer> coords);

enum class LatticeKind { U, E8Neg, Rank1 };

/// U = [[0,1],[1,0]], E8(-1) in the fixed chain ordering (see e8_neg_gram),
/// or <param>.
LatticePtr standard_lattice(LatticeKind kind, const Integer& param = 0);

/// Negated E8 Cartan matrix. Nodes 1..7 form a path and node 8 is attached
/// to node 5 (0-based: 0..6 path, 7 attached to 4).
IntMatrix e8_neg_gram();

/// Gram multiplied by n; label suffixed "(n)".
LatticePtr rescale(const LatticePtr& lattice, const Integer& n);

LatticePtr direct_sum(const std::vector<LatticePtr>& parts, std::string label = {});

LatticePtr relabel(const LatticePtr& lattice, std::string label);

Integer pair(const LatticeVector& v, const LatticeVector& w);
Integer square(const LatticeVector& v);

/// Positive generator of (v, L): gcd of the pairings with every basis vector.
Integer divisibility(const LatticeVector& v);

/// gcd of coordinates equals 1.
bool is_primitive(const LatticeVector& v);

Integer content(std::span<const Integer> coords);

/// gram * v
std::vector<Integer> gram_image(const LatticeVector& v);

}  // namespace nikulin
