#include "nikulin/lattice.hpp"

#include <sstream>
#include <utility>

namespace nikulin {

namespace {

void require_same_lattice(const LatticeVector& a, const LatticeVector& b) {
  if (a.lattice() == b.lattice()) return;
  if (!a.lattice()->same_as(*b.lattice()))
    throw DomainError("vectors live in different lattices: " + a.lattice()->label() + " vs " +
                      b.lattice()->label());
}

std::string scale_suffix(const Integer& n) { return "(" + n.get_str() + ")"; }

}  // namespace

Lattice::Lattice(std::string label, IntMatrix gram, std::vector<Block> blocks, Integer det)
    : label_(std::move(label)), gram_(std::move(gram)), blocks_(std::move(blocks)), det_(std::move(det)) {}

LatticePtr Lattice::make(std::string label, IntMatrix gram, std::vector<Block> blocks) {
  if (gram.rows() == 0) throw DomainError("lattice of rank 0");
  if (!gram.is_symmetric()) throw DomainError("Gram matrix of " + label + " is not symmetric");
  Integer det = gram.determinant();
  if (det == 0) throw DomainError("Gram matrix of " + label + " is degenerate");
  if (blocks.empty()) {
    blocks.push_back({label, 0, gram.rows()});
  } else {
    std::size_t expected = 0;
    for (const auto& b : blocks) {
      if (b.offset != expected || b.rank == 0) throw DomainError("blocks must tile the basis in order");
      expected += b.rank;
    }
    if (expected != gram.rows()) throw DomainError("blocks do not cover the basis");
  }
  return LatticePtr(new Lattice(std::move(label), std::move(gram), std::move(blocks), std::move(det)));
}

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (!divides(2, gram_(i, i))) return false;
  return true;
}

const Block& Lattice::block(const std::string& label) const {
  for (const auto& b : blocks_)
    if (b.label == label) return b;
  throw DomainError("lattice " + label_ + " has no block " + label);
}

bool Lattice::same_as(const Lattice& other) const {
  return this == &other || (label_ == other.label_ && gram_ == other.gram_);
}

LatticeVector::LatticeVector(LatticePtr lattice, std::vector<Integer> coords)
    : lattice_(std::move(lattice)), coords_(std::move(coords)) {
  if (!lattice_) throw DomainError("vector without lattice");
  if (coords_.size() != lattice_->rank())
    throw DomainError("vector of length " + std::to_string(coords_.size()) + " in lattice " +
                      lattice_->label() + " of rank " + std::to_string(lattice_->rank()));
}

LatticeVector LatticeVector::zero(LatticePtr lattice) {
  const std::size_t n = lattice->rank();
  return {std::move(lattice), std::vector<Integer>(n)};
}

LatticeVector LatticeVector::basis(LatticePtr lattice, std::size_t index) {
  std::vector<Integer> c(lattice->rank());
  c.at(index) = 1;
  return {std::move(lattice), std::move(c)};
}

bool LatticeVector::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

LatticeVector LatticeVector::project(const Block& block) const {
  std::vector<Integer> c(coords_.size());
  for (std::size_t i = block.offset; i < block.offset + block.rank; ++i) c[i] = coords_[i];
  return {lattice_, std::move(c)};
}

std::vector<Integer> LatticeVector::block_coords(const Block& block) const {
  return {coords_.begin() + static_cast<std::ptrdiff_t>(block.offset),
          coords_.begin() + static_cast<std::ptrdiff_t>(block.offset + block.rank)};
}

LatticeVector LatticeVector::operator+(const LatticeVector& other) const {
  require_same_lattice(*this, other);
  std::vector<Integer> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + other.coords_[i];
  return {lattice_, std::move(c)};
}

LatticeVector LatticeVector::operator-(const LatticeVector& other) const {
  require_same_lattice(*this, other);
  std::vector<Integer> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] - other.coords_[i];
  return {lattice_, std::move(c)};
}

LatticeVector LatticeVector::operator-() const {
  std::vector<Integer> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return {lattice_, std::move(c)};
}

LatticeVector operator*(const Integer& k, const LatticeVector& v) {
  std::vector<Integer> c(v.coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * v.coords_[i];
  return {v.lattice_, std::move(c)};
}

bool operator<(const LatticeVector& a, const LatticeVector& b) {
  require_same_lattice(a, b);
  return a.coords_ < b.coords_;
}

bool operator==(const LatticeVector& a, const LatticeVector& b) {
  return a.lattice_->same_as(*b.lattice_) && a.coords_ == b.coords_;
}

std::string format_coords(std::span<const Integer> coords) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i];
  }
  os << ']';
  return os.str();
}

IntMatrix e8_neg_gram() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  constexpr std::size_t edges[7][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}};
  for (const auto& e : edges) {
    g(e[0], e[1]) = 1;
    g(e[1], e[0]) = 1;
  }
  return g;
}

LatticePtr standard_lattice(LatticeKind kind, const Integer& param) {
  switch (kind) {
    case LatticeKind::U:
      return Lattice::make("U", IntMatrix{{0, 1}, {1, 0}});
    case LatticeKind::E8Neg:
      return Lattice::make("E8(-1)", e8_neg_gram());
    case LatticeKind::Rank1: {
      if (param == 0) throw DomainError("rank-1 lattice needs a nonzero self-pairing");
      IntMatrix g(1, 1);
      g(0, 0) = param;
      return Lattice::make("<" + param.get_str() + ">", std::move(g));
    }
  }
  throw DomainError("unknown lattice kind");
}

LatticePtr rescale(const LatticePtr& lattice, const Integer& n) {
  if (n == 0) throw DomainError("rescaling by zero");
  std::vector<Block> blocks = lattice->blocks();
  const bool single = blocks.size() == 1;
  for (auto& b : blocks) b.label += scale_suffix(n);
  std::string label = lattice->label() + scale_suffix(n);
  if (single) blocks.front().label = label;
  return Lattice::make(std::move(label), lattice->gram().scaled(n), std::move(blocks));
}

LatticePtr direct_sum(const std::vector<LatticePtr>& parts, std::string label) {
  if (parts.empty()) throw DomainError("direct sum of an empty list");
  if (parts.size() == 1 && label.empty()) return parts.front();
  std::size_t n = 0;
  for (const auto& p : parts) n += p->rank();
  IntMatrix g(n, n);
  std::vector<Block> blocks;
  std::string joined;
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p->rank(); ++i)
      for (std::size_t j = 0; j < p->rank(); ++j) g(offset + i, offset + j) = p->gram()(i, j);
    for (auto b : p->blocks()) {
      b.offset += offset;
      blocks.push_back(std::move(b));
    }
    if (!joined.empty()) joined += "+";
    joined += p->label();
    offset += p->rank();
  }
  return Lattice::make(label.empty() ? joined : std::move(label), std::move(g), std::move(blocks));
}

LatticePtr relabel(const LatticePtr& lattice, std::string label) {
  std::vector<Block> blocks = lattice->blocks();
  if (blocks.size() == 1) blocks.front().label = label;
  return Lattice::make(std::move(label), lattice->gram(), std::move(blocks));
}

std::vector<Integer> gram_image(const LatticeVector& v) { return v.lattice()->gram() * v.coords_span(); }

Integer pair(const LatticeVector& v, const LatticeVector& w) {
  require_same_lattice(v, w);
  const IntMatrix& g = v.lattice()->gram();
  Integer total = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w[j] != 0) row += g(i, j) * w[j];
    total += v[i] * row;
  }
  return total;
}

Integer square(const LatticeVector& v) { return pair(v, v); }

Integer content(std::span<const Integer> coords) {
  Integer g = 0;
  for (const auto& c : coords) g = gcd(g, c);
  return g;
}

Integer divisibility(const LatticeVector& v) {
  if (v.is_zero()) throw DomainError("divisibility of the zero vector");
  const auto image = gram_image(v);
  return content(image);
}

bool is_primitive(const LatticeVector& v) {
  if (v.is_zero()) throw DomainError("primitivity of the zero vector");
  return content(v.coords_span()) == 1;
}

}  // namespace nikulin
