#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nikulin/isometry.hpp"
#include "nikulin/lattice.hpp"

namespace nikulin {

/// Limits for bounded orbit exploration.
struct OrbitBudget {
  /// Vectors with some |coordinate| above this are discarded.
  int64_t coord_bound = 4;
  /// Cap on the number of retained members (seed included).
  std::size_t max_frontier = 1'000'000;
  /// Number of BFS layers, i.e. maximal word length.
  std::size_t max_depth = 6;

  void validate() const;
  friend bool operator==(const OrbitBudget&, const OrbitBudget&) = default;
};

/// Hash set of fixed-rank int64 vectors stored contiguously.
class VectorStore {
 public:
  explicit VectorStore(std::size_t rank = 0) : rank_(rank) {}

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return rank_ == 0 ? 0 : data_.size() / rank_; }
  std::span<const int64_t> at(std::size_t index) const { return {data_.data() + index * rank_, rank_}; }

  /// Index of the vector, if present.
  std::optional<std::size_t> find(std::span<const int64_t> v) const;
  /// Inserts if absent; returns (index, inserted).
  std::pair<std::size_t, bool> insert(std::span<const int64_t> v);
  bool contains(std::span<const int64_t> v) const { return find(v).has_value(); }

  /// Indices ordered lexicographically by coordinates.
  std::vector<std::size_t> sorted_indices() const;

 private:
  uint64_t hash(std::span<const int64_t> v) const;
  void grow();

  std::size_t rank_;
  std::vector<int64_t> data_;
  std::vector<uint32_t> table_;  // slot -> index + 1, 0 = empty
};

struct OrbitSet {
  LatticeVector seed;
  /// Members in lexicographic coordinate order, rank() entries each.
  std::vector<int64_t> flat;
  /// Closed under the generators within the budget.
  bool exhausted = false;
  bool hit_coord_bound = false;
  bool hit_frontier_cap = false;
  bool hit_depth_cap = false;
  std::size_t depth_reached = 0;

  std::size_t rank() const { return seed.size(); }
  std::size_t size() const { return rank() == 0 ? 0 : flat.size() / rank(); }
  std::span<const int64_t> coords(std::size_t i) const { return {flat.data() + i * rank(), rank()}; }
  bool contains(const LatticeVector& v) const;
  LatticeVector member(std::size_t i) const;
};

struct OrbitOptions {
  /// Worker threads per BFS layer. Output does not depend on this value.
  std::size_t workers = 1;
};

/// Breadth-first closure of seed under gens. When a layer would exceed the
/// frontier cap, only its lexicographically smallest vectors are retained,
/// so the member set is independent of generator order and scheduling.
OrbitSet orbit_explore(const LatticeVector& seed, const std::vector<Isometry>& gens, const OrbitBudget& budget,
                       const OrbitOptions& options = {});

/// Indices into gens, in application order: the first entry is applied first.
using GeneratorWord = std::vector<std::size_t>;

struct WitnessSearch {
  std::optional<GeneratorWord> word;
  /// Vectors visited by both search directions together.
  std::size_t visited = 0;
  bool budget_exhausted = false;
  /// A missing word only means the budget was too small, never that the
  /// vectors lie in different orbits.
  static constexpr const char* kAbsenceNote =
      "no witness within budget; absence of a word does not prove the orbits differ";
};

/// Bidirectional BFS for a word in gens taking v to u.
WitnessSearch same_orbit_witness(const LatticeVector& v, const LatticeVector& u, const std::vector<Isometry>& gens,
                                 const OrbitBudget& budget);

LatticeVector apply_word(const LatticeVector& v, const std::vector<Isometry>& gens, const GeneratorWord& word);

/// Reflections in the given (-2)-vectors.
std::vector<Isometry> root_reflections(const std::vector<LatticeVector>& roots);

/// All (-2)-vectors with coordinates in {-1,0,1} and at most two nonzero
/// coordinates, one representative per +-pair (first nonzero coordinate
/// positive), in lexicographic order.
std::vector<LatticeVector> short_roots(const LatticePtr& lattice);

}  // namespace nikulin
