#include "nikulin/orbit.hpp"

#include <algorithm>
#include <thread>

namespace nikulin {

void OrbitBudget::validate() const {
  if (coord_bound <= 0 || max_frontier == 0 || max_depth == 0)
    throw DomainError("orbit budget fields must all be positive");
}

// ---------------------------------------------------------------------------
// VectorStore

uint64_t VectorStore::hash(std::span<const int64_t> v) const {
  uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (int64_t x : v) {
    h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return h ^ (h >> 33);
}

std::optional<std::size_t> VectorStore::find(std::span<const int64_t> v) const {
  if (table_.empty()) return std::nullopt;
  const std::size_t mask = table_.size() - 1;
  for (std::size_t slot = hash(v) & mask;; slot = (slot + 1) & mask) {
    const uint32_t entry = table_[slot];
    if (entry == 0) return std::nullopt;
    const auto candidate = at(entry - 1);
    if (std::equal(candidate.begin(), candidate.end(), v.begin())) return entry - 1;
  }
}

void VectorStore::grow() {
  const std::size_t capacity = table_.empty() ? 1024 : table_.size() * 2;
  table_.assign(capacity, 0);
  const std::size_t mask = capacity - 1;
  for (std::size_t i = 0; i < size(); ++i) {
    std::size_t slot = hash(at(i)) & mask;
    while (table_[slot] != 0) slot = (slot + 1) & mask;
    table_[slot] = static_cast<uint32_t>(i + 1);
  }
}

std::pair<std::size_t, bool> VectorStore::insert(std::span<const int64_t> v) {
  if (v.size() != rank_) throw DomainError("vector store rank mismatch");
  if (auto found = find(v)) return {*found, false};
  if ((size() + 1) * 2 > table_.size()) grow();
  if (size() >= UINT32_MAX - 1) throw OverflowError("vector store is full");
  const std::size_t index = size();
  data_.insert(data_.end(), v.begin(), v.end());
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = hash(v) & mask;
  while (table_[slot] != 0) slot = (slot + 1) & mask;
  table_[slot] = static_cast<uint32_t>(index + 1);
  return {index, true};
}

std::vector<std::size_t> VectorStore::sorted_indices() const {
  std::vector<std::size_t> idx(size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
    const auto x = at(a);
    const auto y = at(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  return idx;
}

// ---------------------------------------------------------------------------
// Fixed-width generator kernels

namespace {

class KernelGenerator {
 public:
  explicit KernelGenerator(const Isometry& g) : rank_(g.lattice()->rank()) {
    if (g.root()) {
      root_.reserve(rank_);
      for (const auto& c : g.root()->coords()) root_.push_back(to_int64_or_throw(c));
      for (const auto& c : gram_image(*g.root())) gram_root_.push_back(to_int64_or_throw(c));
    } else {
      matrix_.reserve(rank_ * rank_);
      for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < rank_; ++j) matrix_.push_back(to_int64_or_throw(g.matrix()(i, j)));
    }
  }

  /// Writes g(x) into out; false if some coordinate exceeds bound.
  bool apply(std::span<const int64_t> x, std::span<int64_t> out, int64_t bound) const {
    bool inside = true;
    if (!root_.empty()) {
      int64_t c = 0;
      for (std::size_t i = 0; i < rank_; ++i)
        if (x[i] != 0) c = checked::fma(c, x[i], gram_root_[i]);
      for (std::size_t i = 0; i < rank_; ++i) {
        out[i] = root_[i] == 0 ? x[i] : checked::fma(x[i], c, root_[i]);
        if (out[i] > bound || out[i] < -bound) inside = false;
      }
      return inside;
    }
    for (std::size_t i = 0; i < rank_; ++i) {
      int64_t acc = 0;
      const int64_t* row = matrix_.data() + i * rank_;
      for (std::size_t j = 0; j < rank_; ++j)
        if (row[j] != 0 && x[j] != 0) acc = checked::fma(acc, row[j], x[j]);
      out[i] = acc;
      if (acc > bound || acc < -bound) inside = false;
    }
    return inside;
  }

 private:
  std::size_t rank_;
  std::vector<int64_t> root_;
  std::vector<int64_t> gram_root_;
  std::vector<int64_t> matrix_;
};

std::vector<KernelGenerator> make_kernels(const LatticePtr& lattice, const std::vector<Isometry>& gens) {
  std::vector<KernelGenerator> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    if (!g.lattice()->same_as(*lattice)) throw DomainError("generator acts on " + g.lattice()->label());
    out.emplace_back(g);
  }
  return out;
}

std::vector<int64_t> to_fixed(const LatticeVector& v) {
  std::vector<int64_t> out;
  out.reserve(v.size());
  for (const auto& c : v.coords()) out.push_back(to_int64_or_throw(c));
  return out;
}

bool within(std::span<const int64_t> v, int64_t bound) {
  return std::all_of(v.begin(), v.end(), [bound](int64_t x) { return x <= bound && x >= -bound; });
}

struct LayerResult {
  VectorStore fresh;
  bool hit_bound = false;
};

// Images of members[begin, end) not already visited.
LayerResult expand_range(const VectorStore& visited, const std::vector<std::size_t>& frontier, std::size_t begin,
                         std::size_t end, const std::vector<KernelGenerator>& kernels, int64_t bound) {
  LayerResult result{VectorStore(visited.rank()), false};
  std::vector<int64_t> image(visited.rank());
  for (std::size_t k = begin; k < end; ++k) {
    const auto x = visited.at(frontier[k]);
    for (const auto& g : kernels) {
      if (!g.apply(x, image, bound)) {
        result.hit_bound = true;
        continue;
      }
      if (!visited.contains(image)) result.fresh.insert(image);
    }
  }
  return result;
}

LayerResult expand_layer(const VectorStore& visited, const std::vector<std::size_t>& frontier,
                         const std::vector<KernelGenerator>& kernels, int64_t bound, std::size_t workers) {
  workers = std::max<std::size_t>(1, std::min(workers, frontier.size()));
  if (workers == 1) return expand_range(visited, frontier, 0, frontier.size(), kernels, bound);

  std::vector<LayerResult> partial(workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (frontier.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(frontier.size(), w * chunk);
    const std::size_t end = std::min(frontier.size(), begin + chunk);
    threads.emplace_back([&, w, begin, end] { partial[w] = expand_range(visited, frontier, begin, end, kernels, bound); });
  }
  for (auto& t : threads) t.join();

  LayerResult merged{VectorStore(visited.rank()), false};
  for (const auto& p : partial) {
    merged.hit_bound = merged.hit_bound || p.hit_bound;
    for (std::size_t i = 0; i < p.fresh.size(); ++i) merged.fresh.insert(p.fresh.at(i));
  }
  return merged;
}

}  // namespace

// ---------------------------------------------------------------------------
// orbit_explore

bool OrbitSet::contains(const LatticeVector& v) const {
  if (v.size() != rank()) return false;
  std::vector<int64_t> key;
  for (const auto& c : v.coords()) {
    auto x = to_int64(c);
    if (!x) return false;
    key.push_back(*x);
  }
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto m = coords(mid);
    if (std::lexicographical_compare(m.begin(), m.end(), key.begin(), key.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < size() && std::equal(key.begin(), key.end(), coords(lo).begin());
}

LatticeVector OrbitSet::member(std::size_t i) const {
  const auto c = coords(i);
  std::vector<Integer> out;
  out.reserve(c.size());
  for (int64_t x : c) out.emplace_back(static_cast<long>(x));
  return {seed.lattice(), std::move(out)};
}

OrbitSet orbit_explore(const LatticeVector& seed, const std::vector<Isometry>& gens, const OrbitBudget& budget,
                       const OrbitOptions& options) {
  budget.validate();
  if (seed.is_zero()) throw DomainError("orbit of the zero vector");
  const auto kernels = make_kernels(seed.lattice(), gens);
  const auto start = to_fixed(seed);

  OrbitSet out{seed, {}, false, false, false, false, 0};
  VectorStore visited(seed.size());
  if (!within(start, budget.coord_bound)) out.hit_coord_bound = true;
  visited.insert(start);

  std::vector<std::size_t> frontier{0};
  bool closed = false;
  while (!frontier.empty()) {
    if (out.depth_reached == budget.max_depth) {
      // Probe whether the last layer is closed; nothing is retained.
      const auto probe = expand_layer(visited, frontier, kernels, budget.coord_bound, options.workers);
      out.hit_coord_bound = out.hit_coord_bound || probe.hit_bound;
      if (probe.fresh.size() > 0) out.hit_depth_cap = true;
      else closed = true;
      break;
    }
    auto layer = expand_layer(visited, frontier, kernels, budget.coord_bound, options.workers);
    out.hit_coord_bound = out.hit_coord_bound || layer.hit_bound;
    ++out.depth_reached;
    if (layer.fresh.size() == 0) {
      closed = true;
      break;
    }
    auto order = layer.fresh.sorted_indices();
    const std::size_t room = budget.max_frontier - std::min(budget.max_frontier, visited.size());
    if (order.size() > room) {
      order.resize(room);
      out.hit_frontier_cap = true;
    }
    std::vector<std::size_t> next;
    next.reserve(order.size());
    for (std::size_t idx : order) next.push_back(visited.insert(layer.fresh.at(idx)).first);
    if (out.hit_frontier_cap) break;
    frontier = std::move(next);
  }

  out.exhausted = closed && !out.hit_coord_bound && !out.hit_frontier_cap && !out.hit_depth_cap;
  const auto order = visited.sorted_indices();
  out.flat.reserve(order.size() * seed.size());
  for (std::size_t idx : order) {
    const auto v = visited.at(idx);
    out.flat.insert(out.flat.end(), v.begin(), v.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// same_orbit_witness

namespace {

struct SearchTree {
  explicit SearchTree(std::size_t rank) : store(rank) {}
  VectorStore store;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> via;  // generator index
  std::vector<std::size_t> frontier;
  std::size_t depth = 0;

  // generator indices from the root to node, in discovery order
  std::vector<std::size_t> path_to(std::size_t node) const {
    std::vector<std::size_t> gens;
    while (node != 0) {
      gens.push_back(via[node]);
      node = parent[node];
    }
    std::reverse(gens.begin(), gens.end());
    return gens;
  }
};

}  // namespace

WitnessSearch same_orbit_witness(const LatticeVector& v, const LatticeVector& u, const std::vector<Isometry>& gens,
                                 const OrbitBudget& budget) {
  budget.validate();
  if (!v.lattice()->same_as(*u.lattice())) throw DomainError("witness search across different lattices");
  WitnessSearch result;
  if (v == u) {
    result.word = GeneratorWord{};
    result.visited = 1;
    return result;
  }
  const auto forward_kernels = make_kernels(v.lattice(), gens);
  std::vector<Isometry> inverses;
  inverses.reserve(gens.size());
  for (const auto& g : gens) inverses.push_back(g.inverse());
  const auto backward_kernels = make_kernels(v.lattice(), inverses);

  SearchTree fwd(v.size());
  SearchTree bwd(v.size());
  for (auto* tree : {&fwd, &bwd}) {
    tree->parent.push_back(0);
    tree->via.push_back(0);
    tree->frontier.push_back(0);
  }
  fwd.store.insert(to_fixed(v));
  bwd.store.insert(to_fixed(u));

  std::vector<int64_t> image(v.size());
  while (fwd.depth + bwd.depth < budget.max_depth) {
    const bool grow_forward = fwd.frontier.size() <= bwd.frontier.size();
    SearchTree& tree = grow_forward ? fwd : bwd;
    const SearchTree& other = grow_forward ? bwd : fwd;
    const auto& kernels = grow_forward ? forward_kernels : backward_kernels;
    if (tree.frontier.empty()) break;

    std::vector<std::size_t> next;
    for (std::size_t node : tree.frontier) {
      for (std::size_t g = 0; g < kernels.size(); ++g) {
        if (!kernels[g].apply(tree.store.at(node), image, budget.coord_bound)) continue;
        auto [idx, inserted] = tree.store.insert(image);
        if (!inserted) continue;
        tree.parent.push_back(node);
        tree.via.push_back(g);
        next.push_back(idx);
        if (auto meet = other.store.find(image)) {
          const std::size_t f_node = grow_forward ? idx : *meet;
          const std::size_t b_node = grow_forward ? *meet : idx;
          GeneratorWord word = fwd.path_to(f_node);
          auto back = bwd.path_to(b_node);
          // backward edges x -> g^-1(x) are traversed forward as y -> g(y)
          word.insert(word.end(), back.rbegin(), back.rend());
          result.word = std::move(word);
          result.visited = fwd.store.size() + bwd.store.size();
          return result;
        }
        if (fwd.store.size() + bwd.store.size() >= budget.max_frontier) {
          result.visited = fwd.store.size() + bwd.store.size();
          result.budget_exhausted = true;
          return result;
        }
      }
    }
    tree.frontier = std::move(next);
    ++tree.depth;
  }
  result.visited = fwd.store.size() + bwd.store.size();
  result.budget_exhausted = true;
  return result;
}

LatticeVector apply_word(const LatticeVector& v, const std::vector<Isometry>& gens, const GeneratorWord& word) {
  LatticeVector x = v;
  for (std::size_t g : word) x = gens.at(g)(x);
  return x;
}

std::vector<Isometry> root_reflections(const std::vector<LatticeVector>& roots) {
  std::vector<Isometry> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(reflection(r));
  return out;
}

std::vector<LatticeVector> short_roots(const LatticePtr& lattice) {
  const auto& g = lattice->gram();
  const std::size_t n = lattice->rank();
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (g(i, i) == -2) out.push_back(LatticeVector::basis(lattice, i));
    for (std::size_t j = i + 1; j < n; ++j)
      for (int s : {1, -1})
        if (g(i, i) + g(j, j) + 2 * s * g(i, j) == -2) {
          std::vector<Integer> c(n);
          c[i] = 1;
          c[j] = s;
          out.emplace_back(lattice, std::move(c));
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nikulin
