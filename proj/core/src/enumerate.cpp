#include "nikulin/enumerate.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace nikulin {

namespace {

struct BlockPoint {
  std::vector<int64_t> coords;
  int64_t q = 0;
};

struct PreparedBlock {
  const Block* block = nullptr;
  std::vector<BlockPoint> points;
};

constexpr double kMaxPointsPerGroup = 5e7;

bool negative_definite(const IntMatrix& g) {
  // Sylvester: all leading principal minors of -g positive.
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    IntMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = -g(i, j);
    if (minor.determinant() <= 0) return false;
  }
  return true;
}

std::vector<BlockPoint> box_points(const IntMatrix& g, int64_t bound) {
  const std::size_t r = g.rows();
  std::vector<std::vector<int64_t>> gram(r, std::vector<int64_t>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram[i][j] = to_int64_or_throw(g(i, j));
  std::vector<BlockPoint> out;
  std::vector<int64_t> c(r, -bound);
  for (;;) {
    int64_t q = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (c[i] == 0) continue;
      int64_t row = 0;
      for (std::size_t j = 0; j < r; ++j) row = checked::fma(row, gram[i][j], c[j]);
      q = checked::fma(q, c[i], row);
    }
    out.push_back({c, q});
    std::size_t k = 0;
    while (k < r && c[k] == bound) c[k++] = -bound;
    if (k == r) break;
    ++c[k];
  }
  return out;
}

IntMatrix block_gram(const Lattice& lattice, const Block& b) {
  IntMatrix g(b.rank, b.rank);
  for (std::size_t i = 0; i < b.rank; ++i)
    for (std::size_t j = 0; j < b.rank; ++j) g(i, j) = lattice.gram()(b.offset + i, b.offset + j);
  return g;
}

}  // namespace

std::string EnumerationWindow::describe() const {
  std::string s;
  for (const auto& b : blocks) {
    if (!s.empty()) s += "+";
    s += b;
  }
  return s + " |coords|<=" + std::to_string(bound);
}

std::vector<LatticeVector> enumerate_vectors_of_square(const LatticePtr& lattice, const EnumerationWindow& window,
                                                       const Integer& target_value) {
  if (window.blocks.empty()) throw DomainError("empty enumeration window");
  if (window.bound < 1) throw DomainError("enumeration bound must be at least 1");
  const int64_t target = to_int64_or_throw(target_value);

  std::set<std::string> seen;
  std::vector<PreparedBlock> definite;
  std::vector<PreparedBlock> indefinite;
  double indefinite_points = 1;
  for (const auto& name : window.blocks) {
    if (!seen.insert(name).second) throw DomainError("block " + name + " listed twice");
    const Block& b = lattice->block(name);
    // Off-block Gram entries must vanish for the blockwise sum to be exact.
    for (std::size_t i = b.offset; i < b.offset + b.rank; ++i)
      for (std::size_t j = 0; j < lattice->rank(); ++j)
        if ((j < b.offset || j >= b.offset + b.rank) && lattice->gram()(i, j) != 0)
          throw DomainError("block " + name + " is not orthogonal to the rest of " + lattice->label());
    const IntMatrix g = block_gram(*lattice, b);
    double size = 1;
    for (std::size_t i = 0; i < b.rank; ++i) size *= static_cast<double>(2 * window.bound + 1);
    if (size > kMaxPointsPerGroup) throw DomainError("window block " + name + " is too large to enumerate");
    PreparedBlock prepared{&b, box_points(g, window.bound)};
    if (negative_definite(g)) {
      std::stable_sort(prepared.points.begin(), prepared.points.end(),
                       [](const BlockPoint& a, const BlockPoint& c) { return a.q > c.q; });
      definite.push_back(std::move(prepared));
    } else {
      indefinite_points *= size;
      indefinite.push_back(std::move(prepared));
    }
  }
  if (indefinite_points > kMaxPointsPerGroup) throw DomainError("indefinite part of the window is too large");

  // Indefinite part: every combination grouped by square.
  std::unordered_map<int64_t, std::vector<std::vector<const BlockPoint*>>> by_square;
  int64_t indefinite_max = 0;
  {
    std::vector<const BlockPoint*> choice(indefinite.size());
    auto rec = [&](auto&& self, std::size_t k, int64_t acc) -> void {
      if (k == indefinite.size()) {
        by_square[acc].push_back(choice);
        indefinite_max = std::max(indefinite_max, acc);
        return;
      }
      for (const auto& p : indefinite[k].points) {
        choice[k] = &p;
        self(self, k + 1, checked::add(acc, p.q));
      }
    };
    rec(rec, 0, 0);
  }

  const std::size_t n = lattice->rank();
  std::vector<std::vector<int64_t>> found;
  std::vector<const BlockPoint*> def_choice(definite.size());
  const int64_t floor = target - indefinite_max;
  auto emit = [&](const std::vector<const BlockPoint*>& indef) {
    std::vector<int64_t> v(n, 0);
    auto place = [&](const PreparedBlock& pb, const BlockPoint* p) {
      std::copy(p->coords.begin(), p->coords.end(), v.begin() + static_cast<std::ptrdiff_t>(pb.block->offset));
    };
    for (std::size_t k = 0; k < definite.size(); ++k) place(definite[k], def_choice[k]);
    for (std::size_t k = 0; k < indefinite.size(); ++k) place(indefinite[k], indef[k]);
    found.push_back(std::move(v));
  };
  auto rec = [&](auto&& self, std::size_t k, int64_t acc) -> void {
    if (k == definite.size()) {
      auto it = by_square.find(target - acc);
      if (it == by_square.end()) return;
      for (const auto& indef : it->second) emit(indef);
      return;
    }
    for (const auto& p : definite[k].points) {
      const int64_t next = acc + p.q;
      if (next < floor) break;  // points sorted by decreasing square
      def_choice[k] = &p;
      self(self, k + 1, next);
    }
  };
  rec(rec, 0, 0);

  std::sort(found.begin(), found.end());
  std::vector<LatticeVector> out;
  out.reserve(found.size());
  for (const auto& f : found) {
    std::vector<Integer> c;
    c.reserve(n);
    for (int64_t x : f) c.emplace_back(static_cast<long>(x));
    out.emplace_back(lattice, std::move(c));
  }
  return out;
}

std::vector<LatticeVector> enumerate_primitive_isotropic(const LatticePtr& lattice, const EnumerationWindow& window) {
  auto all = enumerate_vectors_of_square(lattice, window, 0);
  std::vector<LatticeVector> out;
  for (auto& v : all)
    if (!v.is_zero() && is_primitive(v)) out.push_back(std::move(v));
  return out;
}

std::vector<LatticeVector> window_roots(const LatticePtr& lattice, const EnumerationWindow& window) {
  auto all = enumerate_vectors_of_square(lattice, window, -2);
  std::vector<LatticeVector> out;
  for (auto& v : all) {
    const auto first = std::find_if(v.coords().begin(), v.coords().end(), [](const Integer& c) { return c != 0; });
    if (first != v.coords().end() && *first > 0) out.push_back(std::move(v));
  }
  return out;
}

IsotropicStream::IsotropicStream(const LatticePtr& lattice, const EnumerationWindow& window)
    : items_(enumerate_primitive_isotropic(lattice, window)) {}

std::optional<LatticeVector> IsotropicStream::next() {
  if (position_ >= items_.size()) return std::nullopt;
  return items_[position_++];
}

}  // namespace nikulin
