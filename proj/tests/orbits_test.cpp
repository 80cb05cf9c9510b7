#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "nikulin/enumerate.hpp"
#include "nikulin/isometry.hpp"
#include "nikulin/model.hpp"
#include "nikulin/orbit.hpp"
#include "support.hpp"

namespace nikulin {
namespace {

const NamedModel& M() { return default_model(); }

std::set<std::vector<Integer>> members(const OrbitSet& o) {
  std::set<std::vector<Integer>> out;
  for (std::size_t i = 0; i < o.size(); ++i) out.insert(o.member(i).coords());
  return out;
}

std::vector<LatticeVector> sample_roots(std::size_t count) {
  const auto roots = window_roots(M().lambda_y(), {{"U1", "U2", "E8", "G1", "G2"}, 1});
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(roots[testing::uniform(0, roots.size() - 1)]);
  return out;
}

// ---- reflections -----------------------------------------------------------

TEST(Reflection, Examples) {
  const auto w = M().w();
  EXPECT_EQ(reflection(w)(w), -w);
  EXPECT_EQ(reflection(w)(M().L(1) + M().e2()), M().L(1) + M().e2() + Integer(5) * w);
  EXPECT_EQ(reflection(M().gamma1())(M().gamma2()), M().gamma2());
}

TEST(Reflection, NonRootsAreRejected) {
  EXPECT_THROW(reflection(M().L(1)), DomainError);
  EXPECT_THROW(reflection(M().delta_y()), DomainError);
  EXPECT_THROW(reflection(LatticeVector::zero(M().lambda_y())), DomainError);
}

TEST(Compose, Examples) {
  const auto rw = reflection(M().w());
  const auto id = Isometry::identity(M().lambda_y());
  EXPECT_EQ(compose(rw, rw), id);
  EXPECT_EQ(compose(id, rw), rw);
  const auto both = compose(reflection(M().gamma1()), reflection(M().gamma2()));
  IntMatrix expected = IntMatrix::identity(16);
  expected(14, 14) = -1;
  expected(15, 15) = -1;
  EXPECT_EQ(both.matrix(), expected);
  EXPECT_THROW(compose(rw, Isometry::identity(M().lambda_x())), DomainError);
}

TEST(IsIsometry, Examples) {
  EXPECT_TRUE(is_isometry(*M().lambda_y(), IntMatrix::identity(16)));
  EXPECT_TRUE(is_isometry(*M().lambda_x(), M().sigma_star_isometry().matrix()));
  EXPECT_FALSE(is_isometry(*M().lambda_y(), IntMatrix::identity(16).scaled(2)));
  EXPECT_THROW(is_isometry(*M().lambda_y(), IntMatrix::identity(3)), DomainError);
  EXPECT_THROW(Isometry(M().lambda_y(), IntMatrix::identity(16).scaled(2)), DomainError);
}

TEST(Reflection, InvolutiveIsometriesOnRandomRoots) {
  for (const auto& r : sample_roots(200)) {
    const auto g = reflection(r);
    EXPECT_TRUE(is_isometry(*M().lambda_y(), g.matrix()));
    EXPECT_EQ(compose(g, g), Isometry::identity(M().lambda_y()));
    EXPECT_EQ(g.inverse(), g);
  }
}

TEST(Reflection, InvariantsArePreserved) {
  const auto roots = sample_roots(1000);
  for (std::size_t t = 0; t < roots.size(); ++t) {
    const auto x = testing::random_nonzero_vector(M().lambda_y(), 3);
    const auto y = reflection(roots[t])(x);
    EXPECT_EQ(square(y), square(x));
    EXPECT_EQ(divisibility(y), divisibility(x));
    EXPECT_EQ(is_primitive(y), is_primitive(x));
    // Fast path agrees with the dense matrix.
    EXPECT_EQ(y.coords(), reflection(roots[t]).matrix() * x.coords_span());
  }
}

// ---- orbit exploration -----------------------------------------------------

TEST(OrbitExplore, SingleReflection) {
  const auto g = M().gamma1();
  const auto o = orbit_explore(g, {reflection(g)}, {});
  EXPECT_TRUE(o.exhausted);
  EXPECT_EQ(members(o), (std::set<std::vector<Integer>>{g.coords(), (-g).coords()}));
}

TEST(OrbitExplore, ReflectionStep) {
  OrbitBudget b;
  b.coord_bound = 30;
  const auto v = M().L(1) + M().e2();
  const auto o = orbit_explore(v, {reflection(M().w())}, b);
  EXPECT_TRUE(o.contains(v + Integer(5) * M().w()));
  EXPECT_TRUE(o.exhausted);
  EXPECT_EQ(o.size(), 2u);
}

TEST(OrbitExplore, FullRootWindowKeepsInvariantsOfL0) {
  // Roots with |coords| <= 1; the BFS keeps the default coordinate bound.
  OrbitBudget b;
  b.max_depth = 3;
  b.max_frontier = 20000;
  const auto gens = root_reflections(window_roots(M().lambda_y(), {{"U1", "U2", "E8", "G1", "G2"}, 1}));
  const auto o = orbit_explore(M().L(0), gens, b);
  ASSERT_GT(o.size(), 1u);
  for (std::size_t i = 0; i < o.size(); ++i) {
    const auto v = o.member(i);
    EXPECT_EQ(square(v), 0);
    EXPECT_EQ(divisibility(v), 2);
  }
}

TEST(OrbitExplore, IndependentOfGeneratorOrderAndWorkers) {
  auto gens = root_reflections(short_roots(M().lambda_y()));
  OrbitBudget b;
  b.max_depth = 4;
  b.max_frontier = 5000;  // forces the truncation path as well
  for (const auto& seed : {M().L(0), M().L(1) + M().e2()}) {
    const auto ref = orbit_explore(seed, gens, b);
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), testing::rng());
    const auto perm = orbit_explore(seed, shuffled, b);
    const auto par = orbit_explore(seed, shuffled, b, {4});
    EXPECT_EQ(perm.flat, ref.flat);
    EXPECT_EQ(par.flat, ref.flat);
    EXPECT_EQ(par.exhausted, ref.exhausted);
    EXPECT_EQ(par.hit_frontier_cap, ref.hit_frontier_cap);
    EXPECT_LE(ref.size(), b.max_frontier);
  }
}

TEST(OrbitExplore, BudgetFlags) {
  const auto gens = root_reflections(short_roots(M().lambda_y()));
  OrbitBudget b;
  b.max_depth = 1;
  const auto o = orbit_explore(M().L(1) + M().e2(), gens, b);
  EXPECT_FALSE(o.exhausted);
  EXPECT_TRUE(o.hit_depth_cap);
  EXPECT_EQ(o.depth_reached, 1u);
  b.max_depth = 0;
  EXPECT_THROW(b.validate(), DomainError);
  EXPECT_THROW(orbit_explore(LatticeVector::zero(M().lambda_y()), gens, {}), DomainError);
}

TEST(OrbitExplore, SignFlipGroupOnTwoMinusTwoLines) {
  const auto l = direct_sum({standard_lattice(LatticeKind::Rank1, -2), standard_lattice(LatticeKind::Rank1, -2)});
  const auto gens = root_reflections({LatticeVector::basis(l, 0), LatticeVector::basis(l, 1)});
  OrbitBudget b;
  b.coord_bound = 3;
  for (long x = -3; x <= 3; ++x) {
    for (long y = -3; y <= 3; ++y) {
      if (x == 0 && y == 0) continue;
      const LatticeVector seed(l, {Integer(x), Integer(y)});
      std::set<std::vector<Integer>> expected;
      for (long sx : {1, -1})
        for (long sy : {1, -1}) expected.insert({Integer(sx * x), Integer(sy * y)});
      const auto o = orbit_explore(seed, gens, b);
      EXPECT_TRUE(o.exhausted);
      EXPECT_EQ(members(o), expected) << x << "," << y;
    }
  }
}

TEST(VectorStore, InsertFindAndOrder) {
  VectorStore s(2);
  const int64_t a[] = {1, -1}, b[] = {0, 5}, c[] = {1, -1};
  EXPECT_TRUE(s.insert(a).second);
  EXPECT_TRUE(s.insert(b).second);
  EXPECT_FALSE(s.insert(c).second);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.find(c), std::optional<std::size_t>(0));
  EXPECT_EQ(s.sorted_indices(), (std::vector<std::size_t>{1, 0}));
  for (int i = 0; i < 5000; ++i) {
    const int64_t v[] = {i, -i};
    s.insert(v);
  }
  const int64_t probe[] = {4321, -4321};
  EXPECT_TRUE(s.contains(probe));
}

// ---- witnesses -------------------------------------------------------------

TEST(Witness, TrivialWord) {
  const auto v = M().L(1) + M().e2();
  const auto gens = root_reflections(short_roots(M().lambda_y()));
  const auto r = same_orbit_witness(v, v, gens, {});
  ASSERT_TRUE(r.word);
  EXPECT_TRUE(r.word->empty());
}

TEST(Witness, RowsEightAndNineAreJoinedByReflections) {
  const auto roots = window_roots(M().lambda_y(), {{"U2", "E8", "G1"}, 1});
  const auto gens = root_reflections(roots);
  OrbitBudget b;
  b.max_depth = 2;
  const auto from = M().L(1) + M().e2();
  const auto to = M().L(1) + M().e1() - M().gamma1();
  const auto r = same_orbit_witness(from, to, gens, b);
  ASSERT_TRUE(r.word);
  EXPECT_LE(r.word->size(), 2u);
  EXPECT_EQ(apply_word(from, gens, *r.word), to);
}

TEST(Witness, DistinctDivisibilitiesGiveNoWord) {
  const auto gens = root_reflections(short_roots(M().lambda_y()));
  OrbitBudget b;
  b.max_depth = 4;
  b.max_frontier = 20000;
  const auto r = same_orbit_witness(M().L(0), M().L(1) + M().e2(), gens, b);
  EXPECT_FALSE(r.word);
  EXPECT_NE(divisibility(M().L(0)), divisibility(M().L(1) + M().e2()));
  EXPECT_NE(std::string(WitnessSearch::kAbsenceNote).find("does not prove"), std::string::npos);
}

TEST(Witness, LatticeMismatchIsRejected) {
  EXPECT_THROW(same_orbit_witness(M().L(0), LatticeVector::basis(M().lambda_x(), 0), {}, {}), DomainError);
}

TEST(ShortRoots, AreRootsUpToSign) {
  const auto roots = short_roots(M().lambda_y());
  EXPECT_TRUE(std::is_sorted(roots.begin(), roots.end()));
  for (const auto& r : roots) {
    EXPECT_EQ(square(r), -2);
    const auto first = std::find_if(r.coords().begin(), r.coords().end(), [](const Integer& c) { return c != 0; });
    EXPECT_GT(*first, 0);
  }
}

}  // namespace
}  // namespace nikulin
