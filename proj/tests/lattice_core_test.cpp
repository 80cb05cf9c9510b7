#include <gtest/gtest.h>

#include "nikulin/lattice.hpp"
#include "nikulin/model.hpp"
#include "nikulin/smith.hpp"
#include "nikulin/sublattice.hpp"
#include "support.hpp"

namespace nikulin {
namespace {

using testing::random_matrix;
using testing::random_vector;
using testing::uniform;

const NamedModel& M() { return default_model(); }

LatticePtr U() { return standard_lattice(LatticeKind::U); }
LatticePtr minus_two() { return standard_lattice(LatticeKind::Rank1, -2); }

// ---- construction ----------------------------------------------------------

TEST(StandardLattice, HyperbolicPlane) { EXPECT_EQ(U()->gram(), (IntMatrix{{0, 1}, {1, 0}})); }

TEST(StandardLattice, RankOne) { EXPECT_EQ(minus_two()->gram(), (IntMatrix{{-2}})); }

TEST(StandardLattice, E8MatchesDynkinDiagramAndIsUnimodular) {
  const auto e8 = standard_lattice(LatticeKind::E8Neg);
  EXPECT_EQ(e8->gram(), testing::e8_from_dynkin());
  EXPECT_EQ(e8->determinant(), 1);
  EXPECT_TRUE(e8->is_even());
}

TEST(StandardLattice, RankOneWithZeroParameterIsRejected) {
  EXPECT_THROW(standard_lattice(LatticeKind::Rank1, 0), DomainError);
}

TEST(LatticeMake, RejectsAsymmetricAndDegenerateGrams) {
  EXPECT_THROW(Lattice::make("bad", IntMatrix{{0, 1}, {2, 0}}), DomainError);
  EXPECT_THROW(Lattice::make("bad", IntMatrix{{1, 1}, {1, 1}}), DomainError);
}

TEST(Rescale, ScalesEntriesAndLabel) {
  const auto u2 = rescale(U(), 2);
  EXPECT_EQ(u2->gram(), (IntMatrix{{0, 2}, {2, 0}}));
  EXPECT_EQ(u2->label(), "U(2)");
  EXPECT_EQ(rescale(minus_two(), 2)->gram(), (IntMatrix{{-4}}));
  EXPECT_EQ(u2->determinant(), -4);
}

TEST(Rescale, ByZeroIsRejected) { EXPECT_THROW(rescale(U(), 0), DomainError); }

TEST(DirectSum, BlockDiagonal) {
  const auto uu = direct_sum({U(), U()});
  EXPECT_EQ(uu->rank(), 4u);
  EXPECT_EQ(uu->gram(), (IntMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
  ASSERT_EQ(uu->blocks().size(), 2u);
  EXPECT_EQ(uu->blocks()[1].offset, 2u);
}

TEST(DirectSum, SingletonAndEmpty) {
  const auto l = minus_two();
  EXPECT_EQ(direct_sum({l})->gram(), l->gram());
  EXPECT_THROW(direct_sum({}), DomainError);
}

TEST(DirectSum, LambdaYHasRank16AndDiscriminantOrder256) {
  const auto& ly = M().lambda_y();
  EXPECT_EQ(ly->rank(), 16u);
  // Oracle: product of the block determinants U(2)^3, E8(-1), <-2>^2.
  EXPECT_EQ(abs(ly->determinant()), 4 * 4 * 4 * 1 * 2 * 2);
  EXPECT_EQ(group_order(discriminant_group(*ly)), 256);
}

// ---- pairings --------------------------------------------------------------

TEST(Pair, Examples) {
  const auto u2 = rescale(U(), 2);
  EXPECT_EQ(pair(LatticeVector::basis(u2, 0), LatticeVector::basis(u2, 1)), 2);
  EXPECT_EQ(pair(M().gamma1(), M().gamma2()), 0);
  EXPECT_EQ(pair(M().L(1) + M().e2(), M().w()), 5);
}

TEST(Pair, MismatchedLatticesAreRejected) {
  EXPECT_THROW(pair(LatticeVector::basis(U(), 0), M().gamma1()), DomainError);
}

TEST(Square, Examples) {
  for (int i = 0; i <= 3; ++i) EXPECT_EQ(square(M().L(i)), 4 * i);
  EXPECT_EQ(square(M().w()), -2);
  EXPECT_EQ(square(M().e2() + Integer(5) * M().ew()), -94);
}

TEST(Divisibility, Examples) {
  EXPECT_EQ(divisibility(M().L(0)), 2);
  EXPECT_EQ(divisibility(M().L(1) + M().e2()), 1);
  EXPECT_EQ(divisibility(M().gamma1()), 2);
  EXPECT_THROW(divisibility(LatticeVector::zero(M().lambda_y())), DomainError);
}

TEST(Primitive, Examples) {
  EXPECT_TRUE(is_primitive(M().L(1) + M().e2()));
  EXPECT_TRUE(is_primitive(Integer(2) * M().L(1) - M().delta_y()));
  EXPECT_FALSE(is_primitive(Integer(2) * M().L(0)));
  EXPECT_THROW(is_primitive(LatticeVector::zero(M().lambda_y())), DomainError);
}

TEST(Properties, PairingMatchesGramAndIsBilinear) {
  for (const auto& l : {M().lambda_y(), M().lambda_x(), M().lambda_fix()}) {
    for (int t = 0; t < 200; ++t) {
      const auto u = random_vector(l), v = random_vector(l), w = random_vector(l);
      const Integer a = uniform(-9, 9), b = uniform(-9, 9);
      EXPECT_EQ(pair(v, w), testing::naive_pair(v, w));
      EXPECT_EQ(pair(a * v + b * u, w), a * pair(v, w) + b * pair(u, w));
      EXPECT_EQ(pair(v, w), pair(w, v));
    }
  }
}

TEST(Properties, DivisibilityDividesSquareAndScales) {
  for (const auto& l : {M().lambda_y(), M().lambda_x(), M().lambda_fix()}) {
    ASSERT_TRUE(l->is_even());
    for (int t = 0; t < 200; ++t) {
      const auto v = testing::random_nonzero_vector(l);
      const Integer d = divisibility(v);
      EXPECT_EQ(d, testing::naive_divisibility(v));
      EXPECT_TRUE(divides(d, square(v)));
      const Integer k = uniform(-5, 5);
      if (k == 0) continue;
      EXPECT_EQ(divisibility(k * v), abs(k) * d);
      if (abs(k) > 1) EXPECT_FALSE(is_primitive(k * v));
    }
  }
}

TEST(LatticeVector, ProjectKeepsOneBlock) {
  const auto v = M().w();
  const auto e8 = v.project(M().lambda_y()->block("E8"));
  EXPECT_EQ(e8, M().ew());
  EXPECT_THROW(M().lambda_y()->block("nope"), DomainError);
}

// ---- Smith normal form -----------------------------------------------------

void expect_valid_snf(const IntMatrix& m) {
  const auto s = smith_normal_form(m);
  ASSERT_EQ(s.left * m * s.right, s.diagonal);
  EXPECT_TRUE(s.diagonal.is_diagonal());
  EXPECT_EQ(abs(s.left.determinant()), 1);
  EXPECT_EQ(abs(s.right.determinant()), 1);
  EXPECT_EQ(s.left * s.left_inverse, IntMatrix::identity(m.rows()));
  EXPECT_EQ(s.right * s.right_inverse, IntMatrix::identity(m.cols()));
  const auto f = s.invariant_factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_GT(f[i], 0);
    if (i + 1 < f.size()) EXPECT_TRUE(divides(f[i], f[i + 1]));
  }
  EXPECT_EQ(f.size(), m.rank());
}

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{0, 2}, {2, 0}}).diagonal, (IntMatrix{{2, 0}, {0, 2}}));
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(5)).diagonal, IntMatrix::identity(5));
  IntMatrix cartan = e8_neg_gram().scaled(-1);
  EXPECT_EQ(smith_normal_form(cartan).invariant_factors(), std::vector<Integer>(8, 1));
}

TEST(Smith, InvariantFactorsMatchDeterminantalDivisors) {
  // d1 = gcd of entries and d1*d2 = |det| for 2x2 matrices.
  for (int t = 0; t < 300; ++t) {
    const auto m = random_matrix(2, 2, 30);
    if (m.determinant() == 0) continue;
    Integer d1 = 0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) d1 = gcd(d1, m(i, j));
    const auto f = smith_normal_form(m).invariant_factors();
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0], d1);
    EXPECT_EQ(f[0] * f[1], abs(m.determinant()));
  }
}

TEST(Smith, RoundTripOnRandomMatrices) {
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = uniform(1, 9), c = uniform(1, 9);
    expect_valid_snf(random_matrix(r, c, t % 3 == 0 ? 1000000 : 5));
  }
  expect_valid_snf(IntMatrix(3, 4));
}

TEST(Hermite, CanonicalRowBasis) {
  const auto h = hermite_normal_form(IntMatrix{{2, 4}, {1, 3}, {3, 7}});
  EXPECT_EQ(h, (IntMatrix{{1, 1}, {0, 2}}));
}

TEST(Discriminant, Examples) {
  EXPECT_TRUE(discriminant_group(*U()).empty());
  EXPECT_EQ(discriminant_group(*rescale(U(), 2)), (std::vector<Integer>{2, 2}));
  EXPECT_EQ(discriminant_group(*M().lambda_y()), std::vector<Integer>(8, 2));
  EXPECT_EQ(group_order(discriminant_group(*M().lambda_x())), 2);
}

TEST(Discriminant, OrdersMultiplyOverDirectSums) {
  for (int t = 0; t < 40; ++t) {
    std::vector<LatticePtr> parts;
    Integer product = 1;
    const int count = uniform(1, 4);
    for (int k = 0; k < count; ++k) {
      LatticePtr p;
      switch (uniform(0, 3)) {
        case 0: p = rescale(U(), uniform(1, 6)); break;
        case 1: p = standard_lattice(LatticeKind::Rank1, uniform(1, 8) * (uniform(0, 1) ? 1 : -1)); break;
        case 2: p = rescale(standard_lattice(LatticeKind::E8Neg), uniform(1, 3)); break;
        default: p = U(); break;
      }
      product *= group_order(discriminant_group(*p));
      EXPECT_EQ(group_order(discriminant_group(*p)), abs(p->determinant()));
      parts.push_back(p);
    }
    EXPECT_EQ(group_order(discriminant_group(*direct_sum(parts, "sum"))), product);
  }
}

// ---- saturation ------------------------------------------------------------

TEST(Saturate, ScalarMultiple) {
  const auto s = saturate(M().lambda_y(), {Integer(2) * M().L(0)});
  ASSERT_EQ(s.saturation_basis.size(), 1u);
  EXPECT_EQ(s.saturation_basis[0], M().L(0));
  EXPECT_EQ(s.total_index, 2);
}

TEST(Saturate, GammaPair) {
  const auto s = saturate(M().lambda_y(), {M().delta_y(), M().sigma_y()});
  EXPECT_EQ(s.total_index, 2);
  EXPECT_EQ(s.saturation_basis, (std::vector<LatticeVector>{M().gamma1(), M().gamma2()}));
  EXPECT_EQ(s.index_invariant_factors, (std::vector<Integer>{2}));
}

TEST(Saturate, EtaImageHasIndex2To8) {
  const auto eta = M().eta_embedding("as-written");
  const auto s = saturate(M().lambda_y(), eta.image_basis());
  EXPECT_EQ(s.total_index, 256);
  EXPECT_EQ(testing::index_by_minors(eta.matrix), 256);
}

TEST(Saturate, ErrorPaths) {
  EXPECT_THROW(saturate(M().lambda_y(), {M().gamma1(), Integer(3) * M().gamma1()}), DomainError);
  EXPECT_THROW(saturate(M().lambda_y(), {}), DomainError);
}

TEST(Saturate, IdempotentAndConsistent) {
  for (int t = 0; t < 60; ++t) {
    const std::size_t k = uniform(1, 5);
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(random_vector(M().lambda_y(), 4));
    IntMatrix cols(16, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < 16; ++i) cols(i, j) = gens[j][i];
    if (cols.rank() != k) continue;
    const auto s = saturate(M().lambda_y(), gens);
    // Generators are recovered from their saturation coordinates.
    for (std::size_t j = 0; j < k; ++j) {
      auto rebuilt = LatticeVector::zero(M().lambda_y());
      for (std::size_t i = 0; i < k; ++i) rebuilt = rebuilt + s.generator_coordinates(i, j) * s.saturation_basis[i];
      EXPECT_EQ(rebuilt, gens[j]);
    }
    EXPECT_EQ(abs(s.generator_coordinates.determinant()), s.total_index);
    const auto again = saturate(M().lambda_y(), s.saturation_basis);
    EXPECT_EQ(again.total_index, 1);
    EXPECT_EQ(again.saturation_basis, s.saturation_basis);
  }
}

// ---- embeddings ------------------------------------------------------------

TEST(Embedding, IdentityIsPrimitiveIsometry) {
  const auto& ly = M().lambda_y();
  const auto c = check_embedding(make_embedding(ly, ly, IntMatrix::identity(16)));
  EXPECT_TRUE(c.isometric);
  EXPECT_TRUE(c.primitive);
  EXPECT_EQ(c.saturation_index, 1);
  EXPECT_EQ(c.pairs_checked, 136u);
}

TEST(Embedding, EtaAsWritten) {
  const auto c = check_embedding(M().eta_embedding("as-written"));
  EXPECT_TRUE(c.isometric);
  EXPECT_FALSE(c.primitive);
  EXPECT_EQ(c.saturation_index, 256);
  EXPECT_EQ(c.pairs_checked, 120u);
}

TEST(Embedding, DoublingIsNotIsometric) {
  const auto c = check_embedding(make_embedding(U(), U(), IntMatrix{{2, 0}, {0, 2}}));
  EXPECT_FALSE(c.isometric);
  EXPECT_EQ(c.saturation_index, 4);
}

TEST(Embedding, RankDeficientIsRejected) {
  EXPECT_THROW(make_embedding(U(), U(), IntMatrix{{1, 1}, {1, 1}}), DomainError);
}

TEST(Embedding, IsometricMapsPreserveSquares) {
  const auto eta = M().eta_embedding("as-written");
  const auto fx = M().fix_to_x();
  ASSERT_TRUE(check_embedding(eta).isometric);
  for (int t = 0; t < 1000; ++t) {
    const auto v = random_vector(eta.domain, 5);
    EXPECT_EQ(square(eta.apply(v)), square(v));
    const auto f = random_vector(fx.domain, 5);
    EXPECT_EQ(square(fx.apply(f)), square(f));
  }
}

}  // namespace
}  // namespace nikulin
