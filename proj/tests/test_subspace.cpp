#include "krel/random.hpp"
#include "krel/subspace.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace krel;

namespace {

ComplexVector vec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

Subspace span(Index ambient, std::initializer_list<ComplexVector> vs) {
  return orthonormalize(ambient, std::vector<ComplexVector>(vs));
}

Subspace random_subspace(CounterRng& rng, Index n, Index k) {
  return orthonormalize(rng.complex_matrix(n, k));
}

}  // namespace

TEST(Orthonormalize, CollinearVectorsSpanALine) {
  const Subspace s = span(2, {vec({1, 0}), vec({2, 0})});
  ASSERT_EQ(s.dim(), 1);
  EXPECT_NEAR(std::abs(s.basis()(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.basis()(1, 0)), 0.0, 1e-15);
}

TEST(Orthonormalize, EmptyListGivesZeroSubspace) {
  const Subspace s = orthonormalize(3, {});
  EXPECT_EQ(s.ambient_dim(), 3);
  EXPECT_EQ(s.dim(), 0);
  EXPECT_TRUE(s.is_zero());
}

TEST(Orthonormalize, NearlyCollinearPairCollapsesAtDefaultTolerance) {
  const double eps = 1e-13;
  const auto [s1, s2] = oracle::singular_values_2x2(1.0, 1.0, eps, -eps);
  EXPECT_NEAR(s1, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s2, std::sqrt(2.0) * eps, 1e-25);
  // hand-rolled threshold: 2 · eps_machine · s1 · default factor
  const double threshold = Tolerance{}.rank_threshold(s1, 2, 2);
  EXPECT_LT(s2, threshold);
  EXPECT_EQ(span(2, {vec({1, eps}), vec({1, -eps})}).dim(), 1);
}

TEST(Orthonormalize, DimensionMismatchThrows) {
  EXPECT_THROW(span(2, {vec({1, 0}), vec({1, 0, 0})}), DimensionError);
}

TEST(Orthonormalize, NonFiniteEntriesThrow) {
  ComplexMatrix m(2, 1);
  m << std::numeric_limits<double>::quiet_NaN(), 1.0;
  EXPECT_THROW(orthonormalize(m), DomainError);
}

TEST(Kernel, IdentityHasZeroKernel) { EXPECT_EQ(kernel(ComplexMatrix::Identity(3, 3)).dim(), 0); }

TEST(Kernel, ZeroMatrixHasFullKernel) {
  const Subspace k = kernel(ComplexMatrix::Zero(2, 4));
  EXPECT_EQ(k.dim(), 4);
  EXPECT_TRUE(k.is_full());
}

TEST(Kernel, RankOneTwoByTwo) {
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, 1;
  const auto [s1, s2] = oracle::singular_values_2x2(1.0, 1.0, 1.0, 1.0);
  EXPECT_NEAR(s1, 2.0, 1e-15);
  EXPECT_NEAR(s2, 0.0, 1e-15);
  const Subspace k = kernel(m);
  ASSERT_EQ(k.dim(), 1);
  EXPECT_TRUE(compare(k, span(2, {vec({1, -1})})).equals);
}

TEST(Combine, CoordinateAxes) {
  const Subspace v = span(2, {vec({1, 0})});
  const Subspace w = span(2, {vec({0, 1})});
  EXPECT_TRUE(combine(v, w, Combine::Sum).is_full());
  EXPECT_TRUE(combine(v, w, Combine::Intersect).is_zero());
}

TEST(Combine, Idempotent) {
  const Subspace v = span(3, {vec({1, 2, 0}), vec({0, 1, 1})});
  EXPECT_TRUE(compare(combine(v, v, Combine::Sum), v).equals);
  EXPECT_TRUE(compare(combine(v, v, Combine::Intersect), v).equals);
}

TEST(Combine, DiagonalsInC3) {
  const Subspace v = span(3, {vec({1, 1, 0})});
  const Subspace w = span(3, {vec({1, -1, 0})});
  EXPECT_EQ(combine(v, w, Combine::Intersect).dim(), 0);
  const Subspace sum = combine(v, w, Combine::Sum);
  EXPECT_EQ(sum.dim(), 2);
  EXPECT_TRUE(compare(sum, span(3, {vec({1, 0, 0}), vec({0, 1, 0})})).equals);
}

TEST(Combine, AmbientMismatchThrows) {
  EXPECT_THROW(combine(Subspace(2), Subspace(3), Combine::Sum), DimensionError);
}

TEST(Complement, OfAxis) {
  EXPECT_TRUE(compare(complement(span(2, {vec({1, 0})})), span(2, {vec({0, 1})})).equals);
}

TEST(Complement, OfFullSpaceIsZero) { EXPECT_TRUE(complement(Subspace::full(3)).is_zero()); }

TEST(Complement, OfComplexLine) {
  const double r = 1.0 / std::sqrt(2.0);
  const Subspace c = complement(span(2, {vec({r, Complex(0, r)})}));
  ASSERT_EQ(c.dim(), 1);
  // Gram–Schmidt by hand: e₁ minus its projection is (1, -i)/2, normalized (1, -i)/√2
  const ComplexVector expected = vec({r, Complex(0, -r)});
  EXPECT_NEAR(std::abs(expected.dot(c.basis().col(0))), 1.0, 1e-14);
}

TEST(Compare, SelfDistanceZero) {
  const Subspace v = span(3, {vec({1, Complex(0, 2), 0})});
  const Comparison c = compare(v, v);
  EXPECT_NEAR(c.distance, 0.0, 1e-15);
  EXPECT_TRUE(c.equals);
  EXPECT_TRUE(c.contains);
}

TEST(Compare, OrthogonalLinesDistanceOne) {
  const Comparison c = compare(span(2, {vec({1, 0})}), span(2, {vec({0, 1})}));
  // P₁ - P₂ = diag(1, -1): spectral norm 1, Frobenius √2
  EXPECT_NEAR(c.distance, 1.0, 1e-15);
  EXPECT_NEAR(c.frobenius, std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(c.equals);
  EXPECT_FALSE(c.contains);
}

TEST(Compare, ZeroSubspaceIsContained) {
  EXPECT_TRUE(compare(span(2, {vec({1, 1})}), Subspace(2)).contains);
  EXPECT_TRUE(compare(Subspace(2), Subspace(2)).contains);
}

TEST(Compare, ContainmentIsDirectional) {
  const Subspace plane = span(3, {vec({1, 0, 0}), vec({0, 1, 0})});
  const Subspace line = span(3, {vec({1, 1, 0})});
  EXPECT_TRUE(compare(plane, line).contains);
  EXPECT_FALSE(compare(line, plane).contains);
}

class SubspaceProperty : public ::testing::TestWithParam<int> {};

TEST_P(SubspaceProperty, ProjectorIsOrthogonal) {
  CounterRng rng(GetParam(), 1);
  const Index n = rng.uniform_int(1, 7);
  const Subspace v = random_subspace(rng, n, rng.uniform_int(0, n));
  const ComplexMatrix p = v.projector();
  EXPECT_LT((p * p - p).norm(), 1e-13);
  EXPECT_LT((p.adjoint() - p).norm(), 1e-13);
  EXPECT_LT((v.basis().adjoint() * v.basis() - ComplexMatrix::Identity(v.dim(), v.dim())).norm(), 1e-13);
}

TEST_P(SubspaceProperty, DimensionFormula) {
  CounterRng rng(GetParam(), 2);
  const Index n = rng.uniform_int(1, 7);
  // share a random common part so intersections are not always trivial
  const Index common = rng.uniform_int(0, n);
  const ComplexMatrix shared = rng.complex_matrix(n, common);
  ComplexMatrix a(n, common + rng.uniform_int(0, n - common));
  a << shared, rng.complex_matrix(n, a.cols() - common);
  ComplexMatrix b(n, common + rng.uniform_int(0, n - common));
  b << shared, rng.complex_matrix(n, b.cols() - common);
  const Subspace v = orthonormalize(a), w = orthonormalize(b);
  EXPECT_EQ(combine(v, w, Combine::Sum).dim() + combine(v, w, Combine::Intersect).dim(), v.dim() + w.dim());
}

TEST_P(SubspaceProperty, DoubleComplement) {
  CounterRng rng(GetParam(), 3);
  const Index n = rng.uniform_int(1, 7);
  const Subspace v = random_subspace(rng, n, rng.uniform_int(0, n));
  EXPECT_TRUE(compare(complement(complement(v)), v).equals);
  const Subspace c = complement(v);
  EXPECT_EQ(c.dim() + v.dim(), n);
  EXPECT_LT((v.basis().adjoint() * c.basis()).norm(), 1e-13);
}

TEST_P(SubspaceProperty, OrthonormalizeIsIdempotent) {
  CounterRng rng(GetParam(), 4);
  const Index n = rng.uniform_int(1, 7);
  const Subspace v = random_subspace(rng, n, rng.uniform_int(0, n + 2));
  const Subspace again = orthonormalize(v.basis());
  EXPECT_EQ(again.dim(), v.dim());
  EXPECT_TRUE(compare(again, v).equals);
}

TEST_P(SubspaceProperty, KernelRankNullity) {
  CounterRng rng(GetParam(), 5);
  const Index rows = rng.uniform_int(1, 6), cols = rng.uniform_int(1, 6);
  const Index rank = rng.uniform_int(0, std::min(rows, cols));
  const ComplexMatrix m = rng.complex_matrix(rows, rank) * rng.complex_matrix(rank, cols);
  const Subspace k = kernel(m);
  EXPECT_EQ(k.dim(), cols - rank);
  EXPECT_LT((m * k.basis()).norm(), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, SubspaceProperty, ::testing::Range(0, 40));
