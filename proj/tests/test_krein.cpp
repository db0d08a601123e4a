#include "krel/generators.hpp"
#include "krel/krein.hpp"
#include "krel/weyl.hpp"

#include <gtest/gtest.h>

using namespace krel;

namespace {

ComplexVector vec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

BoundaryPair identity_pair() { return {{1, 1}, graph_of(ComplexMatrix::Identity(2, 2))}; }

bool same(const LinearRelation& a, const LinearRelation& b) {
  return a.in_dim() == b.in_dim() && a.out_dim() == b.out_dim() && compare(a.graph(), b.graph()).equals;
}

}  // namespace

TEST(JMetric, HandEvaluation) {
  const ComplexVector f = vec({1, Complex(0, 1)});
  // -i(<1, i> - <i, 1>) = -i(i - (-i)) = 2
  EXPECT_NEAR(std::abs(j_metric(f, f) - Complex(2.0)), 0.0, 1e-15);
}

TEST(JMetric, GraphOfZeroIsNeutral) {
  EXPECT_EQ(j_metric(vec({3, 0}), vec({3, 0})), Complex(0.0));
}

TEST(JMetric, DiagonalIsTwiceImaginaryPart) {
  CounterRng rng(31);
  const ComplexVector f = rng.complex_vector(6);
  const Complex m = j_metric(f, f);
  EXPECT_NEAR(m.imag(), 0.0, 1e-14);
  EXPECT_NEAR(m.real(), 2.0 * f.head(3).dot(f.tail(3)).imag(), 1e-13);
}

TEST(JMetric, SideChecksDimensions) {
  const KreinSpec spec{2, 1};
  EXPECT_THROW(j_metric(spec, Side::Out, ComplexVector::Zero(4), ComplexVector::Zero(4)), DimensionError);
  EXPECT_NO_THROW(j_metric(spec, Side::In, ComplexVector::Zero(4), ComplexVector::Zero(4)));
}

TEST(JMetric, EigenvectorsOfJHaveUnitMetric) {
  // (e, ±ie)/√2 are unit J-eigenvectors, so their metric is ±1; the unnormalized (e, ±ie) has ±2
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(j_metric(vec({r, Complex(0, r)}), vec({r, Complex(0, r)})).real(), 1.0, 1e-15);
  EXPECT_NEAR(j_metric(vec({r, Complex(0, -r)}), vec({r, Complex(0, -r)})).real(), -1.0, 1e-15);
}

TEST(JMatrix, SelfAdjointInvolution) {
  for (Index n : {1, 2, 5}) {
    const ComplexMatrix j = j_matrix(n);
    EXPECT_LT((j * j - ComplexMatrix::Identity(2 * n, 2 * n)).norm(), 1e-15);
    EXPECT_LT((j.adjoint() - j).norm(), 1e-15);
  }
  CounterRng rng(32);
  const ComplexVector v = rng.complex_vector(8);
  EXPECT_EQ(apply_j(apply_j(v)), v);
  EXPECT_LT((apply_j(v) - j_matrix(4) * v).norm(), 1e-15);
}

TEST(GreenResidual, IdentityIsZero) { EXPECT_LT(green_residual(identity_pair()), 1e-15); }

TEST(GreenResidual, DoublingScalesMetric) {
  const BoundaryPair p({1, 1}, graph_of(2.0 * ComplexMatrix::Identity(2, 2)));
  // graph basis (e, 2e)/√5: the J-Gram of the outputs is 4× that of the inputs,
  // and the input Gram has entries of size 1/5, so the residual is 3/5
  EXPECT_NEAR(green_residual(p), 0.6, 1e-14);
}

TEST(GreenResidual, ZeroRelationIsVacuous) {
  EXPECT_EQ(green_residual(BoundaryPair({2, 1}, LinearRelation(4, 2))), 0.0);
}

TEST(KreinAdjoint, IdentityIsUnitary) {
  const BoundaryPair p = identity_pair();
  const LinearRelation adj = krein_adjoint(p);
  EXPECT_TRUE(same(adj, graph_of(ComplexMatrix::Identity(2, 2))));
  EXPECT_TRUE(same(adj, inverse(p.gamma())));
}

TEST(KreinAdjoint, ZeroRelationGivesFullSpace) {
  EXPECT_TRUE(krein_adjoint(BoundaryPair({1, 2}, LinearRelation(2, 4))).graph().is_full());
}

TEST(KreinAdjoint, DefiningIdentityOnRandomGamma) {
  CounterRng rng(33);
  const KreinSpec spec{2, 2};
  const LinearRelation g = make_relation(4, 4, rng.complex_matrix(4, 3), rng.complex_matrix(4, 3));
  const LinearRelation adj = krein_adjoint(spec, g);
  ASSERT_EQ(adj.dim(), 8 - 3);
  for (Index i = 0; i < g.dim(); ++i)
    for (Index k = 0; k < adj.dim(); ++k) {
      const Complex lhs = j_metric(g.inputs().col(i), adj.outputs().col(k));
      const Complex rhs = j_metric(g.outputs().col(i), adj.inputs().col(k));
      EXPECT_LT(std::abs(lhs - rhs), 1e-13);
    }
}

TEST(Classify, Identity) {
  const Classification c = classify(identity_pair());
  EXPECT_TRUE(c.isometric);
  EXPECT_TRUE(c.unitary);
  EXPECT_TRUE(c.essentially_unitary);
  EXPECT_FALSE(c.note.empty());
}

TEST(Classify, DroppingOneVectorLosesUnitarity) {
  const BoundaryPair p = identity_pair();
  const LinearRelation half(2, 2, Subspace::from_orthonormal(p.gamma().graph().basis().leftCols(1)));
  const Classification c = classify(BoundaryPair({1, 1}, half));
  EXPECT_TRUE(c.isometric);
  EXPECT_FALSE(c.unitary);
  EXPECT_EQ(c.dim_adjoint, 3);
}

TEST(Classify, DoublingIsNeither) {
  const Classification c = classify(BoundaryPair({1, 1}, graph_of(2.0 * ComplexMatrix::Identity(2, 2))));
  EXPECT_FALSE(c.isometric);
  EXPECT_FALSE(c.unitary);
  EXPECT_GT(c.green_residual, 0.1);
}

TEST(Classify, DomainEqualsAdjointInFiniteDimensions) {
  // A* = (A_*)** = A_*, so the dense-domain hypothesis never fails here
  CounterRng rng(34);
  const LinearRelation g = make_relation(4, 2, rng.complex_matrix(4, 2), rng.complex_matrix(2, 2));
  const Classification c = classify(BoundaryPair({2, 1}, g));
  EXPECT_TRUE(c.domain_is_adjoint);
  EXPECT_EQ(c.note.find("proper"), std::string::npos);
}

TEST(RandomIsometric, ZeroGraphDim) {
  const BoundaryPair p = random_isometric({2, 1}, 0, 5);
  EXPECT_EQ(p.gamma().dim(), 0);
  EXPECT_TRUE(classify(p).isometric);
}

TEST(RandomIsometric, FullGraphOnC1) {
  const BoundaryPair p = random_isometric({1, 1}, 2, 7);
  EXPECT_EQ(p.gamma().dim(), 2);
  EXPECT_LT(green_residual(p), 1e-10);
}

TEST(RandomIsometric, UnrealizableSignatureThrows) {
  // the whole of C^6 has signature (3, 3), which cannot fit in C^2
  EXPECT_THROW(random_isometric({3, 1}, 6, 1, 8), Error);
  EXPECT_THROW(random_isometric({1, 1}, 3, 1), DomainError);
}

class KreinProperty : public ::testing::TestWithParam<int> {};

TEST_P(KreinProperty, MetricIsHermitian) {
  CounterRng rng(GetParam(), 41);
  const Index n = rng.uniform_int(1, 5);
  const ComplexVector f = rng.complex_vector(2 * n), g = rng.complex_vector(2 * n);
  EXPECT_LT(std::abs(j_metric(g, f) - std::conj(j_metric(f, g))), 1e-13);
}

TEST_P(KreinProperty, RandomIsometricIsIsometric) {
  CounterRng rng(GetParam(), 42);
  const Index n = rng.uniform_int(1, 4), d = rng.uniform_int(1, 3);
  const Index k = rng.uniform_int(0, std::min(2 * n, d));
  const BoundaryPair p = random_isometric({n, d}, k, rng.next_u64());
  EXPECT_EQ(p.gamma().dim(), k);
  EXPECT_LT(green_residual(p), 1e-10);
  EXPECT_TRUE(compare(krein_adjoint(p).graph(), inverse(p.gamma()).graph()).contains);
}

TEST_P(KreinProperty, AdjointDimensionAndRoutes) {
  CounterRng rng(GetParam(), 43);
  const Index n = rng.uniform_int(1, 4), d = rng.uniform_int(1, 3);
  const KreinSpec spec{n, d};
  const Index k = rng.uniform_int(0, 2 * (n + d));
  const LinearRelation g = make_relation(2 * n, 2 * d, rng.complex_matrix(2 * n, k), rng.complex_matrix(2 * d, k));
  const LinearRelation adj = krein_adjoint(spec, g);
  EXPECT_EQ(g.dim() + adj.dim(), 2 * (n + d));
  EXPECT_TRUE(same(adj, krein_adjoint_by_conjugation(spec, g)));
}

TEST_P(KreinProperty, UnitaryMinusOneVector) {
  const BoundaryPair p = random_boundary_pair({2, 2}, static_cast<std::uint64_t>(GetParam()));
  ASSERT_TRUE(classify(p).unitary);
  const LinearRelation fewer(4, 4, Subspace::from_orthonormal(p.gamma().graph().basis().leftCols(p.gamma().dim() - 1)));
  const Classification c = classify(BoundaryPair({2, 2}, fewer));
  EXPECT_TRUE(c.isometric);
  EXPECT_FALSE(c.unitary);
}

TEST_P(KreinProperty, RestrictionsStayIsometric) {
  CounterRng rng(GetParam(), 44);
  const Index n = rng.uniform_int(1, 4), d = rng.uniform_int(1, 3);
  PairOptions o;
  o.unitary = GetParam() % 2 == 0;
  const BoundaryPair p = random_boundary_pair({n, d}, rng.next_u64(), o);
  const std::vector<Complex> pts{{0, 1}, {1, -2}, {-0.5, 3}};
  for (Complex z : pts) {
    const LinearRelation gz = gamma_restrict(p, z);
    EXPECT_LT(green_residual(p.spec(), gz), 1e-10);
    EXPECT_TRUE(compare(p.gamma().graph(), gz.graph()).contains);
    const LinearRelation adj = krein_adjoint(p.spec(), gz);
    for (Complex w : pts) EXPECT_TRUE(compare(adj.graph(), inverse(gamma_restrict(p, w)).graph()).contains);
  }
}

TEST_P(KreinProperty, GeneratedPairsMeetStandingHypotheses) {
  CounterRng rng(GetParam(), 45);
  const Index n = rng.uniform_int(1, 4), d = rng.uniform_int(1, 3);
  PairOptions o;
  o.unitary = GetParam() % 2 == 1;
  const BoundaryPair p = random_boundary_pair({n, d}, rng.next_u64(), o);
  const Classification c = classify(p);
  EXPECT_TRUE(c.isometric);
  EXPECT_EQ(c.unitary, o.unitary);
  EXPECT_TRUE(c.a_symmetric);
  EXPECT_TRUE(c.domain_is_adjoint);
  EXPECT_TRUE(c.a_in_kernel);
  EXPECT_LT(c.a_mul_distance, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Seeds, KreinProperty, ::testing::Range(0, 30));
