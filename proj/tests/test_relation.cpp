#include "krel/random.hpp"
#include "krel/relation.hpp"

#include <gtest/gtest.h>

using namespace krel;

namespace {

ComplexVector vec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

ComplexMatrix diag(std::initializer_list<Complex> xs) { return vec(xs).asDiagonal(); }

bool same(const LinearRelation& a, const LinearRelation& b) {
  return a.in_dim() == b.in_dim() && a.out_dim() == b.out_dim() && compare(a.graph(), b.graph()).equals;
}

LinearRelation random_relation(CounterRng& rng, Index d) {
  const Index k = rng.uniform_int(0, 2 * d);
  return make_relation(d, d, rng.complex_matrix(d, k), rng.complex_matrix(d, k));
}

}  // namespace

TEST(MakeRelation, IdentityOnC1) {
  const LinearRelation t = make_relation(1, 1, {{vec({1}), vec({1})}});
  EXPECT_EQ(t.dim(), 1);
  EXPECT_TRUE(t.contains(vec({2}), vec({2})));
}

TEST(MakeRelation, PurelyMultivalued) {
  const LinearRelation t = make_relation(1, 1, {{vec({0}), vec({1})}});
  EXPECT_TRUE(part(t, Part::Domain).is_zero());
  EXPECT_TRUE(part(t, Part::Multivalued).is_full());
}

TEST(MakeRelation, EmptyPairsGiveZeroRelation) {
  const LinearRelation t = make_relation(2, 2, std::vector<SpanningPair>{});
  EXPECT_EQ(t.dim(), 0);
  EXPECT_EQ(t.graph().ambient_dim(), 4);
}

TEST(MakeRelation, WrongDimensionThrows) {
  EXPECT_THROW(make_relation(2, 1, {{vec({1}), vec({1})}}), DimensionError);
}

TEST(Part, IdentityOnC2) {
  const LinearRelation t = graph_of(ComplexMatrix::Identity(2, 2));
  EXPECT_TRUE(part(t, Part::Domain).is_full());
  EXPECT_TRUE(part(t, Part::Range).is_full());
  EXPECT_TRUE(part(t, Part::Kernel).is_zero());
  EXPECT_TRUE(part(t, Part::Multivalued).is_zero());
}

TEST(Part, TwoDimensionalGraphInC1) {
  // (1,1) - (0,1) = (1,0), so the graph is all of C¹ × C¹
  const LinearRelation t = make_relation(1, 1, {{vec({1}), vec({1})}, {vec({0}), vec({1})}});
  EXPECT_TRUE(part(t, Part::Multivalued).is_full());
  EXPECT_TRUE(part(t, Part::Domain).is_full());
  EXPECT_TRUE(part(t, Part::Kernel).is_full());
}

TEST(Part, ZeroRelationHasZeroParts) {
  const LinearRelation t(2, 3);
  for (Part p : {Part::Domain, Part::Range, Part::Kernel, Part::Multivalued}) EXPECT_TRUE(part(t, p).is_zero());
}

TEST(Inverse, OfIdentity) {
  const LinearRelation id = graph_of(ComplexMatrix::Identity(2, 2));
  EXPECT_TRUE(same(inverse(id), id));
}

TEST(Shift, IdentityMinusOneIsZeroOperator) {
  const LinearRelation s = shift(graph_of(ComplexMatrix::Identity(1, 1)), 1.0);
  EXPECT_TRUE(same(s, graph_of(ComplexMatrix::Zero(1, 1))));
}

TEST(Compose, InverseAfterDiagonal) {
  const LinearRelation t = graph_of(diag({1, 2}));
  const LinearRelation c = compose(inverse(t), t);
  // (f, 2·diag·...) by hand: diag(1,2)⁻¹ diag(1,2) = I on dom T = C²
  EXPECT_TRUE(compare(c.graph(), graph_of(ComplexMatrix::Identity(2, 2)).graph()).contains);
  EXPECT_TRUE(same(c, graph_of(ComplexMatrix::Identity(2, 2))));
}

TEST(Compose, DimensionMismatchThrows) {
  EXPECT_THROW(compose(graph_of(ComplexMatrix::Identity(2, 2)), graph_of(ComplexMatrix::Identity(3, 3))),
               DimensionError);
}

TEST(Compose, MatchesMatrixProduct) {
  CounterRng rng(11);
  const ComplexMatrix a = rng.complex_matrix(3, 2), b = rng.complex_matrix(2, 4);
  EXPECT_TRUE(same(compose(graph_of(a), graph_of(b)), graph_of(a * b)));
}

TEST(AdjointHilbert, HermitianDiagonalIsSelfAdjoint) {
  const LinearRelation t = graph_of(diag({1, 2}));
  EXPECT_TRUE(same(adjoint_hilbert(t), t));
}

TEST(AdjointHilbert, ZeroRelationHasFullAdjoint) {
  EXPECT_TRUE(adjoint_hilbert(LinearRelation(2, 2)).graph().is_full());
}

TEST(AdjointHilbert, NilpotentShift) {
  ComplexMatrix n(2, 2), nt(2, 2);
  n << 0, 1, 0, 0;
  nt << 0, 0, 1, 0;
  EXPECT_TRUE(same(adjoint_hilbert(graph_of(n)), graph_of(nt)));
}

TEST(AdjointHilbert, MatchesConjugateTranspose) {
  CounterRng rng(12);
  const ComplexMatrix a = rng.complex_matrix(3, 2);
  EXPECT_TRUE(same(adjoint_hilbert(graph_of(a)), graph_of(a.adjoint())));
}

TEST(ComponentwiseSum, WithZeroRelation) {
  const LinearRelation t = graph_of(diag({1, Complex(0, 1)}));
  EXPECT_TRUE(same(componentwise_sum(t, LinearRelation(2, 2)), t));
}

TEST(ComponentwiseSum, KernelPlusMultivaluedIsEverything) {
  const LinearRelation a = make_relation(1, 1, {{vec({1}), vec({0})}});
  const LinearRelation b = make_relation(1, 1, {{vec({0}), vec({1})}});
  EXPECT_TRUE(componentwise_sum(a, b).graph().is_full());
}

TEST(EigenspaceHat, DiagonalEigenvalue) {
  const EigenPair e = eigenspace_hat(graph_of(diag({1, 2})), 1.0);
  ASSERT_EQ(e.hat_space.dim(), 1);
  const LinearRelation expected = make_relation(2, 2, {{vec({1, 0}), vec({1, 0})}});
  EXPECT_TRUE(compare(e.hat_space, expected.graph()).equals);
}

TEST(EigenspaceHat, NonEigenvalueGivesZero) {
  EXPECT_TRUE(eigenspace_hat(graph_of(diag({1, 2})), Complex(0, 1)).hat_space.is_zero());
}

TEST(EigenspaceHat, FullRelationOnC1) {
  const LinearRelation all(1, 1, Subspace::full(2));
  for (Complex z : {Complex(0, 1), Complex(2, -3)}) {
    const EigenPair e = eigenspace_hat(all, z);
    ASSERT_EQ(e.hat_space.dim(), 1);
    EXPECT_TRUE(compare(e.hat_space, orthonormalize(2, {vec({1, z})})).equals);
  }
}

TEST(Dissipative, MultiplicationByI) {
  const DissipativeReport r = dissipative_class(graph_of(diag({Complex(0, 1)})), Sign::Upper);
  EXPECT_TRUE(r.dissipative);
  EXPECT_TRUE(r.maximal);
  EXPECT_TRUE(r.maximal_by_range);
  EXPECT_FALSE(r.witness);
}

TEST(Dissipative, MultiplicationByMinusIFailsWithWitness) {
  const LinearRelation t = graph_of(diag({Complex(0, -1)}));
  const DissipativeReport r = dissipative_class(t, Sign::Upper);
  EXPECT_FALSE(r.dissipative);
  ASSERT_TRUE(r.witness);
  const ComplexVector w = *r.witness;
  EXPECT_LT(w.head(1).dot(w.tail(1)).imag(), 0.0);
  EXPECT_TRUE(dissipative_class(t, Sign::Lower).dissipative);
}

TEST(Dissipative, ZeroRelationIsNotMaximal) {
  const DissipativeReport r = dissipative_class(LinearRelation(1, 1), Sign::Upper);
  EXPECT_TRUE(r.dissipative);
  EXPECT_FALSE(r.maximal);
  EXPECT_FALSE(r.maximal_by_range);
}

TEST(AsOperator, RecoversMatrixAndRejectsMultivalued) {
  const ComplexMatrix a = diag({2, Complex(0, 3)});
  const auto m = as_operator(graph_of(a));
  ASSERT_TRUE(m);
  EXPECT_LT((*m - a).norm(), 1e-14);
  EXPECT_FALSE(as_operator(make_relation(1, 1, {{vec({0}), vec({1})}})));
}

class RelationProperty : public ::testing::TestWithParam<int> {};

TEST_P(RelationProperty, InverseAndAdjointAreInvolutions) {
  CounterRng rng(GetParam(), 21);
  const LinearRelation t = random_relation(rng, rng.uniform_int(1, 4));
  EXPECT_TRUE(same(inverse(inverse(t)), t));
  EXPECT_TRUE(same(adjoint_hilbert(adjoint_hilbert(t)), t));
}

TEST_P(RelationProperty, AdjointDimensionCount) {
  CounterRng rng(GetParam(), 22);
  const Index d = rng.uniform_int(1, 4);
  const LinearRelation t = random_relation(rng, d);
  EXPECT_EQ(t.dim() + adjoint_hilbert(t).dim(), 2 * d);
}

TEST_P(RelationProperty, KernelOfShiftIsEigenspace) {
  CounterRng rng(GetParam(), 23);
  const Index d = rng.uniform_int(1, 4);
  // plant an eigenvector so the eigenspace is nontrivial
  const Complex z = rng.complex_normal();
  const ComplexVector f = rng.complex_vector(d);
  const Index extra = rng.uniform_int(0, d);
  ComplexMatrix in(d, extra + 1), out(d, extra + 1);
  in << f, rng.complex_matrix(d, extra);
  out << z * f, rng.complex_matrix(d, extra);
  const LinearRelation t = make_relation(d, d, in, out);
  const Subspace eig = eigenspace_hat(t, z).eigenvectors(d);
  EXPECT_GE(eig.dim(), 1);
  EXPECT_TRUE(compare(part(shift(t, z), Part::Kernel), eig).equals);
}

TEST_P(RelationProperty, InversePartsSwap) {
  CounterRng rng(GetParam(), 24);
  const LinearRelation t = random_relation(rng, rng.uniform_int(1, 4));
  EXPECT_TRUE(compare(part(inverse(t), Part::Domain), part(t, Part::Range)).equals);
  EXPECT_TRUE(compare(part(inverse(t), Part::Multivalued), part(t, Part::Kernel)).equals);
}

TEST_P(RelationProperty, MaximalityCriteriaAgree) {
  CounterRng rng(GetParam(), 25);
  const Index d = rng.uniform_int(1, 4);
  // dissipative: graph of H + iP with H Hermitian, P ≥ 0, plus random subspaces of it
  const ComplexMatrix g = rng.complex_matrix(d, d);
  const ComplexMatrix q = rng.complex_matrix(d, rng.uniform_int(0, d));
  const ComplexMatrix op = (g + g.adjoint()) / 2.0 + kI * q * q.adjoint();
  const LinearRelation full = graph_of(op);
  const Index k = rng.uniform_int(0, d);
  const ComplexMatrix x = rng.complex_matrix(d, k);
  const LinearRelation sub = make_relation(d, d, x, op * x);
  for (const LinearRelation* r : {&full, &sub}) {
    const DissipativeReport rep = dissipative_class(*r, Sign::Upper);
    EXPECT_TRUE(rep.dissipative);
    EXPECT_LE(r->dim(), d);
    EXPECT_EQ(rep.maximal, rep.maximal_by_range);
    EXPECT_EQ(rep.maximal, r->dim() == d);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RelationProperty, ::testing::Range(0, 40));
