#pragma once

// Linear relations between finite-dimensional spaces, stored as graph
// subspaces of C^in ⊕ C^out (input block first, output block second).
// Inner products are conjugate-linear in the first argument.

#include "krel/subspace.hpp"

#include <Eigen/Eigenvalues>

#include <optional>
#include <utility>
#include <vector>

namespace krel {

class LinearRelation {
 public:
  LinearRelation(Index in_dim, Index out_dim)
      : in_dim_(in_dim), out_dim_(out_dim), graph_(in_dim + out_dim) {}

  LinearRelation(Index in_dim, Index out_dim, Subspace graph)
      : in_dim_(in_dim), out_dim_(out_dim), graph_(std::move(graph)) {
    if (graph_.ambient_dim() != in_dim_ + out_dim_)
      throw DimensionError("LinearRelation: graph ambient dimension must be in_dim + out_dim");
  }

  Index in_dim() const { return in_dim_; }
  Index out_dim() const { return out_dim_; }
  Index dim() const { return graph_.dim(); }
  const Subspace& graph() const { return graph_; }

  /// Input components of the orthonormal graph basis (in_dim × dim).
  auto inputs() const { return graph_.basis().topRows(in_dim_); }
  /// Output components of the orthonormal graph basis (out_dim × dim).
  auto outputs() const { return graph_.basis().bottomRows(out_dim_); }

  bool contains(const ComplexVector& f, const ComplexVector& g, double tol = 1e-10) const {
    ComplexVector v(in_dim_ + out_dim_);
    v << f, g;
    return graph_.residual(v).norm() <= tol * std::max(1.0, v.norm());
  }

 private:
  Index in_dim_;
  Index out_dim_;
  Subspace graph_;
};

using SpanningPair = std::pair<ComplexVector, ComplexVector>;

/// Relation spanned by the column pairs (inputs.col(i), outputs.col(i)).
inline LinearRelation make_relation(Index in_dim, Index out_dim, const ComplexMatrix& inputs,
                                    const ComplexMatrix& outputs, const Tolerance& tol = {}) {
  if (inputs.rows() != in_dim || outputs.rows() != out_dim || inputs.cols() != outputs.cols())
    throw DimensionError("make_relation: spanning pairs do not match the relation dimensions");
  ComplexMatrix stacked(in_dim + out_dim, inputs.cols());
  stacked << inputs, outputs;
  return {in_dim, out_dim, orthonormalize(stacked, tol)};
}

inline LinearRelation make_relation(Index in_dim, Index out_dim,
                                    const std::vector<SpanningPair>& pairs,
                                    const Tolerance& tol = {}) {
  const auto count = static_cast<Index>(pairs.size());
  ComplexMatrix in(in_dim, count), out(out_dim, count);
  for (Index i = 0; i < count; ++i) {
    const auto& [f, g] = pairs[static_cast<std::size_t>(i)];
    if (f.size() != in_dim || g.size() != out_dim)
      throw DimensionError("make_relation: spanning pair has the wrong dimensions");
    in.col(i) = f;
    out.col(i) = g;
  }
  return make_relation(in_dim, out_dim, in, out, tol);
}

/// Graph {(f, op f)} of a matrix.
inline LinearRelation graph_of(const ComplexMatrix& op, const Tolerance& tol = {}) {
  return make_relation(op.cols(), op.rows(), ComplexMatrix::Identity(op.cols(), op.cols()), op,
                       tol);
}

enum class Part { Domain, Range, Kernel, Multivalued };

inline Subspace part(const LinearRelation& t, Part which, const Tolerance& tol = {}) {
  switch (which) {
    // halves of an orthonormal graph basis: rank is judged against 1
    case Part::Domain:
      return orthonormalize(t.inputs(), tol, 1.0);
    case Part::Range:
      return orthonormalize(t.outputs(), tol, 1.0);
    case Part::Kernel:
      // {f : (f, 0) ∈ T}
      return orthonormalize(t.inputs() * kernel_basis(t.outputs(), tol, 1.0), tol, 1.0);
    case Part::Multivalued:
      // {g : (0, g) ∈ T}
      return orthonormalize(t.outputs() * kernel_basis(t.inputs(), tol, 1.0), tol, 1.0);
  }
  throw DomainError("part: unknown selector");
}

inline LinearRelation inverse(const LinearRelation& t) {
  ComplexMatrix swapped(t.in_dim() + t.out_dim(), t.dim());
  swapped << t.outputs(), t.inputs();
  return {t.out_dim(), t.in_dim(), Subspace::from_orthonormal(std::move(swapped))};
}

/// S∘T = {(f, h) : (f, g) ∈ T, (g, h) ∈ S for some g}.
inline LinearRelation compose(const LinearRelation& s, const LinearRelation& t,
                              const Tolerance& tol = {}) {
  if (t.out_dim() != s.in_dim())
    throw DimensionError("compose: T.out_dim must equal S.in_dim");
  ComplexMatrix link(t.out_dim(), t.dim() + s.dim());
  link << t.outputs(), -s.inputs();
  const ComplexMatrix coeffs = kernel_basis(link, tol, 1.0);
  return make_relation(t.in_dim(), s.out_dim(), t.inputs() * coeffs.topRows(t.dim()),
                       s.outputs() * coeffs.bottomRows(s.dim()), tol);
}

/// T - z = {(f, f' - z f) : (f, f') ∈ T}.
inline LinearRelation shift(const LinearRelation& t, Complex z, const Tolerance& tol = {}) {
  if (t.in_dim() != t.out_dim()) throw DimensionError("shift: relation must act in one space");
  return make_relation(t.in_dim(), t.out_dim(), t.inputs(), t.outputs() - z * t.inputs(), tol);
}

/// T* = {(g, g') : <f', g> = <f, g'> for all (f, f') ∈ T}.
inline LinearRelation adjoint_hilbert(const LinearRelation& t, const Tolerance& tol = {}) {
  ComplexMatrix system(t.dim(), t.out_dim() + t.in_dim());
  system << t.outputs().adjoint(), -t.inputs().adjoint();
  return {t.out_dim(), t.in_dim(), kernel(system, tol)};
}

inline LinearRelation componentwise_sum(const LinearRelation& t, const LinearRelation& s,
                                        const Tolerance& tol = {}) {
  if (t.in_dim() != s.in_dim() || t.out_dim() != s.out_dim())
    throw DimensionError("componentwise_sum: relations act between different spaces");
  return {t.in_dim(), t.out_dim(), combine(t.graph(), s.graph(), Combine::Sum, tol)};
}

/// Eigenspace {(f, z f) : (f, z f) ∈ T} as a subspace of the graph space.
struct EigenPair {
  Complex z;
  Subspace hat_space;

  Subspace eigenvectors(Index n, const Tolerance& tol = {}) const {
    return orthonormalize(hat_space.basis().topRows(n), tol);
  }
};

inline EigenPair eigenspace_hat(const LinearRelation& t, Complex z, const Tolerance& tol = {}) {
  if (t.in_dim() != t.out_dim())
    throw DimensionError("eigenspace_hat: relation must act in one space");
  const Index n = t.in_dim();
  // graph of z·I is ker [z I, -I]
  ComplexMatrix constraint(n, 2 * n);
  constraint << z * ComplexMatrix::Identity(n, n), -ComplexMatrix::Identity(n, n);
  return {z, intersect_kernel(t.graph(), constraint, tol)};
}

/// Operator matrix of T when T is single-valued with full domain.
inline std::optional<ComplexMatrix> as_operator(const LinearRelation& t,
                                                const Tolerance& tol = {}) {
  if (t.dim() != t.in_dim()) return std::nullopt;
  if (t.dim() == 0) return ComplexMatrix(t.out_dim(), 0);
  Eigen::FullPivLU<ComplexMatrix> lu(t.inputs());
  lu.setThreshold(tol.rank_threshold(1.0, t.in_dim(), t.dim()));
  if (!lu.isInvertible()) return std::nullopt;
  return ComplexMatrix(t.outputs() * lu.inverse());
}

enum class Sign { Upper, Lower };

struct DissipativeReport {
  bool dissipative = false;
  bool maximal = false;           // dim T = d
  bool maximal_by_range = false;  // dim ran(T + w) = d, w = ±i
  double extreme_eigenvalue = 0.0;
  std::optional<ComplexVector> witness;  // graph vector violating the sign condition
};

/// Dissipative (Upper: Im<h,h'> >= 0) or accumulative (Lower: <= 0) test.
inline DissipativeReport dissipative_class(const LinearRelation& t, Sign sign,
                                           const Tolerance& tol = {}) {
  if (t.in_dim() != t.out_dim())
    throw DimensionError("dissipative_class: relation must act in one space");
  const Index d = t.in_dim();
  DissipativeReport r;
  if (t.dim() == 0) {
    r.dissipative = true;
  } else {
    const ComplexMatrix cross = t.inputs().adjoint() * t.outputs();
    const ComplexMatrix form = (cross - cross.adjoint()) / (2.0 * kI);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(form);
    const RealVector& ev = es.eigenvalues();
    const double scale = 1.0 + ev.cwiseAbs().maxCoeff();
    if (sign == Sign::Upper) {
      r.extreme_eigenvalue = ev(0);
      r.dissipative = ev(0) >= -1e-10 * scale;
      if (!r.dissipative) r.witness = t.graph().basis() * es.eigenvectors().col(0);
    } else {
      r.extreme_eigenvalue = ev(ev.size() - 1);
      r.dissipative = r.extreme_eigenvalue <= 1e-10 * scale;
      if (!r.dissipative) r.witness = t.graph().basis() * es.eigenvectors().col(ev.size() - 1);
    }
  }
  const Complex w = sign == Sign::Upper ? kI : -kI;
  r.maximal = r.dissipative && t.dim() == d;
  r.maximal_by_range = r.dissipative && part(shift(t, -w, tol), Part::Range, tol).dim() == d;
  return r;
}

}  // namespace krel
