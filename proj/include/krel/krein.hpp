#pragma once

// Krein-space structure of doubled spaces C^n ⊕ C^n with the canonical
// symmetry J(f, f') = (-i f', i f), and boundary pairs Γ ⊆ C^{2n} × C^{2d}.

#include "krel/relation.hpp"

#include <string>

namespace krel {

/// J on C^{2n}: the second Pauli matrix acting blockwise.
inline ComplexMatrix j_matrix(Index base_dim) {
  const Index n = base_dim;
  ComplexMatrix j = ComplexMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -kI * ComplexMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = kI * ComplexMatrix::Identity(n, n);
  return j;
}

inline ComplexVector apply_j(const ComplexVector& v) {
  if (v.size() % 2 != 0) throw DimensionError("apply_j: doubled vector has odd length");
  const Index n = v.size() / 2;
  ComplexVector out(v.size());
  out.head(n) = -kI * v.tail(n);
  out.tail(n) = kI * v.head(n);
  return out;
}

/// [f̂, ĝ] = <f̂, J ĝ> = -i(<f, g'> - <f', g>).
inline Complex j_metric(const ComplexVector& f, const ComplexVector& g) {
  if (f.size() != g.size() || f.size() % 2 != 0)
    throw DimensionError("j_metric: vectors must share one doubled space");
  const Index n = f.size() / 2;
  return -kI * (f.head(n).dot(g.tail(n)) - f.tail(n).dot(g.head(n)));
}

/// Gram matrix of the J-metric on the columns of `b`: (b^H J b).
inline ComplexMatrix j_gram(const ComplexMatrix& b) {
  const Index n = b.rows() / 2;
  const ComplexMatrix cross = b.topRows(n).adjoint() * b.bottomRows(n);
  return -kI * (cross - cross.adjoint());
}

struct KreinSpec {
  Index base_dim_in = 0;   // dim of the base space
  Index base_dim_out = 0;  // dim of the boundary space

  Index doubled_in() const { return 2 * base_dim_in; }
  Index doubled_out() const { return 2 * base_dim_out; }
  ComplexMatrix j_in() const { return j_matrix(base_dim_in); }
  ComplexMatrix j_out() const { return j_matrix(base_dim_out); }
};

enum class Side { In, Out };

inline Complex j_metric(const KreinSpec& spec, Side side, const ComplexVector& f,
                        const ComplexVector& g) {
  const Index expected = side == Side::In ? spec.doubled_in() : spec.doubled_out();
  if (f.size() != expected || g.size() != expected)
    throw DimensionError("j_metric: vectors are not in the selected doubled space");
  return j_metric(f, g);
}

/// Reads a doubled vector subspace of C^{2n} as a relation in C^n.
inline LinearRelation as_relation(const Subspace& doubled) {
  if (doubled.ambient_dim() % 2 != 0)
    throw DimensionError("as_relation: ambient dimension must be even");
  const Index n = doubled.ambient_dim() / 2;
  return {n, n, doubled};
}

/// Γ together with the relations it determines in the base space.
///   A_* = dom Γ, A = (A_*)*, A* = A**, S = ker Γ.
class BoundaryPair {
 public:
  BoundaryPair(KreinSpec spec, LinearRelation gamma, const Tolerance& tol = {})
      : spec_(spec),
        gamma_(std::move(gamma)),
        a_lower_(spec.base_dim_in, spec.base_dim_in),
        s_(spec.base_dim_in, spec.base_dim_in) {
    if (gamma_.in_dim() != spec_.doubled_in() || gamma_.out_dim() != spec_.doubled_out())
      throw DimensionError("BoundaryPair: Γ must map the doubled base space to the doubled boundary space");
    a_lower_ = as_relation(part(gamma_, Part::Domain, tol));
    s_ = as_relation(part(gamma_, Part::Kernel, tol));
  }

  const KreinSpec& spec() const { return spec_; }
  const LinearRelation& gamma() const { return gamma_; }
  /// A_* = dom Γ.
  const LinearRelation& a_lower() const { return a_lower_; }
  /// S = ker Γ.
  const LinearRelation& kernel_relation() const { return s_; }
  /// A = (A_*)*.
  LinearRelation a(const Tolerance& tol = {}) const { return adjoint_hilbert(a_lower_, tol); }
  /// A* = ((A_*)*)*.
  LinearRelation a_adjoint(const Tolerance& tol = {}) const {
    return adjoint_hilbert(a(tol), tol);
  }

 private:
  KreinSpec spec_;
  LinearRelation gamma_;
  LinearRelation a_lower_;
  LinearRelation s_;
};

/// max |[f̂_i, f̂_j]_in - [ĥ_i, ĥ_j]_out| over the orthonormal graph basis of Γ.
inline double green_residual(const KreinSpec& spec, const LinearRelation& gamma) {
  if (gamma.in_dim() != spec.doubled_in() || gamma.out_dim() != spec.doubled_out())
    throw DimensionError("green_residual: Γ does not match the Krein spec");
  if (gamma.dim() == 0) return 0.0;
  const ComplexMatrix diff = j_gram(gamma.inputs()) - j_gram(gamma.outputs());
  return diff.cwiseAbs().maxCoeff();
}

inline double green_residual(const BoundaryPair& pair) {
  return green_residual(pair.spec(), pair.gamma());
}

/// Γ^[*] = {(k̂, ĝ) : [f̂, ĝ]_in = [ĥ, k̂]_out for all (f̂, ĥ) ∈ Γ}, computed as the
/// kernel of one linear system.
inline LinearRelation krein_adjoint(const KreinSpec& spec, const LinearRelation& gamma,
                                    const Tolerance& tol = {}) {
  const ComplexMatrix lhs_in = gamma.inputs().adjoint() * spec.j_in();
  const ComplexMatrix lhs_out = gamma.outputs().adjoint() * spec.j_out();
  ComplexMatrix system(gamma.dim(), spec.doubled_out() + spec.doubled_in());
  system << -lhs_out, lhs_in;
  return {spec.doubled_out(), spec.doubled_in(), kernel(system, tol)};
}

inline LinearRelation krein_adjoint(const BoundaryPair& pair, const Tolerance& tol = {}) {
  return krein_adjoint(pair.spec(), pair.gamma(), tol);
}

/// Same relation as krein_adjoint, obtained as J_in ∘ Γ* ∘ J_out.
inline LinearRelation krein_adjoint_by_conjugation(const KreinSpec& spec,
                                                   const LinearRelation& gamma,
                                                   const Tolerance& tol = {}) {
  const LinearRelation j_in = graph_of(spec.j_in(), tol);
  const LinearRelation j_out = graph_of(spec.j_out(), tol);
  return compose(j_in, compose(adjoint_hilbert(gamma, tol), j_out, tol), tol);
}

struct Classification {
  bool isometric = false;
  bool unitary = false;
  /// Closure is the identity in finite dimensions, so this equals `unitary`.
  bool essentially_unitary = false;
  double green_residual = 0.0;
  double inverse_outside_adjoint = 0.0;  // residual of Γ^{-1} ⊆ Γ^[*]
  Index dim_gamma = 0;
  Index dim_adjoint = 0;
  double a_mul_distance = 0.0;  // distance between (A_*)* and mul Γ^[*]
  bool a_symmetric = false;     // A ⊆ A*
  bool domain_is_adjoint = false;  // A_* = A*; false flags dom Γ ⊊ A*
  bool a_in_kernel = false;        // A ⊆ ker Γ
  std::string note;
};

inline Classification classify(const BoundaryPair& pair, const Tolerance& tol = {}) {
  Classification c;
  const LinearRelation adj = krein_adjoint(pair, tol);
  const LinearRelation inv = inverse(pair.gamma());
  const Comparison inv_vs_adj = compare(adj.graph(), inv.graph(), tol);
  c.green_residual = green_residual(pair);
  c.inverse_outside_adjoint = containment_residual(adj.graph(), inv.graph());
  c.dim_gamma = pair.gamma().dim();
  c.dim_adjoint = adj.dim();
  c.isometric = inv_vs_adj.contains;
  c.unitary = c.isometric && inv_vs_adj.equals;
  c.essentially_unitary = c.unitary;

  const LinearRelation a = pair.a(tol);
  const Subspace mul_adj = part(adj, Part::Multivalued, tol);
  c.a_mul_distance = compare(a.graph(), mul_adj, tol).distance;
  const LinearRelation a_star = adjoint_hilbert(a, tol);
  c.a_symmetric = compare(a_star.graph(), a.graph(), tol).contains;
  c.domain_is_adjoint = compare(a_star.graph(), pair.a_lower().graph(), tol).equals;
  c.a_in_kernel = compare(pair.kernel_relation().graph(), a.graph(), tol).contains;
  c.note = "finite dimensions: Γ is closed, so essentially unitary coincides with unitary";
  if (!c.domain_is_adjoint) c.note += "; dom Γ is a proper part of A*";
  return c;
}

}  // namespace krel
