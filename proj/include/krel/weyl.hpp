#pragma once

// Weyl families M(z) = Γ N̂_z(A_*) of boundary pairs, their adjoints, the
// J-orthogonal decomposition of deficiency spaces, and Nevanlinna checks.
//
// The doubled boundary space C^{2d} is read as the graph space of relations
// in C^d: the first d coordinates are the input, the last d the output.

#include "krel/krein.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace krel {

/// Points with |Im z| below this are rejected.
inline constexpr double kRealAxisGuard = 1e-6;

inline void require_off_axis(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
      std::abs(z.imag()) < kRealAxisGuard)
    throw DomainError("z is too close to the real axis (|Im z| < 1e-6)");
}

namespace detail {

/// Constraint matrix whose kernel is `v` (rows span the complement).
inline ComplexMatrix annihilator(const Subspace& v) {
  return detail::orthonormal_complement(v.basis()).adjoint();
}

/// hat × C^out as a subspace of the graph space.
inline Subspace with_full_output(const Subspace& input_space, Index out_dim) {
  const Index n = input_space.ambient_dim();
  ComplexMatrix b = ComplexMatrix::Zero(n + out_dim, input_space.dim() + out_dim);
  b.topLeftCorner(n, input_space.dim()) = input_space.basis();
  b.bottomRightCorner(out_dim, out_dim) = ComplexMatrix::Identity(out_dim, out_dim);
  return Subspace::from_orthonormal(std::move(b));
}

}  // namespace detail

/// N̂_z(A_*) as a subspace of C^{2n}.
inline Subspace deficiency_hat(const BoundaryPair& pair, Complex z, const Tolerance& tol = {}) {
  return eigenspace_hat(pair.a_lower(), z, tol).hat_space;
}

/// Γ_z = Γ ∩ (N̂_z(A_*) × C^{2d}).
inline LinearRelation gamma_restrict(const BoundaryPair& pair, Complex z,
                                     const Tolerance& tol = {}) {
  require_off_axis(z);
  const Subspace hat = deficiency_hat(pair, z, tol);
  const LinearRelation& g = pair.gamma();
  return {g.in_dim(), g.out_dim(),
          combine(g.graph(), detail::with_full_output(hat, g.out_dim()), Combine::Intersect, tol)};
}

/// M(z) = ran Γ_z as a relation in C^d.
inline LinearRelation weyl_family(const BoundaryPair& pair, Complex z, const Tolerance& tol = {}) {
  return as_relation(part(gamma_restrict(pair, z, tol), Part::Range, tol));
}

struct AdjointAgreement {
  double direct_vs_kernel = 0.0;
  double direct_vs_formula = 0.0;
  double kernel_vs_formula = 0.0;

  double max() const { return std::max({direct_vs_kernel, direct_vs_formula, kernel_vs_formula}); }
};

struct WeylReport {
  Complex z;
  LinearRelation m;
  LinearRelation m_adj_direct;   // Hilbert adjoint of M(z)
  LinearRelation m_adj_kernel;   // ker of the Krein adjoint of Γ_z
  LinearRelation m_adj_theorem;  // (Γ^[*])^{-1} N̂_{z̄}(A*)
  AdjointAgreement agreement;
  bool dims_agree = false;
};

inline WeylReport weyl_adjoint_three_ways(const BoundaryPair& pair, Complex z,
                                          const Tolerance& tol = {}) {
  require_off_axis(z);
  const KreinSpec& spec = pair.spec();
  const LinearRelation gz = gamma_restrict(pair, z, tol);
  LinearRelation m = as_relation(part(gz, Part::Range, tol));
  LinearRelation direct = adjoint_hilbert(m, tol);

  // ker Γ_z^[*] = {k̂ : (k̂, 0) ∈ Γ_z^[*]}
  LinearRelation kernel_route = as_relation(part(krein_adjoint(spec, gz, tol), Part::Kernel, tol));

  // {k̂ : (k̂, ĝ) ∈ Γ^[*] for some ĝ ∈ N̂_{z̄}(A*)}
  const LinearRelation adj = krein_adjoint(pair, tol);
  const Subspace hat_bar = eigenspace_hat(pair.a_adjoint(tol), std::conj(z), tol).hat_space;
  const ComplexMatrix constraint = detail::annihilator(hat_bar) * adj.outputs();
  const ComplexMatrix coeffs = kernel_basis(constraint, tol, 1.0);
  LinearRelation theorem_route = as_relation(orthonormalize(adj.inputs() * coeffs, tol, 1.0));

  AdjointAgreement agree{
      compare(direct.graph(), kernel_route.graph(), tol).distance,
      compare(direct.graph(), theorem_route.graph(), tol).distance,
      compare(kernel_route.graph(), theorem_route.graph(), tol).distance,
  };
  const bool dims = direct.dim() == kernel_route.dim() && direct.dim() == theorem_route.dim();
  return {z, std::move(m), std::move(direct), std::move(kernel_route), std::move(theorem_route),
          agree, dims};
}

struct DefectDecomposition {
  Complex z;
  Subspace lhs;      // N̂_z(A_*)^[⊥]
  Subspace rhs;      // N̂_{z̄}(A*) ⊞ O_z
  Subspace o_space;  // z̄ I on N_{z̄}(A*)^⊥ ⊞ ({0} × N_z(A_*)^⊥)
  Comparison agreement;
  double o_outside_mul_adjoint = 0.0;  // residual of O_z ⊆ mul Γ_z^[*]
  bool o_in_mul_adjoint = false;
};

inline DefectDecomposition defect_decomposition(const BoundaryPair& pair, Complex z,
                                                const Tolerance& tol = {}) {
  require_off_axis(z);
  const Index n = pair.spec().base_dim_in;
  const Complex zb = std::conj(z);
  const EigenPair hat = eigenspace_hat(pair.a_lower(), z, tol);
  const EigenPair hat_bar = eigenspace_hat(pair.a_adjoint(tol), zb, tol);

  // J-orthogonal complement: ĝ with <f̂, J ĝ> = 0, i.e. ĝ ⊥ J N̂
  const Subspace lhs =
      complement(Subspace::from_orthonormal(j_matrix(n) * hat.hat_space.basis()));

  const ComplexMatrix range_part = complement(hat_bar.eigenvectors(n, tol)).basis();
  ComplexMatrix restricted(2 * n, range_part.cols());
  restricted << range_part, zb * range_part;
  const ComplexMatrix n_perp = complement(hat.eigenvectors(n, tol)).basis();
  ComplexMatrix vertical = ComplexMatrix::Zero(2 * n, n_perp.cols());
  vertical.bottomRows(n) = n_perp;
  ComplexMatrix o_span(2 * n, restricted.cols() + vertical.cols());
  o_span << restricted, vertical;
  const Subspace o_space = orthonormalize(o_span, tol);
  const Subspace rhs = combine(hat_bar.hat_space, o_space, Combine::Sum, tol);

  const LinearRelation gz = gamma_restrict(pair, z, tol);
  const Subspace mul_adj = part(krein_adjoint(pair.spec(), gz, tol), Part::Multivalued, tol);
  DefectDecomposition out{z, lhs, rhs, o_space, compare(lhs, rhs, tol), 0.0, false};
  out.o_outside_mul_adjoint = containment_residual(mul_adj, o_space);
  out.o_in_mul_adjoint = compare(mul_adj, o_space, tol).contains;
  return out;
}

/// Distance between M(z) ∩ M(z)* and mul Γ, both as subspaces of C^{2d}.
inline double mul_invariant(const BoundaryPair& pair, Complex z, const Tolerance& tol = {}) {
  const LinearRelation m = weyl_family(pair, z, tol);
  const LinearRelation m_adj = adjoint_hilbert(m, tol);
  const Subspace both = combine(m.graph(), m_adj.graph(), Combine::Intersect, tol);
  const Subspace mul = part(pair.gamma(), Part::Multivalued, tol);
  return compare(both, mul, tol).distance;
}

inline double mul_invariant(const BoundaryPair& pair, const std::vector<Complex>& grid,
                            const Tolerance& tol = {}) {
  double worst = 0.0;
  for (Complex z : grid) worst = std::max(worst, mul_invariant(pair, z, tol));
  return worst;
}

/// max over the graph basis of Γ_z of |Im<h, h'> - Im z ‖f_z‖²|.
inline double dissipativity_identity_residual(const BoundaryPair& pair, Complex z,
                                              const Tolerance& tol = {}) {
  const LinearRelation gz = gamma_restrict(pair, z, tol);
  const Index n = pair.spec().base_dim_in;
  const Index d = pair.spec().base_dim_out;
  double worst = 0.0;
  for (Index i = 0; i < gz.dim(); ++i) {
    const ComplexVector f = gz.inputs().col(i).head(n);
    const ComplexVector h = gz.outputs().col(i).head(d);
    const ComplexVector hp = gz.outputs().col(i).tail(d);
    worst = std::max(worst, std::abs(h.dot(hp).imag() - z.imag() * f.squaredNorm()));
  }
  return worst;
}

/// ‖∂F/∂z̄‖_F by central differences with step h; zero for analytic F up to O(h²).
inline double cauchy_riemann_residual(const std::function<ComplexMatrix(Complex)>& f, Complex z,
                                      double h) {
  const ComplexMatrix dx = (f(z + h) - f(z - h)) / (2.0 * h);
  const ComplexMatrix dy = (f(z + kI * h) - f(z - kI * h)) / (2.0 * h);
  return (0.5 * (dx + kI * dy)).norm();
}

/// (M + w)^{-1} as a matrix, when it is a single-valued operator on all of C^d.
inline std::optional<ComplexMatrix> resolvent_matrix(const LinearRelation& m, Complex w,
                                                     const Tolerance& tol = {}) {
  return as_operator(inverse(shift(m, -w, tol)), tol);
}

struct NevanlinnaPoint {
  Complex z;
  Index dim_m = 0;
  bool dissipative = false;  // accumulative when Im z < 0
  bool maximal = false;
  bool maximal_by_range = false;
  double symmetry_residual = 0.0;
  double mul_residual = 0.0;
  std::optional<double> cr_residual;  // absent where M(z) is multivalued
};

struct NevanlinnaReport {
  std::vector<NevanlinnaPoint> points;

  bool all_pass(double sym_tol = 1e-8) const {
    for (const auto& p : points)
      if (!p.dissipative || !p.maximal || p.maximal != p.maximal_by_range ||
          p.symmetry_residual >= sym_tol)
        return false;
    return true;
  }
};

inline void require_conjugation_closed(const std::vector<Complex>& grid) {
  for (Complex z : grid) {
    const bool found = std::any_of(grid.begin(), grid.end(), [&](Complex w) {
      return std::abs(w - std::conj(z)) <= 1e-12 * (1.0 + std::abs(z));
    });
    if (!found) throw DomainError("grid is not closed under conjugation");
  }
}

inline NevanlinnaPoint nevanlinna_point(const BoundaryPair& pair, Complex z, double fd_step,
                                        const Tolerance& tol = {}) {
  require_off_axis(z);
  NevanlinnaPoint p;
  p.z = z;
  const LinearRelation m = weyl_family(pair, z, tol);
  p.dim_m = m.dim();
  const DissipativeReport dr = dissipative_class(m, z.imag() > 0 ? Sign::Upper : Sign::Lower, tol);
  p.dissipative = dr.dissipative;
  p.maximal = dr.maximal;
  p.maximal_by_range = dr.maximal_by_range;
  const LinearRelation m_bar = weyl_family(pair, std::conj(z), tol);
  p.symmetry_residual = compare(adjoint_hilbert(m, tol).graph(), m_bar.graph(), tol).distance;
  p.mul_residual = mul_invariant(pair, z, tol);
  const Complex w = z.imag() > 0 ? kI : -kI;
  if (part(m, Part::Multivalued, tol).is_zero() && resolvent_matrix(m, w, tol)) {
    bool ok = true;
    auto f = [&](Complex zz) -> ComplexMatrix {
      auto r = resolvent_matrix(weyl_family(pair, zz, tol), w, tol);
      if (!r) {
        ok = false;
        return ComplexMatrix::Zero(m.in_dim(), m.in_dim());
      }
      return *r;
    };
    const double cr = cauchy_riemann_residual(f, z, fd_step);
    if (ok) p.cr_residual = cr;
  }
  return p;
}

inline NevanlinnaReport nevanlinna_verify(const BoundaryPair& pair, const std::vector<Complex>& grid,
                                          double fd_step, const Tolerance& tol = {}) {
  require_conjugation_closed(grid);
  NevanlinnaReport report;
  for (Complex z : grid) report.points.push_back(nevanlinna_point(pair, z, fd_step, tol));
  return report;
}

struct SimplicityProbe {
  Subspace m_common;
  /// True when the grid already forces the common complement to {0}; a
  /// nonzero m_common on a finite grid leaves simplicity undecided.
  bool simple = false;
};

/// Intersection over the grid of N_z(A_*)^⊥.
inline SimplicityProbe simplicity_probe(const BoundaryPair& pair, const std::vector<Complex>& grid,
                                        const Tolerance& tol = {}) {
  if (grid.empty()) throw DomainError("simplicity_probe: grid is empty");
  const Index n = pair.spec().base_dim_in;
  Subspace common = Subspace::full(n);
  for (Complex z : grid) {
    require_off_axis(z);
    const Subspace nz = eigenspace_hat(pair.a_lower(), z, tol).eigenvectors(n, tol);
    common = combine(common, complement(nz), Combine::Intersect, tol);
  }
  return {common, common.is_zero()};
}

}  // namespace krel
