#pragma once

// Tolerance-aware dense subspace arithmetic. Every subspace is carried by an
// orthonormal basis; all operations are pure and return fresh values.

#include "krel/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <vector>

namespace krel {

class Subspace {
 public:
  explicit Subspace(Index ambient_dim = 0) : basis_(ambient_dim, 0) {}

  /// Wraps a basis whose columns are already orthonormal.
  static Subspace from_orthonormal(ComplexMatrix basis) {
    Subspace s;
    s.basis_ = std::move(basis);
    return s;
  }

  static Subspace full(Index ambient_dim) {
    return from_orthonormal(ComplexMatrix::Identity(ambient_dim, ambient_dim));
  }

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }
  const ComplexMatrix& basis() const { return basis_; }

  ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

  /// Component of `v` orthogonal to this subspace.
  ComplexVector residual(const ComplexVector& v) const {
    return v - basis_ * (basis_.adjoint() * v);
  }

 private:
  ComplexMatrix basis_;
};

namespace detail {

struct Svd {
  ComplexMatrix u;  // thin
  RealVector s;
  ComplexMatrix v;  // thin
  Index rank = 0;
};

/// `scale` floors the reference magnitude for the rank cut, for blocks whose
/// natural size is known (sub-blocks of an orthonormal basis have scale 1).
inline Svd svd(const ComplexMatrix& m, const Tolerance& tol, bool want_u, bool want_v, double scale = 0.0) {
  Svd out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.u = ComplexMatrix(m.rows(), 0);
    out.v = ComplexMatrix(m.cols(), 0);
    out.s = RealVector(0);
    return out;
  }
  unsigned int opts = 0;
  if (want_u) opts |= Eigen::ComputeThinU;
  if (want_v) opts |= Eigen::ComputeThinV;
  Eigen::BDCSVD<ComplexMatrix> dec(m, opts);
  out.s = dec.singularValues();
  if (want_u) out.u = dec.matrixU();
  if (want_v) out.v = dec.matrixV();
  const double smax = std::max(out.s.size() > 0 ? out.s(0) : 0.0, scale);
  if (smax > 0.0) {
    const double thr = tol.rank_threshold(smax, m.rows(), m.cols());
    while (out.rank < out.s.size() && out.s(out.rank) > thr) ++out.rank;
  }
  return out;
}

/// Orthonormal completion: columns spanning the orthogonal complement of the
/// span of the orthonormal columns `q` inside C^n.
inline ComplexMatrix orthonormal_complement(const ComplexMatrix& q) {
  const Index n = q.rows();
  const Index k = q.cols();
  if (k == 0) return ComplexMatrix::Identity(n, n);
  if (k >= n) return ComplexMatrix(n, 0);
  Eigen::HouseholderQR<ComplexMatrix> qr(q);
  ComplexMatrix full = qr.householderQ();
  return full.rightCols(n - k);
}

}  // namespace detail

/// Span of the columns of `vectors`, with dimension equal to their numerical rank.
inline Subspace orthonormalize(const ComplexMatrix& vectors, const Tolerance& tol = {}, double scale = 0.0) {
  require_finite(vectors, "orthonormalize");
  if (vectors.cols() == 0) return Subspace(vectors.rows());
  auto dec = detail::svd(vectors, tol, true, false, scale);
  return Subspace::from_orthonormal(dec.u.leftCols(dec.rank));
}

inline Subspace orthonormalize(Index ambient_dim, const std::vector<ComplexVector>& vectors,
                               const Tolerance& tol = {}) {
  ComplexMatrix stacked(ambient_dim, static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim)
      throw DimensionError("orthonormalize: vectors must share the ambient dimension");
    stacked.col(static_cast<Index>(i)) = vectors[i];
  }
  return orthonormalize(stacked, tol);
}

/// Orthonormal basis matrix of {x : m x = 0}.
inline ComplexMatrix kernel_basis(const ComplexMatrix& m, const Tolerance& tol = {}, double scale = 0.0) {
  const Index cols = m.cols();
  if (cols == 0) return ComplexMatrix(0, 0);
  if (m.rows() == 0) return ComplexMatrix::Identity(cols, cols);
  auto dec = detail::svd(m, tol, false, true, scale);
  if (dec.v.cols() == cols) return dec.v.rightCols(cols - dec.rank);
  return detail::orthonormal_complement(dec.v.leftCols(dec.rank));
}

inline Subspace kernel(const ComplexMatrix& m, const Tolerance& tol = {}) {
  require_finite(m, "kernel");
  return Subspace::from_orthonormal(kernel_basis(m, tol));
}

inline Subspace complement(const Subspace& v) {
  return Subspace::from_orthonormal(detail::orthonormal_complement(v.basis()));
}

/// V ∩ ker(constraint), where `constraint` acts on the ambient space of V.
inline Subspace intersect_kernel(const Subspace& v, const ComplexMatrix& constraint,
                                 const Tolerance& tol = {}) {
  if (constraint.cols() != v.ambient_dim())
    throw DimensionError("intersect_kernel: constraint width must equal the ambient dimension");
  if (v.is_zero()) return v;
  // a product that is pure roundoff must not count as rank
  return Subspace::from_orthonormal(v.basis() * kernel_basis(constraint * v.basis(), tol, constraint.norm()));
}

enum class Combine { Sum, Intersect };

inline Subspace combine(const Subspace& v, const Subspace& w, Combine mode,
                        const Tolerance& tol = {}) {
  if (v.ambient_dim() != w.ambient_dim())
    throw DimensionError("combine: ambient dimensions differ");
  const Index n = v.ambient_dim();
  if (mode == Combine::Sum) {
    ComplexMatrix stacked(n, v.dim() + w.dim());
    stacked << v.basis(), w.basis();
    return orthonormalize(stacked, tol);
  }
  if (v.is_zero() || w.is_zero()) return Subspace(n);
  ComplexMatrix system(n, v.dim() + w.dim());
  system << v.basis(), -w.basis();
  ComplexMatrix coeffs = kernel_basis(system, tol);
  if (coeffs.cols() == 0) return Subspace(n);
  return orthonormalize(v.basis() * coeffs.topRows(v.dim()), tol);
}

namespace detail {

inline ComplexMatrix outside(const Subspace& v, const Subspace& w) {
  return w.basis() - v.basis() * (v.basis().adjoint() * w.basis());
}

inline double spectral_norm(const ComplexMatrix& r) {
  if (r.size() == 0) return 0.0;
  if (r.cols() == 1) return r.norm();
  return Eigen::BDCSVD<ComplexMatrix>(r).singularValues()(0);
}

}  // namespace detail

/// Spectral norm of (I - P_V) B_W: how far W sticks out of V.
inline double containment_residual(const Subspace& v, const Subspace& w) {
  if (v.ambient_dim() != w.ambient_dim())
    throw DimensionError("containment_residual: ambient dimensions differ");
  return detail::spectral_norm(detail::outside(v, w));
}

struct Comparison {
  double distance = 0.0;   // spectral norm of P_V - P_W
  double frobenius = 0.0;  // Frobenius norm of P_V - P_W
  bool contains = false;   // W ⊆ V
  bool equals = false;
};

inline Comparison compare(const Subspace& v, const Subspace& w, const Tolerance& tol = {}) {
  if (v.ambient_dim() != w.ambient_dim())
    throw DimensionError("compare: ambient dimensions differ");
  Comparison c;
  // ||P - Q|| = max(||(I-P)Q||, ||(I-Q)P||) for orthogonal projectors, and
  // ||P - Q||_F^2 = ||(I-P)Q||_F^2 + ||(I-Q)P||_F^2.
  const ComplexMatrix w_out = detail::outside(v, w);
  const ComplexMatrix v_out = detail::outside(w, v);
  c.distance = std::max(detail::spectral_norm(w_out), detail::spectral_norm(v_out));
  c.frobenius = std::sqrt(w_out.squaredNorm() + v_out.squaredNorm());
  ComplexMatrix stacked(v.ambient_dim(), v.dim() + w.dim());
  stacked << v.basis(), w.basis();
  c.contains = w.is_zero() || detail::svd(stacked, tol, false, false).rank == v.dim();
  c.equals = c.frobenius <= tol.equality_bound(v.ambient_dim());
  return c;
}

}  // namespace krel
