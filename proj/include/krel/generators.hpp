#pragma once

// Seeded generators of isometric and unitary boundary pairs for property tests.

#include "krel/krein.hpp"
#include "krel/random.hpp"

#include <algorithm>
#include <cstdint>

namespace krel {

namespace detail {

/// Columns (e_s, ±i e_s)/√2 of C^{2n}: orthonormal eigenvectors of J for ±1,
/// so each has J-metric ±1.
inline ComplexMatrix j_eigenvectors(Index n, bool positive) {
  ComplexMatrix p(2 * n, n);
  p.topRows(n) = ComplexMatrix::Identity(n, n) / std::numbers::sqrt2;
  p.bottomRows(n) = (positive ? kI : -kI) * ComplexMatrix::Identity(n, n) / std::numbers::sqrt2;
  return p;
}

/// Random V with V^H J V = J (Cayley transform of a J-skew matrix).
inline ComplexMatrix random_j_unitary(Index base_dim, CounterRng& rng, double scale = 0.3) {
  const Index m = 2 * base_dim;
  if (m == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix g = rng.complex_matrix(m, m);
  const ComplexMatrix h = scale * (g + g.adjoint()) / 2.0;
  const ComplexMatrix x = kI * j_matrix(base_dim) * h;
  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  return (id - x).partialPivLu().solve(id + x);
}

struct Realized {
  ComplexMatrix inputs;
  ComplexMatrix outputs;
  Index positive = 0;
  Index negative = 0;
};

/// Outputs in C^{2d} with the same J-Gram as the inputs; nullopt-like
/// failure is signalled by positive/negative counts above d.
inline Realized realize_signature(const ComplexMatrix& inputs, Index d) {
  Realized r;
  const Index k = inputs.cols();
  if (k == 0) {
    r.inputs = inputs;
    r.outputs = ComplexMatrix(2 * d, 0);
    return r;
  }
  ComplexMatrix gram = j_gram(inputs);
  gram = (gram + gram.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
  const RealVector& mu = es.eigenvalues();
  const double cut = 1e-10 * std::max(1.0, mu.cwiseAbs().maxCoeff());
  for (Index i = 0; i < k; ++i) {
    if (mu(i) > cut) ++r.positive;
    if (mu(i) < -cut) ++r.negative;
  }
  if (r.positive > d || r.negative > d) return r;
  r.inputs = inputs * es.eigenvectors();
  r.outputs = ComplexMatrix::Zero(2 * d, k);
  const ComplexMatrix pos = j_eigenvectors(d, true);
  const ComplexMatrix neg = j_eigenvectors(d, false);
  Index next_pos = 0, next_neg = 0;
  Index next_free = std::max(r.positive, r.negative);
  for (Index i = 0; i < k; ++i) {
    if (mu(i) > cut) {
      r.outputs.col(i) = std::sqrt(mu(i)) * pos.col(next_pos++);
    } else if (mu(i) < -cut) {
      r.outputs.col(i) = std::sqrt(-mu(i)) * neg.col(next_neg++);
    } else if (next_free < d) {
      // (e_s, 0): neutral and J-orthogonal to every other index
      r.outputs.col(i) = (pos.col(next_free) + neg.col(next_free)) / std::numbers::sqrt2;
      ++next_free;
    }
  }
  return r;
}

}  // namespace detail

/// Random isometric Γ with dim Γ = graph_dim, built by matching the J-signature
/// of a random subspace of the doubled base space in the doubled boundary space.
inline BoundaryPair random_isometric(const KreinSpec& spec, Index graph_dim, std::uint64_t seed,
                                     int retry_budget = 64) {
  const Index n = spec.base_dim_in;
  const Index d = spec.base_dim_out;
  if (graph_dim < 0 || graph_dim > 2 * n)
    throw DomainError("random_isometric: graph_dim must lie in [0, 2 * base_dim_in]");
  if (graph_dim == 0) return {spec, LinearRelation(2 * n, 2 * d)};
  CounterRng rng(seed, 0x150);
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    const Subspace l = orthonormalize(rng.complex_matrix(2 * n, graph_dim));
    if (l.dim() != graph_dim) continue;
    detail::Realized r = detail::realize_signature(l.basis(), d);
    if (r.positive > d || r.negative > d) continue;
    const ComplexMatrix v = detail::random_j_unitary(d, rng);
    return {spec, make_relation(2 * n, 2 * d, r.inputs, v * r.outputs)};
  }
  throw Error("random_isometric: no realizable J-signature within the retry budget");
}

struct PairOptions {
  bool unitary = true;
  /// dim mul Γ; negative picks a feasible value at random.
  int mul_dim = -1;
  /// dim A of the symmetric part; negative picks a feasible value at random.
  int symmetric_dim = -1;
};

/// Random isometric pair satisfying the standing hypotheses used by the Weyl
/// family routines: A = (dom Γ)* is symmetric, dom Γ = A*, and A ⊆ ker Γ.
///
/// A is a random neutral subspace of the doubled base space; its J-orthogonal
/// companion is mapped onto J-positive/negative boundary vectors, and unused
/// boundary indices supply neutral vectors for mul Γ.
inline BoundaryPair random_boundary_pair(const KreinSpec& spec, std::uint64_t seed,
                                         const PairOptions& options = {}) {
  const Index n = spec.base_dim_in;
  const Index d = spec.base_dim_out;
  CounterRng rng(seed, 0xb0);
  // mul Γ = free boundary indices exactly when Γ is unitary, so a strictly
  // isometric pair needs one spare index
  const Index a_lo = std::max<Index>(0, n - d + std::max(options.mul_dim, 0) + (options.unitary ? 0 : 1));
  Index a = options.symmetric_dim;
  if (a < 0) {
    if (a_lo > n) throw DomainError("random_boundary_pair: requested mul_dim is not realizable");
    a = rng.uniform_int(a_lo, n);
  }
  if (a < std::max<Index>(0, n - d) || a > n)
    throw DomainError("random_boundary_pair: symmetric_dim is not realizable");
  const Index free = d - (n - a);
  Index mul = options.mul_dim;
  if (options.unitary) {
    if (mul >= 0 && mul != free)
      throw DomainError("random_boundary_pair: a unitary pair needs mul_dim = " + std::to_string(free));
    mul = free;
  } else {
    if (free < 1 || mul >= free)
      throw DomainError("random_boundary_pair: a non-unitary isometric pair needs mul_dim < " +
                        std::to_string(free));
    if (mul < 0) mul = rng.uniform_int(0, free - 1);
  }
  if (mul > free) throw DomainError("random_boundary_pair: mul_dim exceeds the free boundary indices");

  const ComplexMatrix pos_in = detail::j_eigenvectors(n, true);
  const ComplexMatrix neg_in = detail::j_eigenvectors(n, false);
  const ComplexMatrix r = rng.unitary(n);
  const ComplexMatrix w = rng.unitary(n);
  const Subspace sym = orthonormalize((pos_in * r.leftCols(a) + neg_in * w * r.leftCols(a)) /
                                      std::numbers::sqrt2);
  // dom Γ = J-orthogonal companion of A
  const Subspace domain = complement(Subspace::from_orthonormal(j_matrix(n) * sym.basis()));
  const ComplexMatrix coords = domain.basis().adjoint() * sym.basis();
  const ComplexMatrix q = domain.basis() * detail::orthonormal_complement(coords);

  detail::Realized core = detail::realize_signature(q, d);
  if (core.positive > d || core.negative > d)
    throw Error("random_boundary_pair: nondegenerate part does not fit the boundary space");

  const ComplexMatrix pos_out = detail::j_eigenvectors(d, true);
  const ComplexMatrix neg_out = detail::j_eigenvectors(d, false);
  const Index k = q.cols() + a + mul;
  ComplexMatrix inputs = ComplexMatrix::Zero(2 * n, k);
  ComplexMatrix outputs = ComplexMatrix::Zero(2 * d, k);
  inputs.leftCols(q.cols()) = core.inputs;
  outputs.leftCols(q.cols()) = core.outputs;
  inputs.middleCols(q.cols(), a) = sym.basis();
  for (Index s = 0; s < mul; ++s) {
    const Index idx = n - a + s;
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    outputs.col(q.cols() + a + s) =
        (pos_out.col(idx) + std::polar(1.0, theta) * neg_out.col(idx)) / std::numbers::sqrt2;
  }
  const ComplexMatrix v = detail::random_j_unitary(d, rng);
  return {spec, make_relation(2 * n, 2 * d, inputs, v * outputs)};
}

}  // namespace krel
