#pragma once

// Truncated diagonal model of a rank-md singular perturbation.
//
// L = diag(λ_1..λ_N), functionals φ_σ (σ = 0..d-1) given by their components,
// interpolation points z_1..z_m, and a Hermitian offset E. Deficiency
// elements g_σ(z) = (L - z)^{-1} φ_σ are indexed by α = j·d + σ.

#include "krel/krein.hpp"
#include "krel/random.hpp"
#include "krel/weyl.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace krel {

struct ModelSpec {
  /// Explicit eigenvalues; empty selects `eigenvalue_rule`.
  std::vector<double> eigenvalues;
  std::string eigenvalue_rule = "linear";  // λ_n = n
  /// Explicit d × (at least N) components; empty selects `phi_rule`.
  ComplexMatrix phi;
  /// "constant": φ_{σ,n} = 1, "inverse": φ_{σ,n} = 1/n. For d > 1 the
  /// component is kept only when n ≡ σ + 1 (mod d).
  std::string phi_rule = "constant";
  Index d = 1;
  std::vector<Complex> points{Complex(0, 1), Complex(0, 2)};
  ComplexMatrix offset;  // d × d; empty means 0
  Complex probe{1.0, 2.0};
  /// Number of decaying regular vectors per σ in the dom K surrogate.
  Index regular_per_sigma = 2;
};

struct SpectralModel {
  Index n = 0;
  RealVector lambda;
  ComplexMatrix phi;  // d × N; row σ holds the components of φ_σ
  Index d = 1;
  std::vector<Complex> points;
  ComplexMatrix offset;
  Complex probe;
  Index regular_per_sigma = 2;

  Index m() const { return static_cast<Index>(points.size()); }
};

namespace detail {

inline void require_off_spectrum(const RealVector& lambda, Complex z) {
  for (Index k = 0; k < lambda.size(); ++k)
    if (std::abs(lambda(k) - z) <= 1e-12 * (1.0 + std::abs(z)))
      throw DomainError("z = " + std::to_string(z.real()) + (z.imag() < 0 ? "-" : "+") +
                        std::to_string(std::abs(z.imag())) +
                        "i coincides with the truncated eigenvalue λ_" + std::to_string(k + 1));
}

inline std::string point_label(const std::vector<Complex>& pts, std::size_t j) {
  return "z_" + std::to_string(j + 1) + " = " + std::to_string(pts[j].real()) +
         (pts[j].imag() < 0 ? "-" : "+") + std::to_string(std::abs(pts[j].imag())) + "i";
}

}  // namespace detail

inline SpectralModel realize(const ModelSpec& spec, Index n) {
  if (n < 1) throw DomainError("model: truncation level must be >= 1");
  if (spec.d < 1) throw DomainError("model: d must be >= 1");
  if (spec.points.empty()) throw DomainError("model: at least one interpolation point is required");
  SpectralModel model;
  model.n = n;
  model.d = spec.d;
  model.points = spec.points;
  model.probe = spec.probe;
  model.regular_per_sigma = spec.regular_per_sigma;

  model.lambda.resize(n);
  if (!spec.eigenvalues.empty()) {
    if (static_cast<Index>(spec.eigenvalues.size()) < n)
      throw DomainError("model: fewer explicit eigenvalues than the truncation level");
    for (Index k = 0; k < n; ++k) model.lambda(k) = spec.eigenvalues[static_cast<std::size_t>(k)];
  } else if (spec.eigenvalue_rule == "linear") {
    for (Index k = 0; k < n; ++k) model.lambda(k) = static_cast<double>(k + 1);
  } else {
    throw DomainError("model: unknown eigenvalue rule '" + spec.eigenvalue_rule + "'");
  }
  for (Index k = 1; k < n; ++k)
    if (!(model.lambda(k) > model.lambda(k - 1)))
      throw DomainError("model: eigenvalues must be strictly increasing");

  if (spec.phi.size() > 0) {
    if (spec.phi.rows() != spec.d || spec.phi.cols() < n)
      throw DomainError("model: explicit phi must be d × (at least N)");
    model.phi = spec.phi.leftCols(n);
  } else {
    model.phi = ComplexMatrix::Zero(spec.d, n);
    for (Index s = 0; s < spec.d; ++s)
      for (Index k = 0; k < n; ++k) {
        if (spec.d > 1 && k % spec.d != s) continue;
        if (spec.phi_rule == "constant")
          model.phi(s, k) = 1.0;
        else if (spec.phi_rule == "inverse")
          model.phi(s, k) = 1.0 / static_cast<double>(k + 1);
        else
          throw DomainError("model: unknown phi rule '" + spec.phi_rule + "'");
      }
  }
  require_finite(model.phi, "model phi");

  if (spec.offset.size() > 0) {
    if (spec.offset.rows() != spec.d || spec.offset.cols() != spec.d)
      throw DimensionError("model: offset E must be d × d");
    if ((spec.offset - spec.offset.adjoint()).norm() > 1e-12 * (1.0 + spec.offset.norm()))
      throw DomainError("model: offset E must be Hermitian");
    model.offset = spec.offset;
  } else {
    model.offset = ComplexMatrix::Zero(spec.d, spec.d);
  }

  for (std::size_t j = 0; j < model.points.size(); ++j) {
    if (std::abs(model.points[j].imag()) < kRealAxisGuard)
      throw DomainError("model: " + detail::point_label(model.points, j) + " is not off the real axis");
    for (std::size_t k = 0; k < j; ++k)
      if (std::abs(model.points[j] - model.points[k]) <= 1e-12)
        throw DomainError("model: interpolation points must be pairwise distinct");
  }
  return model;
}

/// λ_n = n, φ = 1, d = 1, points {i, 2i}, E = 0, probe 1 + 2i.
inline SpectralModel desk_model(Index n) { return realize(ModelSpec{}, n); }

/// Partial sums Σ|φ_{σ,n}|²/(1+λ_n²) and Σ|φ_{σ,n}|²/(1+|λ_n|), maximized over σ.
struct ProfileSums {
  double h_minus2 = 0.0;
  double h_minus1 = 0.0;
};

inline ProfileSums profile_sums(const SpectralModel& model) {
  ProfileSums p;
  for (Index s = 0; s < model.d; ++s) {
    double a = 0.0, b = 0.0;
    for (Index k = 0; k < model.n; ++k) {
      const double w = std::norm(model.phi(s, k));
      a += w / (1.0 + model.lambda(k) * model.lambda(k));
      b += w / (1.0 + std::abs(model.lambda(k)));
    }
    p.h_minus2 = std::max(p.h_minus2, a);
    p.h_minus1 = std::max(p.h_minus1, b);
  }
  return p;
}

/// Columns g_σ(z), σ = 0..d-1, as an N × d matrix.
inline ComplexMatrix deficiency(const SpectralModel& model, Complex z) {
  detail::require_off_spectrum(model.lambda, z);
  ComplexMatrix g(model.n, model.d);
  for (Index s = 0; s < model.d; ++s)
    for (Index k = 0; k < model.n; ++k) g(k, s) = model.phi(s, k) / (model.lambda(k) - z);
  return g;
}

/// g_z(c) = Σ_σ c_σ g_σ(z).
inline ComplexVector deficiency(const SpectralModel& model, Complex z, const ComplexVector& c) {
  if (c.size() != model.d) throw DimensionError("deficiency: c must have d entries");
  return deficiency(model, z) * c;
}

/// N × md matrix with columns g_α = g_σ(z_j), α = j·d + σ.
inline ComplexMatrix deficiency_family(const SpectralModel& model) {
  ComplexMatrix g(model.n, model.m() * model.d);
  for (Index j = 0; j < model.m(); ++j)
    g.middleCols(j * model.d, model.d) = deficiency(model, model.points[static_cast<std::size_t>(j)]);
  return g;
}

inline constexpr double kGramConditionCap = 1e12;

inline ComplexMatrix gram(const SpectralModel& model) {
  const ComplexMatrix g = deficiency_family(model);
  ComplexMatrix gm = g.adjoint() * g;
  gm = (gm + gm.adjoint()) / 2.0;
  const RealVector ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(gm, Eigen::EigenvaluesOnly).eigenvalues();
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  if (!(lo > 0.0) || hi / lo > kGramConditionCap) {
    // name the pair of points whose deficiency spans are closest
    std::size_t bj = 0, bk = 0;
    double worst = -1.0;
    const auto m = static_cast<std::size_t>(model.m());
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const Subspace a = orthonormalize(g.middleCols(static_cast<Index>(j) * model.d, model.d));
        const Subspace b = orthonormalize(g.middleCols(static_cast<Index>(k) * model.d, model.d));
        const double cosine =
            a.dim() && b.dim() ? detail::spectral_norm(a.basis().adjoint() * b.basis()) : 1.0;
        if (cosine > worst) worst = cosine, bj = j, bk = k;
      }
    std::string where = m > 1 ? detail::point_label(model.points, bj) + " and " +
                                    detail::point_label(model.points, bk)
                              : detail::point_label(model.points, 0);
    throw Error("gram: Gram matrix is numerically singular (condition " + std::to_string(hi / lo) +
                "); offending points " + where);
  }
  return gm;
}

/// b_j = Π_{j' ≠ j} (z_j - z_j'); all ones when m = 1.
inline std::vector<Complex> multipliers(const SpectralModel& model) {
  std::vector<Complex> b(model.points.size(), Complex(1.0));
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (k != j) b[j] *= model.points[j] - model.points[k];
  return b;
}

/// R(z) = E + Σ_n conj(φ_{σ,n}) φ_{σ',n} (1 + λ_n z)/((λ_n - z)(1 + λ_n²)).
inline ComplexMatrix r_function(const SpectralModel& model, Complex z) {
  detail::require_off_spectrum(model.lambda, z);
  ComplexVector weights(model.n);
  for (Index k = 0; k < model.n; ++k) {
    const double l = model.lambda(k);
    weights(k) = (1.0 + l * z) / ((l - z) * (1.0 + l * l));
  }
  return model.offset + model.phi.conjugate() * weights.asDiagonal() * model.phi.transpose();
}

/// ‖Im R(z) - (Im z)·Gram(g(z))‖ with Im R = (R - R^H)/(2i).
inline double im_r_residual(const SpectralModel& model, Complex z) {
  const ComplexMatrix r = r_function(model, z);
  const ComplexMatrix g = deficiency(model, z);
  const ComplexMatrix im_r = (r - r.adjoint()) / (2.0 * kI);
  return (im_r - z.imag() * (g.adjoint() * g)).norm();
}

inline double im_r_min_eigenvalue(const SpectralModel& model, Complex z) {
  const ComplexMatrix r = r_function(model, z);
  const ComplexMatrix im_r = (r - r.adjoint()) / (2.0 * kI);
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(im_r, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

struct ModelAssembly {
  SpectralModel model;
  Complex probe;
  ComplexMatrix g;                // N × md, columns g_α
  ComplexMatrix gram;             // md × md
  std::vector<Complex> b;         // multipliers b_j
  ComplexMatrix c_matrix;         // C = z_j G^{-1} by rows
  ComplexMatrix cm;               // d × md, cM_{σ, σ'j'} = R_{σσ'}(z_j')
  ComplexMatrix regular;          // N × (d·regular_per_sigma), decaying surrogate
  ComplexMatrix m_vectors;        // N × d, Σ_j b_j^{-1}(L - z_j)^{-1} g_σ(probe)
  ComplexMatrix domain;           // N × dim dom K, unit columns [regular | M_z | g_α]
  Index fk_offset = 0;            // first g_α column of `domain`
  ComplexMatrix k_image;          // K applied to `domain`
  ComplexMatrix gamma0;           // d × dim dom K
  ComplexMatrix gamma1;           // d × dim dom K
  BoundaryPair pair;
  LinearRelation k_relation;
  LinearRelation gamma0_relation;  // {(ŵ, Γ0 w)}
  LinearRelation gamma1_relation;  // {(ŵ, Γ1 w)}

  Index domain_dim() const { return domain.cols(); }
};

namespace detail {

/// Apply Π_j (L - z_j)^{-1} (L - probe)^{-1} to the columns of `v`.
inline ComplexMatrix smoothing(const SpectralModel& model, Complex probe, ComplexMatrix v) {
  for (Index k = 0; k < model.n; ++k) {
    Complex f = 1.0 / (model.lambda(k) - probe);
    for (Complex zj : model.points) f /= model.lambda(k) - zj;
    v.row(k) *= f;
  }
  return v;
}

}  // namespace detail

/// Split w = u + k with u in span[regular | M_z] and k = Σ d_α g_α.
struct Decomposition {
  ComplexVector u;
  ComplexVector k;
  ComplexVector u_coeffs;  // on the unit regular/M_z columns
  ComplexVector d;         // d(k), coefficients on g_α
  double residual = 0.0;   // relative least-squares residual
};

/// d(k) = G^{-1}(⟨g_α, k⟩)_α.
inline ComplexVector d_of(const ModelAssembly& a, const ComplexVector& k) {
  return a.gram.ldlt().solve(a.g.adjoint() * k);
}

/// c(k)_σ = Σ_j d(k)_{σj}.
inline ComplexVector c_of(const ModelAssembly& a, const ComplexVector& d) {
  const Index dd = a.model.d;
  ComplexVector c = ComplexVector::Zero(dd);
  for (Index j = 0; j < a.model.m(); ++j) c += d.segment(j * dd, dd);
  return c;
}

/// K(u + k) = L u + Σ C_{αα'}⟨g_α', k⟩ g_α.
inline ComplexVector apply_k(const ModelAssembly& a, const ComplexVector& u, const ComplexVector& k) {
  return a.model.lambda.cwiseProduct(u).cast<Complex>().eval() +
         a.g * (a.c_matrix * (a.g.adjoint() * k));
}

inline Decomposition decompose(const ModelAssembly& a, const ComplexVector& w) {
  if (w.size() != a.model.n) throw DimensionError("decompose: vector is not in C^N");
  Decomposition out;
  const ComplexVector coeffs = a.domain.colPivHouseholderQr().solve(w);
  out.residual = (a.domain * coeffs - w).norm() / std::max(1.0, w.norm());
  out.u_coeffs = coeffs.head(a.fk_offset);
  out.u = a.domain.leftCols(a.fk_offset) * out.u_coeffs;
  out.k = w - out.u;
  out.d = d_of(a, out.k);
  return out;
}

inline constexpr double kDomainResidualCap = 1e-8;

inline ModelAssembly assemble(const SpectralModel& model, Complex probe) {
  require_off_axis(probe);
  for (Complex zj : model.points)
    if (std::abs(zj - probe) <= 1e-12)
      throw DomainError("assemble: the probe point must differ from every z_j");
  detail::require_off_spectrum(model.lambda, probe);

  const Index n = model.n, d = model.d, m = model.m();
  ModelAssembly a{model, probe, {}, {}, {}, {}, {}, {}, {}, {}, 0, {}, {}, {},
                  BoundaryPair({n, d}, LinearRelation(2 * n, 2 * d)),
                  LinearRelation(n, n), LinearRelation(2 * n, d), LinearRelation(2 * n, d)};
  a.g = deficiency_family(model);
  a.gram = gram(model);
  a.b = multipliers(model);

  const ComplexMatrix g_inv = a.gram.inverse();
  a.c_matrix.resize(m * d, m * d);
  for (Index j = 0; j < m; ++j)
    a.c_matrix.middleRows(j * d, d) = model.points[static_cast<std::size_t>(j)] * g_inv.middleRows(j * d, d);

  a.cm.resize(d, m * d);
  for (Index j = 0; j < m; ++j) a.cm.middleCols(j * d, d) = r_function(model, model.points[static_cast<std::size_t>(j)]);

  // decaying regular vectors S (L - ζ)^{-1} φ_σ with real ζ below the spectrum
  const Index r = model.regular_per_sigma;
  a.regular.resize(n, d * r);
  const ComplexMatrix phi_cols = model.phi.transpose();
  for (Index q = 0; q < r; ++q) {
    ComplexMatrix v = phi_cols;
    const double zeta = model.lambda(0) - static_cast<double>(q + 1);
    for (Index k = 0; k < n; ++k) v.row(k) /= model.lambda(k) - zeta;
    a.regular.middleCols(q * d, d) = detail::smoothing(model, probe, v);
  }

  a.m_vectors = ComplexMatrix::Zero(n, d);
  const ComplexMatrix g_probe = deficiency(model, probe);
  for (Index j = 0; j < m; ++j) {
    ComplexMatrix v = g_probe;
    for (Index k = 0; k < n; ++k) v.row(k) /= model.lambda(k) - model.points[static_cast<std::size_t>(j)];
    a.m_vectors += v / a.b[static_cast<std::size_t>(j)];
  }

  a.fk_offset = d * r + d;
  a.domain.resize(n, a.fk_offset + m * d);
  a.domain << a.regular, a.m_vectors, a.g;
  for (Index c = 0; c < a.domain.cols(); ++c) {
    const double nrm = a.domain.col(c).norm();
    if (nrm == 0.0) throw Error("assemble: a dom K spanning vector vanishes (phi is zero)");
    a.domain.col(c) /= nrm;
  }
  const auto dec = detail::svd(a.domain, {}, false, false);
  if (dec.rank < a.domain.cols())
    throw Error("assemble: the regular span, M_z and fK do not form a direct sum (rank " +
                std::to_string(dec.rank) + " of " + std::to_string(a.domain.cols()) + ")");

  const Index dim = a.domain.cols();
  a.k_image.resize(n, dim);
  a.gamma0.resize(d, dim);
  a.gamma1.resize(d, dim);
  const ComplexMatrix u_part = a.domain.leftCols(a.fk_offset);
  // ⟨φ, u⟩ for the regular and M_z columns; zero on fK columns
  const ComplexMatrix phi_u = model.phi.conjugate() * u_part;
  for (Index c = 0; c < dim; ++c) {
    ComplexVector u = ComplexVector::Zero(n), k = ComplexVector::Zero(n);
    if (c < a.fk_offset)
      u = a.domain.col(c);
    else
      k = a.domain.col(c);
    a.k_image.col(c) = apply_k(a, u, k);
    const ComplexVector dk = d_of(a, k);
    a.gamma0.col(c) = c_of(a, dk);
    a.gamma1.col(c) = a.cm * dk;
    if (c < a.fk_offset) a.gamma1.col(c) += phi_u.col(c);
  }

  ComplexMatrix hat(2 * n, dim);
  hat << a.domain, a.k_image;
  ComplexMatrix boundary(2 * d, dim);
  boundary << a.gamma0, a.gamma1;
  a.pair = BoundaryPair({n, d}, make_relation(2 * n, 2 * d, hat, boundary));
  a.k_relation = make_relation(n, n, a.domain, a.k_image);
  a.gamma0_relation = make_relation(2 * n, d, hat, a.gamma0);
  a.gamma1_relation = make_relation(2 * n, d, hat, a.gamma1);
  return a;
}

inline ModelAssembly assemble(const SpectralModel& model) { return assemble(model, model.probe); }

/// ⟨u, Kv⟩ - ⟨Ku, v⟩ against ⟨Γ0 u, Γ1 v⟩ - ⟨Γ1 u, Γ0 v⟩, maximized over sample pairs.
/// The left side uses the literal K formula, the right side the boundary maps.
inline double boundary_form_residual(const ModelAssembly& a, const std::vector<ComplexVector>& samples) {
  struct Eval {
    ComplexVector w, kw, g0, g1;
  };
  std::vector<Eval> ev;
  ev.reserve(samples.size());
  const ComplexMatrix u_phi = a.model.phi.conjugate();
  for (const ComplexVector& w : samples) {
    const Decomposition dec = decompose(a, w);
    if (dec.residual > kDomainResidualCap)
      throw DomainError("boundary_form_residual: sample lies outside the dom K span (residual " +
                        std::to_string(dec.residual) + ")");
    Eval e;
    e.w = w;
    e.kw = apply_k(a, dec.u, dec.k);
    e.g0 = c_of(a, dec.d);
    e.g1 = u_phi * dec.u + a.cm * dec.d;
    ev.push_back(std::move(e));
  }
  double worst = 0.0;
  for (const Eval& x : ev)
    for (const Eval& y : ev) {
      const Complex lhs = x.w.dot(y.kw) - x.kw.dot(y.w);
      const Complex rhs = x.g0.dot(y.g1) - x.g1.dot(y.g0);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

/// Random unit-norm combinations of the dom K spanning columns.
inline std::vector<ComplexVector> domain_samples(const ModelAssembly& a, std::size_t count,
                                                 std::uint64_t seed) {
  CounterRng rng(seed, 0x5a);
  std::vector<ComplexVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ComplexVector w = a.domain * rng.complex_vector(a.domain_dim());
    out.push_back(w / w.norm());
  }
  return out;
}

struct WeylRow {
  Index n = 0;
  Complex z;
  Complex probe;
  double residual = 0.0;               // ‖M_N(z) - R_N(z)‖
  std::optional<double> drift;         // ‖R_N(z) - R_{N_prev}(z)‖
  double green = 0.0;
  double im_r = 0.0;                   // Im R identity residual
  double boundary_form = 0.0;
  bool dom_full = false;
  bool ran_full = false;
  ComplexMatrix m;                     // M_N(z) when dom is full
};

/// Probe used to assemble the pair whose Weyl family is read at z.
inline Complex probe_for(const SpectralModel& model, Complex z) {
  for (Complex zj : model.points)
    if (std::abs(zj - z) <= 1e-12) return model.probe;
  return z;
}

/// M_Γ(z) as a d × d matrix, or nullopt when dom M(z) is not all of C^d.
inline std::optional<ComplexMatrix> weyl_matrix(const ModelAssembly& a, Complex z,
                                                const Tolerance& tol = {}) {
  const LinearRelation m = weyl_family(a.pair, z, tol);
  if (part(m, Part::Domain, tol).dim() != a.model.d) return std::nullopt;
  return as_operator(m, tol);
}

inline std::vector<WeylRow> weyl_vs_r(const ModelSpec& spec, Complex z, const std::vector<Index>& levels,
                                      std::size_t form_samples = 0, std::uint64_t seed = 0) {
  require_off_axis(z);
  std::vector<WeylRow> rows;
  std::optional<ComplexMatrix> prev;
  for (Index n : levels) {
    const SpectralModel model = realize(spec, n);
    detail::require_off_spectrum(model.lambda, z);
    WeylRow row;
    row.n = n;
    row.z = z;
    row.probe = probe_for(model, z);
    const ModelAssembly a = assemble(model, row.probe);
    const ComplexMatrix r = r_function(model, z);
    row.green = green_residual(a.pair);
    row.im_r = im_r_residual(model, z);
    row.ran_full = part(a.pair.gamma(), Part::Range).dim() == 2 * model.d;
    if (auto mz = weyl_matrix(a, z)) {
      row.dom_full = true;
      row.m = *mz;
      row.residual = (*mz - r).norm();
    } else {
      row.residual = std::numeric_limits<double>::infinity();
    }
    if (prev) row.drift = (r - *prev).norm();
    prev = r;
    if (form_samples > 0) row.boundary_form = boundary_form_residual(a, domain_samples(a, form_samples, seed));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct ExplicitGammaZ {
  LinearRelation gamma_z;          // {((g_z(c), z g_z(c)), (c, R(z)c))}
  LinearRelation gamma_z_adjoint;  // {((k, R(z̄)k + ⟨g(z), h⟩), (g, z̄ g + h))}
};

inline ExplicitGammaZ gamma_z_explicit(const SpectralModel& model, Complex z) {
  require_off_axis(z);
  const Index n = model.n, d = model.d;
  const Complex zb = std::conj(z);
  const ComplexMatrix g = deficiency(model, z);
  const ComplexMatrix r = r_function(model, z);
  const ComplexMatrix r_bar = r_function(model, zb);

  ComplexMatrix in(2 * n, d), out(2 * d, d);
  in << g, z * g;
  out << ComplexMatrix::Identity(d, d), r;
  LinearRelation gz = make_relation(2 * n, 2 * d, in, out);

  // parameters (k, g, h) ∈ C^d × C^N × C^N
  const Index p = d + 2 * n;
  ComplexMatrix k_hat = ComplexMatrix::Zero(2 * d, p);
  ComplexMatrix g_hat = ComplexMatrix::Zero(2 * n, p);
  k_hat.topLeftCorner(d, d) = ComplexMatrix::Identity(d, d);
  k_hat.bottomLeftCorner(d, d) = r_bar;
  g_hat.block(0, d, n, n) = ComplexMatrix::Identity(n, n);
  g_hat.block(n, d, n, n) = zb * ComplexMatrix::Identity(n, n);
  g_hat.block(n, d + n, n, n) = ComplexMatrix::Identity(n, n);
  k_hat.block(d, d + n, d, n) = g.adjoint();
  return {std::move(gz), make_relation(2 * d, 2 * n, k_hat, g_hat)};
}

/// Simplicity probe on the deficiency elements: ∩_z span{g_σ(z)}^⊥ over the grid.
inline SimplicityProbe model_simplicity_probe(const SpectralModel& model, const std::vector<Complex>& grid,
                                              const Tolerance& tol = {}) {
  if (grid.empty()) throw DomainError("simplicity_probe: grid is empty");
  ComplexMatrix all(model.n, static_cast<Index>(grid.size()) * model.d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_off_axis(grid[i]);
    all.middleCols(static_cast<Index>(i) * model.d, model.d) = deficiency(model, grid[i]);
  }
  const Subspace common = complement(orthonormalize(all, tol));
  return {common, common.is_zero()};
}

}  // namespace krel
