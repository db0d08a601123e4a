#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace krel {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when operands live in incompatible spaces.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when an input violates a documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Rank and equality policy shared by all subspace computations.
///
/// A singular value counts toward the numerical rank when
/// sigma > max(rows, cols) * eps * sigma_max * rank_factor.
/// Two subspaces are equal when the Frobenius distance of their orthogonal
/// projectors is at most `equality`, or 1e-9 * sqrt(ambient) when unset.
struct Tolerance {
  static constexpr double kDefaultRankFactor = 1.0e3;

  double rank_factor = kDefaultRankFactor;
  double equality = 0.0;

  Tolerance() = default;

  /// `multiplier` scales the default rank factor; 0 keeps the default policy.
  static Tolerance scaled(double multiplier) {
    if (multiplier < 0.0 || !std::isfinite(multiplier))
      throw DomainError("tolerance multiplier must be finite and >= 0");
    Tolerance t;
    if (multiplier > 0.0) {
      t.rank_factor = kDefaultRankFactor * multiplier;
      t.equality = 0.0;
    }
    return t;
  }

  double rank_threshold(double sigma_max, Index rows, Index cols) const {
    const double size = static_cast<double>(std::max<Index>({rows, cols, 1}));
    return size * std::numeric_limits<double>::epsilon() * sigma_max * rank_factor;
  }

  double equality_bound(Index ambient_dim) const {
    if (equality > 0.0) return equality;
    return 1.0e-9 * std::sqrt(static_cast<double>(std::max<Index>(ambient_dim, 1)));
  }
};

inline void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite())
    throw DomainError(std::string(what) + ": entries must be finite");
}

}  // namespace krel
