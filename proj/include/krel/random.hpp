#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter), so results do not depend on call interleaving.

#include "krel/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace krel {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() {
    const std::uint64_t key = mix(seed_ ^ mix(stream_ + 0x632be59bd9b4e019ULL));
    return mix(key + 0x9e3779b97f4a7c15ULL * ++counter_);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  double normal() {
    // Box-Muller; one value per call keeps the counter arithmetic simple
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_normal() { return {normal() / std::numbers::sqrt2, normal() / std::numbers::sqrt2}; }

  ComplexMatrix complex_matrix(Index rows, Index cols) {
    ComplexMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }

  ComplexVector complex_vector(Index n) { return complex_matrix(n, 1).col(0); }

  /// Haar-ish unitary from the QR factor of a Gaussian matrix.
  ComplexMatrix unitary(Index n) {
    if (n == 0) return ComplexMatrix(0, 0);
    Eigen::HouseholderQR<ComplexMatrix> qr(complex_matrix(n, n));
    return qr.householderQ();
  }

  /// Independent generator for a sub-task, derived from this one's seed.
  CounterRng fork(std::uint64_t stream) const { return CounterRng(seed_, mix(stream_ * 31 + stream + 1)); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace krel
