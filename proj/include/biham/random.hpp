#pragma once

#include <cstdint>
#include <random>

#include "biham/linalg.hpp"

namespace biham {

/// SplitMix64 mixing step; used to derive independent per-trial seeds from a
/// master seed so that results do not depend on evaluation order.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Deterministic sampler. Distributions are implemented directly on the raw
/// 64-bit engine output so that draws are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  Sampler(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Complex complex_in_box(double half_width) {
    return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
  }
  std::uint64_t next() { return engine_(); }

  /// Entries uniform in the box [-s, s] x [-s, s].
  ComplexMatrix matrix(std::size_t n, double scale = 1.0);
  /// I + E with ||E||_F <= radius (direction uniform in the box, then rescaled).
  ComplexMatrix near_identity(std::size_t n, double radius);
  ComplexMatrix hermitian(std::size_t n, double scale = 1.0);
  /// Invertible diagonal matrix whose entries are separated by at least min_gap.
  ComplexMatrix regular_diagonal(std::size_t n, double min_gap = 0.3);
  /// Real vector with entries pairwise separated by at least min_gap, in [-span, span].
  Eigen::VectorXd separated_reals(std::size_t n, double span, double min_gap);

 private:
  std::mt19937_64 engine_;
};

}  // namespace biham
