#pragma once

// Deterministic random number generation. Every stochastic artifact in the
// library (synthetic data, starting points, power-iteration probes) is a pure
// function of a 64-bit seed, bit-identical across platforms and compilers.
// The standard-library distributions are deliberately avoided: their output
// is implementation-defined and breaks cross-toolchain reproducibility.

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace sfgm {

// SplitMix64: seeds the main generator and derives per-purpose streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256++ by Blackman and Vigna; state seeded through SplitMix64.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in {0, 1, ..., bound - 1} via rejection (unbiased).
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via Box-Muller. Uses only uniform() and libm functions
  // with well-defined rounding behavior in practice; unlike
  // std::normal_distribution the output stream is stable across toolchains.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Named sub-streams of an experiment seed. Each purpose gets its own
// generator so adding draws to one stream never perturbs another.
enum class Stream : std::uint64_t {
  kSpectrum = 0,     // diagonal spectra / design matrices
  kTargets = 1,      // regression targets / label planes
  kPlane = 2,        // separating hyperplane for synthetic logistic labels
  kStart = 3,        // starting points x0
  kProbe = 4,        // power-iteration probe vectors
  kFuzz = 5,         // test-only fuzzing
};

inline Xoshiro256pp make_stream(std::uint64_t seed, Stream purpose) {
  const std::uint64_t id = static_cast<std::uint64_t>(purpose);
  return Xoshiro256pp(seed ^ (0x9E3779B97F4A7C15ull * (id + 1)));
}

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> random_normal_vector(Eigen::Index n,
                                                              Xoshiro256pp& rng) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = static_cast<Scalar>(rng.normal());
  return out;
}

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> random_uniform_vector(Eigen::Index n,
                                                               Xoshiro256pp& rng) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = static_cast<Scalar>(rng.uniform());
  return out;
}

// Column-major fill: entry (i, j) is draw number j*rows + i.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> random_normal_matrix(
    Eigen::Index rows, Eigen::Index cols, Xoshiro256pp& rng) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = static_cast<Scalar>(rng.normal());
  return out;
}

}  // namespace sfgm
