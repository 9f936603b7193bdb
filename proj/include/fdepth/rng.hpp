#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>

namespace fdepth {

// Seeded random stream used by the simulation. Uniforms come from the top 53
// bits of a 64-bit Mersenne twister; normals use the Box-Muller transform and
// hand out both variates of each pair in turn. Both transforms are written out
// here so draws do not depend on the standard library's distribution classes.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // +1 or -1 with probability 1/2 each.
  double sign() { return uniform() < 0.5 ? 1.0 : -1.0; }

  double normal() {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return z;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream seed for one replication of one model.
constexpr std::uint64_t replication_seed(std::uint64_t master_seed, int model_id, std::uint64_t replication) {
  return mix64(mix64(mix64(master_seed) ^ static_cast<std::uint64_t>(model_id)) ^ replication);
}

}  // namespace fdepth
