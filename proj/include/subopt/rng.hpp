#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "subopt/vecmath.hpp"

namespace subopt {

/// Deterministic, platform-independent generator (splitmix64 core). The
/// standard-library distributions are implementation-defined, so sampling is
/// done by hand to keep seeded runs reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Stream derivation for independent per-task seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a * 0x9e3779b97f4a7c15ULL + b + 0x2545f4914f6cdd1dULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Uniform sample from the open ball B(center, radius).
inline Vec sample_in_ball(std::span<const double> center, double radius, Rng& rng) {
  const std::size_t n = center.size();
  Vec dir(n);
  double nrm = 0.0;
  do {
    for (auto& v : dir) v = rng.gaussian();
    nrm = norm(dir);
  } while (nrm < 1e-300);
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = center[i] + r * dir[i] / nrm;
  return out;
}

}  // namespace subopt
