#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dds {

// Derives an independent stream seed from a base seed and one or two tags.
// splitmix64 finalizer; stable across platforms and standard libraries.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t substream(std::uint64_t seed, std::uint64_t tag_a,
                               std::uint64_t tag_b) {
  return substream(substream(seed, tag_a), tag_b);
}

// Stable string tag for substream derivation (FNV-1a).
inline std::uint64_t stream_tag(const char* s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 0x100000001b3ull;
  return h;
}

// mt19937_64 engine (its sequence is pinned by the standard) with hand-rolled
// uniform and gaussian transforms, so draws are bitwise reproducible on any
// conforming implementation.  std::uniform_real_distribution and friends are
// implementation-defined and deliberately avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; caches the second variate of each pair.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 1.0 - uniform();  // (0, 1], keeps log finite
    double r = std::sqrt(-2.0 * std::log(u));
    double t = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  // Uniform point on the unit sphere in R^n.
  template <typename Vec>
  void unit_vector(Vec& v) {
    do {
      for (int i = 0; i < static_cast<int>(v.size()); ++i) v[i] = gaussian();
    } while (v.norm() == 0.0);
    v /= v.norm();
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dds
