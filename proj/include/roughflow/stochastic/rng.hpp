#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace roughflow {

// Counter-derived per-replicate seeds: replicate i always sees the same
// stream for a given master seed, independent of scheduling.
struct RngStreams {
  uint64_t master{1};

  explicit RngStreams(uint64_t seed = 1) : master(seed) {}

  static uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  uint64_t derive(uint64_t replicate) const {
    return splitmix64(master ^ splitmix64(replicate + 0x51ab5ca1ULL));
  }
};

// Explicit Box-Muller normals on top of mt19937_64; keeps streams identical
// across standard libraries.
class NormalSampler {
 public:
  explicit NormalSampler(uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double uniform01() {
    // (0,1]: never returns 0, so log() above is safe
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
  double spare_{0.0};
  bool has_spare_{false};
};

}  // namespace roughflow
