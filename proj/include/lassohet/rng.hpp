#pragma once

#include <cstdint>
#include <cmath>

namespace lassohet {

// splitmix64: counter-based 64-bit generator. State advances by a fixed
// odd constant, output is a bijective mix of the state, so the k-th draw
// is a pure function of (seed, k).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform on (0,1); never returns 0 so log() below is safe
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Standard normals via Box-Muller on top of SplitMix64.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = rng_.next_unit();
    double v = rng_.next_unit();
    double radius = std::sqrt(-2.0 * std::log(u));
    double angle = 6.283185307179586476925286766559 * v;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  SplitMix64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent stream seed from (master, experiment, grid point,
// trial). Feeds each component through the splitmix output mix so nearby
// indices land far apart.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t experiment_id,
                              std::uint64_t grid_index = 0,
                              std::uint64_t trial_index = 0) {
  SplitMix64 h(master);
  std::uint64_t s = h.next_u64();
  s ^= SplitMix64(experiment_id + 0x1ULL).next_u64();
  s = SplitMix64(s).next_u64() ^ SplitMix64(grid_index + 0x2ULL).next_u64();
  s = SplitMix64(s).next_u64() ^ SplitMix64(trial_index + 0x3ULL).next_u64();
  return SplitMix64(s).next_u64();
}

}  // namespace lassohet
