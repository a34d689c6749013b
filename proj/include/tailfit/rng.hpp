#pragma once

#include <cstdint>

namespace tailfit {

// Finalizer of the splitmix64 sequence; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based 64-bit generator (splitmix64). Cheap to seed, so every
// replication owns an independent stream and results do not depend on
// execution order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1); never returns an endpoint.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double operator()() { return next_open01(); }

 private:
  std::uint64_t state_;
};

// Stream seed for replication `rep` of grid cell `cell` under `base_seed`.
inline std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t cell,
                                 std::uint64_t rep) {
  return base_seed ^ mix64(mix64(cell) + rep);
}

}  // namespace tailfit
