#pragma once

#include <cstdint>

namespace dyck {

// SplitMix64 generator (Steele, Lea, Flood 2014). Small state, fully
// deterministic across platforms, and cheap to fork into independent
// substreams by seed derivation, which is what the randomized repair
// algorithms need for reproducible best-of-N iteration schemes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream derived from (master, stream). Restarting with the
  // same pair replays the exact same coin sequence.
  static Rng substream(std::uint64_t master, std::uint64_t stream) {
    return Rng(mix(master + 0x9e3779b97f4a7c15ull * (stream + 1)));
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  bool coin() { return (next() >> 63) != 0; }

  // Uniform in [0, bound). Fixed-point multiply keeps the draw count at one
  // word per call so substreams stay aligned.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t state() const { return state_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

// Stable 64-bit label for a derived stream; used where a seed has to be
// printed and fed back in (bench rows).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return Rng::substream(master, stream).next();
}

}  // namespace dyck
