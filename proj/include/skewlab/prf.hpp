#pragma once

#include <cstdint>

#include "skewlab/wide.hpp"

namespace skewlab {

// Keyed pseudorandom function on 64/128-bit indices. Stateless: every output
// is a pure function of (key, index), so any stream position can be
// regenerated in O(1). SplitMix64-style finalizer.
namespace prf {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Derived stream key for (master seed, stream id, domain tag).
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t id, std::uint64_t tag) {
    std::uint64_t k = mix64(seed + kGolden);
    k = mix64(k ^ (id * 0xc2b2ae3d27d4eb4fULL + kGolden));
    k = mix64(k ^ (tag * 0x165667b19e3779f9ULL + kGolden));
    return k;
}

inline std::uint64_t at(std::uint64_t key, std::uint64_t index) {
    return mix64(key + index * kGolden);
}

// Word at a signed 128-bit index (fiber coordinates can be huge).
inline std::uint64_t at_wide(std::uint64_t key, i128 index) {
    u128 u = static_cast<u128>(index);
    std::uint64_t lo = static_cast<std::uint64_t>(u);
    std::uint64_t hi = static_cast<std::uint64_t>(u >> 64);
    return mix64(key + lo * kGolden + mix64(hi + 0x8e9d5aab9a1b3c71ULL));
}

// Uniform double in [0, 1) from a word.
inline double to_unit(std::uint64_t w) { return static_cast<double>(w >> 11) * 0x1.0p-53; }

}  // namespace prf
}  // namespace skewlab
