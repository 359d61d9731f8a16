#pragma once

#include <cstdint>

namespace radbound::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from (seed, branch).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t branch) {
    return splitmix64(splitmix64(seed) ^ (branch + 0x632be59bd9b4e019ULL));
}

}  // namespace radbound::detail
