#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qrc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a master seed and a key path,
/// e.g. derive_seed(master, {realization}) or derive_seed(master, {tag, g, h, r}).
/// Results depend only on the arguments, never on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t state = mix64(master);
    for (std::uint64_t k : keys) state = mix64(state ^ mix64(k + 0x632be59bd9b4e019ULL));
    return state;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Engine(seq);
}

// Stream tags for derive_seed.
namespace seed_tag {
inline constexpr std::uint64_t couplings = 1;
inline constexpr std::uint64_t series = 2;
inline constexpr std::uint64_t noise_rsp = 3;
inline constexpr std::uint64_t noise_olp = 4;
inline constexpr std::uint64_t noise_feedback = 5;
inline constexpr std::uint64_t initial_state = 6;
}  // namespace seed_tag

}  // namespace qrc
