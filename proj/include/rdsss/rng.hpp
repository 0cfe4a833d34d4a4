#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rdsss {

using Rng = std::mt19937_64;

// Replicates are grouped into fixed-size blocks; each block owns one derived
// stream so results do not depend on how blocks are spread over workers.
inline constexpr std::int64_t kReplicateBlock = 64;

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Deterministic child seed for (master, id0, id1, ...).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> ids) noexcept;

inline Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> ids) {
  return Rng(derive_seed(master, ids));
}

// Seed for runs that did not pin one; callers are expected to log it.
std::uint64_t fresh_seed();

}  // namespace rdsss
