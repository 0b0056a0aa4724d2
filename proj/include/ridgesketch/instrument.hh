#pragma once

#include <atomic>
#include <cstdint>

namespace ridgesketch::instrument {

// Process-wide counters. Sweeps must show exactly one embedding draw and one
// Gram/SVD build; the flop counter audits the low-rank apply cost claim.
inline std::atomic<std::uint64_t> embedding_draws{0};
inline std::atomic<std::uint64_t> gram_builds{0};
inline std::atomic<std::uint64_t> svd_builds{0};
inline std::atomic<std::uint64_t> lowrank_apply_flops{0};

inline void reset() {
    embedding_draws = 0;
    gram_builds = 0;
    svd_builds = 0;
    lowrank_apply_flops = 0;
}

}  // namespace ridgesketch::instrument
