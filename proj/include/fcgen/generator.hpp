#pragma once

#include "fcgen/demonstration.hpp"
#include "fcgen/phrase_pools.hpp"

#include <cstdint>
#include <vector>

namespace fcgen {

// Request:command target when the caller wants to override the natural
// frequency of command-style questions (the share of combinations whose
// question phrase is empty).
struct style_ratio {
    uint32_t request = 1;
    uint32_t command = 1;
};

// Draws `count` distinct slot combinations via a seeded pseudorandom
// permutation of [0, capacity) with mixed-radix decoding, then assembles
// question text and gold call for each. Deterministic in (pools, count,
// seed); throws a capacity-exceeded validation error when count exceeds
// the combination space.
std::vector<demonstration> generate(const bound_pools & pools, uint64_t count, uint64_t seed);

// Same contract, but partitions the draw so that round(count * r/(r+c))
// demonstrations are request style and the rest command style.
std::vector<demonstration> generate_styled(const bound_pools & pools, uint64_t count,
                                           style_ratio ratio, uint64_t seed);

// One out-of-logic variant per input demonstration: the question part is
// replaced by (request style) or prefixed with (command style) a seeded
// draw from the out-of-logic question pool. Gold calls are unchanged.
std::vector<demonstration> make_oofc(const std::vector<demonstration> & demos,
                                     const bound_pools & pools, uint64_t seed);

} // namespace fcgen
