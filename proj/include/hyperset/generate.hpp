#pragma once

#include <cstdint>

#include "hyperset/system.hpp"

namespace hyperset {

struct RandomSystemOptions {
    std::uint32_t nodes = 8;
    // Target edges per node; at least a spanning tree from the root is kept.
    double density = 1.5;
    // Restrict edges to point from lower to higher index.
    bool acyclic = false;
    std::uint64_t seed = 1;
};

// Seeded pointed system rooted at node 0 with every node reachable. Edge
// count is max(nodes - 1, round(density * nodes)), clamped to the number of
// available distinct edges. Same options give the same system on every
// platform.
System random_system(const RandomSystemOptions& opts);

}  // namespace hyperset
