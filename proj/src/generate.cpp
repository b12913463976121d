#include "hyperset/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace hyperset {

namespace {

// std::mt19937_64 output is fixed by the standard; the distributions are
// not, so bounded draws use plain modular reduction.
std::uint32_t below(std::mt19937_64& rng, std::uint64_t bound) { return static_cast<std::uint32_t>(rng() % bound); }

}  // namespace

System random_system(const RandomSystemOptions& opts) {
    const std::uint64_t n = std::max<std::uint32_t>(opts.nodes, 1);
    std::mt19937_64 rng(opts.seed);
    const std::uint64_t available = opts.acyclic ? n * (n - 1) / 2 : n * n;
    const auto wanted = static_cast<std::uint64_t>(std::llround(std::max(0.0, opts.density) * static_cast<double>(n)));
    const std::uint64_t target = std::min(available, std::max(n - 1, wanted));

    std::vector<Edge> edges;
    edges.reserve(target);
    std::unordered_set<std::uint64_t> present;
    present.reserve(target * 2);
    auto add = [&](std::uint32_t a, std::uint32_t b) {
        if (present.insert(static_cast<std::uint64_t>(a) * n + b).second) edges.emplace_back(NodeId{a}, NodeId{b});
    };
    // Spanning tree: node i hangs under a random earlier node.
    for (std::uint32_t i = 1; i < n; ++i) add(below(rng, i), i);
    while (edges.size() < target) {
        std::uint32_t a = below(rng, n);
        std::uint32_t b = below(rng, n);
        if (opts.acyclic) {
            if (a == b) continue;
            if (a > b) std::swap(a, b);
        }
        add(a, b);
    }
    return System::from_edges(n, edges, NodeId{0});
}

}  // namespace hyperset
