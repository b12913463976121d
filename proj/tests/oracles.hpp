#pragma once

// Test-only reference computations. Nothing here calls into partition
// refinement, canonicalization or the modal evaluator.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hyperset/generate.hpp"
#include "hyperset/modal.hpp"
#include "hyperset/system.hpp"

namespace oracle {

using hyperset::NodeId;
using hyperset::System;

// Nodes reachable from root by depth-first search over a raw edge list.
inline std::set<std::string> reachable(const std::vector<std::pair<std::string, std::string>>& edges,
                                       const std::string& root) {
    std::set<std::string> seen{root};
    std::vector<std::string> stack{root};
    while (!stack.empty()) {
        std::string x = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : edges) {
            if (a == x && seen.insert(b).second) stack.push_back(b);
        }
    }
    return seen;
}

// Brace notation of a node's rank-k unfolding: "{}" at rank 0, otherwise the
// sorted distinct rank-(k-1) strings of its children.
class Unfolder {
public:
    explicit Unfolder(const System& s) : s_(s) {}

    const std::string& at(NodeId x, std::uint32_t k) {
        auto key = std::make_pair(x.value, k);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::string out = "{";
        if (k > 0) {
            std::set<std::string> parts;
            for (NodeId y : s_.children(x)) parts.insert(at(y, k - 1));
            bool first = true;
            for (const auto& p : parts) {
                out += (first ? "" : ",") + p;
                first = false;
            }
        }
        out += "}";
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    const System& s_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::string> memo_;
};

// Brace notation of a wellfounded node: the unfolding at a rank past its height.
inline std::string wf_string(const System& s, NodeId x) {
    Unfolder u(s);
    return u.at(x, static_cast<std::uint32_t>(s.size()) + 1);
}

inline std::string wf_string(const System& s) { return wf_string(s, s.root()); }

inline std::string unfold_string(const System& s, std::uint32_t k) {
    Unfolder u(s);
    return u.at(s.root(), k);
}

// Random formula over every constructor, depth at most `depth`.
inline hyperset::modal::Formula random_formula(std::mt19937_64& rng, int depth) {
    using hyperset::modal::Formula;
    const auto pick = rng() % (depth <= 0 ? 2 : 8);
    auto sub = [&] { return random_formula(rng, depth - 1); };
    auto list = [&] {
        std::vector<Formula> fs;
        const auto n = rng() % 4;
        for (std::uint64_t i = 0; i < n; ++i) fs.push_back(sub());
        return fs;
    };
    switch (pick) {
        case 0: return Formula::top();
        case 1: return Formula::bot();
        case 2: return Formula::neg(sub());
        case 3: return Formula::conj(list());
        case 4: return Formula::disj(list());
        case 5: return Formula::dia(sub());
        case 6: return Formula::box(sub());
        default: return Formula::delta(list());
    }
}

// Seeded systems with 1..max_nodes nodes and mixed densities.
inline std::vector<System> system_pool(std::size_t count, std::uint32_t max_nodes, std::uint64_t seed,
                                       bool acyclic = false) {
    std::mt19937_64 rng(seed);
    std::vector<System> out;
    for (std::size_t i = 0; i < count; ++i) {
        hyperset::RandomSystemOptions opts;
        opts.nodes = 1 + static_cast<std::uint32_t>(rng() % max_nodes);
        opts.density = static_cast<double>(rng() % 250) / 100.0;
        opts.acyclic = acyclic || rng() % 4 == 0;
        opts.seed = rng();
        out.push_back(hyperset::random_system(opts));
    }
    return out;
}

}  // namespace oracle
