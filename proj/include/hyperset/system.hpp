#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hyperset {

struct NodeId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

using Edge = std::pair<NodeId, NodeId>;

// A finite pointed directed graph. Edges run from a set to its members.
//
// Construction keeps only the part reachable from the root and collapses
// duplicate edges. Surviving nodes are renumbered 0..n-1 preserving their
// relative input order, so NodeIds are dense. Children of every node are
// stored sorted by NodeId. Immutable once built.
class System {
public:
    // Labelled construction. Throws UnknownNode if an edge endpoint or the
    // root is not among `labels`, and FormatError on a repeated label.
    static System build(std::span<const std::string> labels,
                        std::span<const std::pair<std::string, std::string>> edges,
                        std::string_view root);

    // Index construction over nodes 0..node_count-1; nodes get labels "n<i>"
    // unless `labels` is supplied (same length as node_count).
    static System from_edges(std::size_t node_count, std::span<const Edge> edges, NodeId root,
                             std::vector<std::string> labels = {});

    // The subsystem reachable from `new_root`, with labels carried over.
    System rooted_at(NodeId new_root) const;

    std::size_t size() const noexcept { return offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size(); }
    NodeId root() const noexcept { return root_; }

    // Throws UnknownNode for ids outside the system.
    std::span<const NodeId> children(NodeId x) const;
    const std::string& label(NodeId x) const;

    // Linear lookup; returns false if no node carries the label.
    bool find(std::string_view label, NodeId& out) const;

    std::vector<Edge> edges() const;
    bool is_acyclic() const;

    // Structural equality: same size, root, adjacency and labels.
    friend bool operator==(const System&, const System&) = default;

private:
    System() = default;

    std::vector<std::uint32_t> offsets_{0};
    std::vector<NodeId> targets_;
    std::vector<std::string> labels_;
    NodeId root_{};
};

// Node set plus adjacency of a graph without the pointed-graph invariants.
// Used for disjoint unions and other internal work.
struct Digraph {
    std::vector<std::uint32_t> offsets{0};
    std::vector<std::uint32_t> targets;

    std::size_t size() const noexcept { return offsets.size() - 1; }
    std::span<const std::uint32_t> children(std::uint32_t x) const {
        return {targets.data() + offsets[x], targets.data() + offsets[x + 1]};
    }

    static Digraph of(const System& s);
    static Digraph disjoint_union(const System& s, const System& t);
};

std::span<const NodeId> children(const System& s, NodeId x);

// Equation form, e.g. "x = {x, y}\ny = {}\nroot x\n". Labels are used as
// variable names when they are distinct identifiers, otherwise v0, v1, ...
std::string render_equations(const System& s);

// Deterministic Graphviz text. One line per node in NodeId order with the
// root drawn as a double circle, then one line per edge.
std::string export_dot(const System& s);

// JSON interchange form: {"nodes": [...], "edges": [[a, b], ...], "root": r}.
nlohmann::json to_json(const System& s);
System system_from_json(const nlohmann::json& j);

}  // namespace hyperset

template <>
struct std::hash<hyperset::NodeId> {
    std::size_t operator()(hyperset::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
