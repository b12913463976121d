#include "hyperset/system.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "hyperset/equations.hpp"
#include "hyperset/errors.hpp"

namespace hyperset {

System System::from_edges(std::size_t node_count, std::span<const Edge> edges, NodeId root,
                          std::vector<std::string> labels) {
    if (root.value >= node_count) {
        throw UnknownNode("root " + std::to_string(root.value) + " out of range");
    }
    if (!labels.empty() && labels.size() != node_count) {
        throw FormatError("label count does not match node count");
    }

    // Full adjacency, then reachability from the root.
    std::vector<std::uint32_t> degree(node_count + 1, 0);
    for (const auto& [from, to] : edges) {
        if (from.value >= node_count || to.value >= node_count) {
            throw UnknownNode("edge endpoint out of range");
        }
        ++degree[from.value + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) degree[i + 1] += degree[i];
    std::vector<std::uint32_t> adj(edges.size());
    {
        std::vector<std::uint32_t> fill(degree.begin(), degree.end() - 1);
        for (const auto& [from, to] : edges) adj[fill[from.value]++] = to.value;
    }

    constexpr std::uint32_t kUnseen = UINT32_MAX;
    std::vector<std::uint32_t> renum(node_count, kUnseen);
    std::vector<std::uint32_t> stack{root.value};
    renum[root.value] = 0;
    while (!stack.empty()) {
        std::uint32_t x = stack.back();
        stack.pop_back();
        for (std::uint32_t k = degree[x]; k < degree[x + 1]; ++k) {
            if (renum[adj[k]] == kUnseen) {
                renum[adj[k]] = 0;
                stack.push_back(adj[k]);
            }
        }
    }
    std::uint32_t kept = 0;
    for (std::size_t i = 0; i < node_count; ++i) {
        if (renum[i] != kUnseen) renum[i] = kept++;
    }

    System s;
    s.root_ = NodeId{renum[root.value]};
    s.offsets_.assign(1, 0);
    s.offsets_.reserve(kept + 1);
    s.labels_.reserve(kept);
    std::vector<NodeId> row;
    for (std::size_t i = 0; i < node_count; ++i) {
        if (renum[i] == kUnseen) continue;
        row.clear();
        for (std::uint32_t k = degree[i]; k < degree[i + 1]; ++k) row.push_back(NodeId{renum[adj[k]]});
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        s.targets_.insert(s.targets_.end(), row.begin(), row.end());
        s.offsets_.push_back(static_cast<std::uint32_t>(s.targets_.size()));
        s.labels_.push_back(labels.empty() ? "n" + std::to_string(i) : std::move(labels[i]));
    }
    return s;
}

System System::build(std::span<const std::string> labels,
                     std::span<const std::pair<std::string, std::string>> edges, std::string_view root) {
    std::unordered_map<std::string_view, std::uint32_t> index;
    index.reserve(labels.size());
    for (std::uint32_t i = 0; i < labels.size(); ++i) {
        if (!index.emplace(labels[i], i).second) throw FormatError("duplicate node '" + labels[i] + "'");
    }
    auto lookup = [&](std::string_view name) {
        auto it = index.find(name);
        if (it == index.end()) throw UnknownNode("unknown node '" + std::string(name) + "'");
        return NodeId{it->second};
    };
    std::vector<Edge> idx;
    idx.reserve(edges.size());
    for (const auto& [a, b] : edges) idx.emplace_back(lookup(a), lookup(b));
    NodeId r = lookup(root);
    return from_edges(labels.size(), idx, r, std::vector<std::string>(labels.begin(), labels.end()));
}

System System::rooted_at(NodeId new_root) const {
    if (new_root.value >= size()) throw UnknownNode("node " + std::to_string(new_root.value) + " out of range");
    return from_edges(size(), edges(), new_root, labels_);
}

std::span<const NodeId> System::children(NodeId x) const {
    if (x.value >= size()) throw UnknownNode("node " + std::to_string(x.value) + " out of range");
    return {targets_.data() + offsets_[x.value], targets_.data() + offsets_[x.value + 1]};
}

const std::string& System::label(NodeId x) const {
    if (x.value >= size()) throw UnknownNode("node " + std::to_string(x.value) + " out of range");
    return labels_[x.value];
}

bool System::find(std::string_view label, NodeId& out) const {
    for (std::uint32_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            out = NodeId{i};
            return true;
        }
    }
    return false;
}

std::vector<Edge> System::edges() const {
    std::vector<Edge> out;
    out.reserve(targets_.size());
    for (std::uint32_t x = 0; x < size(); ++x) {
        for (std::uint32_t k = offsets_[x]; k < offsets_[x + 1]; ++k) out.emplace_back(NodeId{x}, targets_[k]);
    }
    return out;
}

bool System::is_acyclic() const {
    // Iterative three-colour DFS from the root; every node is reachable.
    enum : std::uint8_t { White, Grey, Black };
    std::vector<std::uint8_t> colour(size(), White);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
    stack.emplace_back(root_.value, offsets_[root_.value]);
    colour[root_.value] = Grey;
    while (!stack.empty()) {
        auto& [x, next] = stack.back();
        if (next == offsets_[x + 1]) {
            colour[x] = Black;
            stack.pop_back();
            continue;
        }
        std::uint32_t y = targets_[next++].value;
        if (colour[y] == Grey) return false;
        if (colour[y] == White) {
            colour[y] = Grey;
            stack.emplace_back(y, offsets_[y]);
        }
    }
    return true;
}

Digraph Digraph::of(const System& s) {
    Digraph g;
    g.offsets.reserve(s.size() + 1);
    g.targets.reserve(s.edge_count());
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        for (NodeId y : s.children(NodeId{x})) g.targets.push_back(y.value);
        g.offsets.push_back(static_cast<std::uint32_t>(g.targets.size()));
    }
    return g;
}

Digraph Digraph::disjoint_union(const System& s, const System& t) {
    Digraph g = of(s);
    const auto shift = static_cast<std::uint32_t>(s.size());
    for (std::uint32_t x = 0; x < t.size(); ++x) {
        for (NodeId y : t.children(NodeId{x})) g.targets.push_back(y.value + shift);
        g.offsets.push_back(static_cast<std::uint32_t>(g.targets.size()));
    }
    return g;
}

std::span<const NodeId> children(const System& s, NodeId x) { return s.children(x); }

namespace {

std::vector<std::string> variable_names(const System& s) {
    std::vector<std::string> names;
    std::unordered_set<std::string> seen;
    bool usable = true;
    for (std::uint32_t x = 0; x < s.size() && usable; ++x) {
        const auto& l = s.label(NodeId{x});
        usable = is_identifier(l) && l != "root" && seen.insert(l).second;
        names.push_back(l);
    }
    if (!usable) {
        names.clear();
        for (std::uint32_t x = 0; x < s.size(); ++x) names.push_back("v" + std::to_string(x));
    }
    return names;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string render_equations(const System& s) {
    const auto names = variable_names(s);
    std::ostringstream os;
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        os << names[x] << " = {";
        bool first = true;
        for (NodeId y : s.children(NodeId{x})) {
            os << (first ? "" : ", ") << names[y.value];
            first = false;
        }
        os << "}\n";
    }
    os << "root " << names[s.root().value] << "\n";
    return os.str();
}

std::string export_dot(const System& s) {
    std::ostringstream os;
    os << "digraph hyperset {\n";
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        os << "  n" << x << " [label=\"" << dot_escape(s.label(NodeId{x})) << "\""
           << (NodeId{x} == s.root() ? ", shape=doublecircle" : "") << "];\n";
    }
    for (const auto& [a, b] : s.edges()) os << "  n" << a.value << " -> n" << b.value << ";\n";
    os << "}\n";
    return os.str();
}

nlohmann::json to_json(const System& s) {
    nlohmann::json nodes = nlohmann::json::array();
    nlohmann::json edges = nlohmann::json::array();
    for (std::uint32_t x = 0; x < s.size(); ++x) nodes.push_back(s.label(NodeId{x}));
    for (const auto& [a, b] : s.edges()) edges.push_back({s.label(a), s.label(b)});
    return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"root", s.label(s.root())}};
}

System system_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("nodes") || !j.contains("edges") || !j.contains("root")) {
        throw FormatError("system object needs 'nodes', 'edges' and 'root'");
    }
    const auto& jn = j.at("nodes");
    const auto& je = j.at("edges");
    if (!jn.is_array() || !je.is_array() || !j.at("root").is_string()) {
        throw FormatError("'nodes' and 'edges' must be arrays and 'root' a string");
    }
    std::vector<std::string> nodes;
    for (const auto& n : jn) {
        if (!n.is_string()) throw FormatError("node names must be strings");
        nodes.push_back(n.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : je) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
            throw FormatError("each edge must be a 2-element array of node names");
        }
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return System::build(nodes, edges, j.at("root").get<std::string>());
}

}  // namespace hyperset
