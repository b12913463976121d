#include "hyperset/hyperset.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "hyperset/bisim.hpp"
#include "hyperset/equations.hpp"
#include "hyperset/errors.hpp"

namespace hyperset {

namespace detail {

struct InternedSet {
    System picture;
    std::vector<std::uint32_t> key;
    std::uint64_t id;
};

}  // namespace detail

namespace {

using Key = std::vector<std::uint32_t>;

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint32_t v : k) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// [node count, root, then per node: child count, children...]
Key encode(const System& s) {
    Key k;
    k.reserve(2 + s.size() + s.edge_count());
    k.push_back(static_cast<std::uint32_t>(s.size()));
    k.push_back(s.root().value);
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        auto ch = s.children(NodeId{x});
        k.push_back(static_cast<std::uint32_t>(ch.size()));
        for (NodeId y : ch) k.push_back(y.value);
    }
    return k;
}

class InternTable {
public:
    const detail::InternedSet* intern(System canonical) {
        Key key = encode(canonical);
        std::lock_guard lock(mutex_);
        auto it = table_.find(key);
        if (it != table_.end()) return it->second.get();
        auto entry = std::make_unique<detail::InternedSet>(
            detail::InternedSet{std::move(canonical), key, static_cast<std::uint64_t>(table_.size())});
        const auto* raw = entry.get();
        table_.emplace(std::move(key), std::move(entry));
        return raw;
    }

private:
    std::mutex mutex_;
    std::unordered_map<Key, std::unique_ptr<detail::InternedSet>, KeyHash> table_;
};

InternTable& table() {
    static InternTable t;
    return t;
}

// Incremental construction of a picture out of fresh nodes and copies of
// existing pictures.
class PictureBuilder {
public:
    NodeId add_node() { return NodeId{count_++}; }

    void add_edge(NodeId a, NodeId b) { edges_.emplace_back(a, b); }

    // Copies s in and returns the id its root received.
    NodeId graft(const System& s) {
        const std::uint32_t offset = count_;
        count_ += static_cast<std::uint32_t>(s.size());
        for (const auto& [a, b] : s.edges()) edges_.emplace_back(NodeId{a.value + offset}, NodeId{b.value + offset});
        return NodeId{s.root().value + offset};
    }

    System finish(NodeId root) const { return System::from_edges(count_, edges_, root); }

private:
    std::uint32_t count_ = 0;
    std::vector<Edge> edges_;
};

const System& omega_picture() {
    static const System s = System::from_edges(1, std::vector<Edge>{{NodeId{0}, NodeId{0}}}, NodeId{0});
    return s;
}

}  // namespace

HyperSet intern_canonical(System canonical) { return HyperSet(table().intern(std::move(canonical))); }

HyperSet::HyperSet() : entry_(nullptr) {
    static const detail::InternedSet* empty_entry =
        table().intern(canonical_numbering(System::from_edges(1, {}, NodeId{0})));
    entry_ = empty_entry;
}

const System& HyperSet::picture() const noexcept { return entry_->picture; }

std::uint64_t HyperSet::id() const noexcept { return entry_->id; }

bool operator<(HyperSet a, HyperSet b) noexcept { return a.entry_->key < b.entry_->key; }

HyperSet decorate(const System& s) { return intern_canonical(canonicalize(s)); }

HyperSet mostowski_collapse(const System& s) {
    if (!s.is_acyclic()) throw CyclicInput();

    // Post-order walk; value[x] names the hash-consed set of child values.
    constexpr std::uint32_t kPending = UINT32_MAX;
    std::vector<std::uint32_t> value(s.size(), kPending);
    std::map<std::vector<std::uint32_t>, std::uint32_t> sets;
    std::vector<std::vector<std::uint32_t>> members_of;
    std::vector<std::pair<NodeId, std::size_t>> stack{{s.root(), 0}};
    while (!stack.empty()) {
        auto& [x, next] = stack.back();
        auto ch = s.children(x);
        if (next < ch.size()) {
            NodeId y = ch[next++];
            if (value[y.value] == kPending) stack.emplace_back(y, 0);
            continue;
        }
        std::vector<std::uint32_t> elems;
        for (NodeId y : ch) elems.push_back(value[y.value]);
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        auto [it, fresh] = sets.emplace(elems, static_cast<std::uint32_t>(members_of.size()));
        if (fresh) members_of.push_back(std::move(elems));
        value[x.value] = it->second;
        stack.pop_back();
    }

    std::vector<Edge> edges;
    for (std::uint32_t v = 0; v < members_of.size(); ++v) {
        for (std::uint32_t w : members_of[v]) edges.emplace_back(NodeId{v}, NodeId{w});
    }
    const System dag = System::from_edges(members_of.size(), edges, NodeId{value[s.root().value]});
    return intern_canonical(canonical_numbering(dag));
}

bool equals(HyperSet a, HyperSet b) { return a == b; }

std::vector<HyperSet> members(HyperSet a) {
    const System& pic = a.picture();
    std::vector<HyperSet> out;
    for (NodeId c : pic.children(pic.root())) out.push_back(intern_canonical(canonical_numbering(pic.rooted_at(c))));
    return out;
}

bool is_member(HyperSet a, HyperSet b) {
    const auto ms = members(b);
    return std::find(ms.begin(), ms.end(), a) != ms.end();
}

bool is_wellfounded(HyperSet a) { return a.picture().is_acyclic(); }

HyperSet unfold(HyperSet a, std::uint32_t rank) {
    // Layer j holds a copy of every node standing for its rank-j unfolding;
    // layer 0 nodes are childless.
    const System& pic = a.picture();
    const auto n = static_cast<std::uint32_t>(pic.size());
    std::vector<Edge> edges;
    for (std::uint32_t j = 0; j < rank; ++j) {
        for (const auto& [x, y] : pic.edges()) edges.emplace_back(NodeId{(j + 1) * n + x.value}, NodeId{j * n + y.value});
    }
    return decorate(System::from_edges(static_cast<std::size_t>(rank + 1) * n, edges, NodeId{rank * n + pic.root().value}));
}

HyperSet empty() { return HyperSet{}; }

HyperSet omega() {
    static const HyperSet o = decorate(omega_picture());
    return o;
}

HyperSet from_members(std::span<const HyperSet> elements) {
    PictureBuilder b;
    const NodeId root = b.add_node();
    for (HyperSet e : elements) b.add_edge(root, b.graft(e.picture()));
    return decorate(b.finish(root));
}

HyperSet singleton(HyperSet a) { return from_members(std::span<const HyperSet>(&a, 1)); }

HyperSet pair(HyperSet a, HyperSet b) {
    const HyperSet both[] = {a, b};
    return from_members(both);
}

HyperSet insert(HyperSet a, HyperSet b) {
    auto ms = members(b);
    ms.push_back(a);
    return from_members(ms);
}

HyperSet set_union(HyperSet a, HyperSet b) {
    auto ms = members(a);
    auto mb = members(b);
    ms.insert(ms.end(), mb.begin(), mb.end());
    return from_members(ms);
}

HyperSet von_neumann(std::uint32_t n) {
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i <= n; ++i) {
        for (std::uint32_t j = 0; j < i; ++j) edges.emplace_back(NodeId{i}, NodeId{j});
    }
    return decorate(System::from_edges(n + 1, edges, NodeId{n}));
}

HyperSet EquationSolution::at(std::string_view name) const {
    for (const auto& [n, v] : entries_) {
        if (n == name) return v;
    }
    throw UnknownVariable(std::string(name), SourcePos{});
}

bool EquationSolution::contains(std::string_view name) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.first == name; });
}

EquationSolution solve_equations(std::string_view text) {
    const EquationText eqs = parse_equations(text);
    // One refinement over all variables, then each variable is cut out of the quotient.
    std::vector<std::string> names;
    for (const auto& eq : eqs.equations) names.push_back(eq.name);
    std::vector<EquationSolution::Entry> out;
    if (names.empty()) return EquationSolution(std::move(out));
    // Validates every member reference.
    (void)to_system(eqs, names.front());
    // A hub pointing at every variable keeps all of them reachable.
    const NodeId hub{0};
    std::vector<Edge> edges;
    std::unordered_map<std::string_view, std::uint32_t> index;
    for (std::uint32_t i = 0; i < names.size(); ++i) index.emplace(names[i], i + 1);
    for (std::uint32_t i = 0; i < eqs.equations.size(); ++i) {
        edges.emplace_back(hub, NodeId{i + 1});
        for (const auto& m : eqs.equations[i].members) edges.emplace_back(NodeId{i + 1}, NodeId{index.at(m)});
    }
    const System all = System::from_edges(names.size() + 1, edges, hub);
    const SystemMap pi = quotient_map(all);
    for (std::uint32_t i = 0; i < names.size(); ++i) {
        out.emplace_back(names[i], intern_canonical(canonical_numbering(pi.target().rooted_at(pi(NodeId{i + 1})))));
    }
    return EquationSolution(std::move(out));
}

namespace {

std::uint64_t tree_size(const System& s, NodeId x, std::vector<std::uint64_t>& memo) {
    if (memo[x.value] != 0) return memo[x.value];
    std::uint64_t total = 1;
    for (NodeId y : s.children(x)) total = std::min<std::uint64_t>(total + tree_size(s, y, memo), UINT32_MAX);
    return memo[x.value] = total;
}

std::string braces(const System& s, NodeId x, std::vector<std::string>& memo) {
    if (!memo[x.value].empty()) return memo[x.value];
    auto ch = s.children(x);
    std::string out;
    if (ch.empty()) {
        out = "∅";
    } else {
        out = "{";
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (i > 0) out += ", ";
            out += braces(s, ch[i], memo);
        }
        out += "}";
    }
    return memo[x.value] = out;
}

}  // namespace

std::string to_string(HyperSet a) {
    const System& pic = a.picture();
    if (a == omega()) return "Ω";
    if (pic.is_acyclic()) {
        std::vector<std::uint64_t> sizes(pic.size(), 0);
        if (tree_size(pic, pic.root(), sizes) <= 512) {
            std::vector<std::string> memo(pic.size());
            return braces(pic, pic.root(), memo);
        }
    }
    std::string eq = render_equations(pic);
    eq.pop_back();
    std::string out = "⟨";
    for (char c : eq) out += c == '\n' ? std::string("; ") : std::string(1, c);
    return out + "⟩";
}

}  // namespace hyperset
