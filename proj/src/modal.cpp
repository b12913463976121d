#include "hyperset/modal.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace hyperset::modal {

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Neg: return "not";
        case Kind::And: return "and";
        case Kind::Dia: return "dia";
        case Kind::Or: return "or";
        case Kind::Box: return "box";
        case Kind::Delta: return "delta";
        case Kind::Top: return "top";
        case Kind::Bot: return "bot";
    }
    return "?";
}

Formula Formula::make(Kind kind, std::vector<Formula> args) {
    return Formula(std::make_shared<const Node>(Node{kind, std::move(args), {}}));
}

Formula Formula::top() { return make(Kind::Top, {}); }
Formula Formula::bot() { return make(Kind::Bot, {}); }
Formula Formula::neg(Formula f) { return make(Kind::Neg, {std::move(f)}); }
Formula Formula::conj(std::vector<Formula> fs) { return make(Kind::And, std::move(fs)); }
Formula Formula::disj(std::vector<Formula> fs) { return make(Kind::Or, std::move(fs)); }
Formula Formula::dia(Formula f) { return make(Kind::Dia, {std::move(f)}); }
Formula Formula::box(Formula f) { return make(Kind::Box, {std::move(f)}); }
Formula Formula::delta(std::vector<Formula> fs) { return make(Kind::Delta, std::move(fs)); }

Formula Formula::with_pos(SourcePos pos) const {
    return Formula(std::make_shared<const Node>(Node{kind(), args(), pos}));
}

std::size_t Formula::dag_size() const {
    std::unordered_set<const void*> seen;
    std::vector<const Formula*> stack{this};
    while (!stack.empty()) {
        const Formula* f = stack.back();
        stack.pop_back();
        if (!seen.insert(f->identity()).second) continue;
        for (const auto& a : f->args()) stack.push_back(&a);
    }
    return seen.size();
}

namespace {

std::uint64_t tree_size_of(const Formula& f, std::unordered_map<const void*, std::uint64_t>& memo) {
    if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
    std::uint64_t total = 1;
    for (const auto& a : f.args()) {
        const std::uint64_t s = tree_size_of(a, memo);
        total = s > UINT64_MAX - total ? UINT64_MAX : total + s;
    }
    memo.emplace(f.identity(), total);
    return total;
}

}  // namespace

std::uint64_t Formula::tree_size() const {
    std::unordered_map<const void*, std::uint64_t> memo;
    return tree_size_of(*this, memo);
}

bool same_structure(const Formula& f, const Formula& g) {
    std::set<std::pair<const void*, const void*>> known;
    std::vector<std::pair<const Formula*, const Formula*>> stack{{&f, &g}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (a->identity() == b->identity()) continue;
        if (!known.emplace(a->identity(), b->identity()).second) continue;
        if (a->kind() != b->kind() || a->args().size() != b->args().size()) return false;
        for (std::size_t i = 0; i < a->args().size(); ++i) stack.emplace_back(&a->args()[i], &b->args()[i]);
    }
    return true;
}

namespace {

class Normalizer {
public:
    Formula run(const Formula& f) {
        if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
        Formula out = rewrite(f);
        memo_.emplace(f.identity(), out);
        return out;
    }

private:
    std::vector<Formula> all(const std::vector<Formula>& fs) {
        std::vector<Formula> out;
        out.reserve(fs.size());
        for (const auto& f : fs) out.push_back(run(f));
        return out;
    }

    Formula top() {
        if (!top_) top_ = Formula::conj({});
        return *top_;
    }

    Formula rewrite(const Formula& f) {
        switch (f.kind()) {
            case Kind::Neg: return Formula::neg(run(f.args()[0]));
            case Kind::And: return Formula::conj(all(f.args()));
            case Kind::Dia: return Formula::dia(run(f.args()[0]));
            case Kind::Top: return top();
            case Kind::Bot: return Formula::neg(top());
            case Kind::Or: return disj(all(f.args()));
            case Kind::Box: return box(run(f.args()[0]));
            case Kind::Delta: {
                auto parts = all(f.args());
                std::vector<Formula> dias;
                dias.reserve(parts.size());
                for (const auto& p : parts) dias.push_back(Formula::dia(p));
                return Formula::conj({Formula::conj(std::move(dias)), box(disj(std::move(parts)))});
            }
        }
        return f;
    }

    static Formula disj(std::vector<Formula> parts) {
        for (auto& p : parts) p = Formula::neg(std::move(p));
        return Formula::neg(Formula::conj(std::move(parts)));
    }

    static Formula box(Formula f) { return Formula::neg(Formula::dia(Formula::neg(std::move(f)))); }

    std::unordered_map<const void*, Formula> memo_;
    std::optional<Formula> top_;
};

}  // namespace

Formula normalize(const Formula& f) { return Normalizer{}.run(f); }

namespace {

void print(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case Kind::Top:
        case Kind::Bot: out += kind_name(f.kind()); return;
        case Kind::Neg:
            out += "not ";
            print(f.args()[0], out);
            return;
        default: break;
    }
    out += kind_name(f.kind());
    out += '(';
    for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i > 0) out += ", ";
        print(f.args()[i], out);
    }
    out += ')';
}

}  // namespace

std::string to_string(const Formula& f, std::uint64_t max_tree_size) {
    const std::uint64_t size = f.tree_size();
    if (size > max_tree_size) {
        throw RankTooLarge("formula has " + (size == UINT64_MAX ? std::string("over 2^64") : std::to_string(size)) +
                           " nodes once unshared; limit is " + std::to_string(max_tree_size));
    }
    std::string out;
    print(f, out);
    return out;
}

namespace {

// Satisfaction over the canonical picture of a set. Each node of the picture
// stands for one set, so memoizing on (node, subformula) is exact.
class Evaluator {
public:
    explicit Evaluator(const System& pic) : pic_(pic) {}

    bool eval(NodeId x, const Formula& f) {
        const Key key{f.identity(), x.value};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const bool v = compute(x, f);
        memo_.emplace(key, v);
        return v;
    }

private:
    using Key = std::pair<const void*, std::uint32_t>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return std::hash<const void*>{}(k.first) * 31u + k.second;
        }
    };

    bool compute(NodeId x, const Formula& f) {
        const auto& args = f.args();
        const auto ch = pic_.children(x);
        switch (f.kind()) {
            case Kind::Top: return true;
            case Kind::Bot: return false;
            case Kind::Neg: return !eval(x, args[0]);
            case Kind::And:
                return std::all_of(args.begin(), args.end(), [&](const Formula& g) { return eval(x, g); });
            case Kind::Or:
                return std::any_of(args.begin(), args.end(), [&](const Formula& g) { return eval(x, g); });
            case Kind::Dia:
                return std::any_of(ch.begin(), ch.end(), [&](NodeId y) { return eval(y, args[0]); });
            case Kind::Box:
                return std::all_of(ch.begin(), ch.end(), [&](NodeId y) { return eval(y, args[0]); });
            case Kind::Delta: {
                // Every listed formula has a witness member and every member
                // satisfies some listed formula.
                const bool covered = std::all_of(args.begin(), args.end(), [&](const Formula& g) {
                    return std::any_of(ch.begin(), ch.end(), [&](NodeId y) { return eval(y, g); });
                });
                return covered && std::all_of(ch.begin(), ch.end(), [&](NodeId y) {
                           return std::any_of(args.begin(), args.end(), [&](const Formula& g) { return eval(y, g); });
                       });
            }
        }
        return false;
    }

    const System& pic_;
    std::unordered_map<Key, bool, KeyHash> memo_;
};

// Builds characteristic formulas with structurally equal subformulas shared.
class CharBuilder {
public:
    CharBuilder(const System& pic, std::size_t budget) : pic_(pic), budget_(budget) {}

    Formula build(std::uint32_t rank) {
        const std::size_t n = pic_.size();
        std::vector<Formula> layer(n, intern(Kind::Top, {}));
        for (std::uint32_t k = 0; k < rank; ++k) {
            std::vector<Formula> next;
            next.reserve(n);
            for (std::uint32_t x = 0; x < n; ++x) {
                std::vector<Formula> parts;
                std::unordered_set<const void*> seen;
                for (NodeId y : pic_.children(NodeId{x})) {
                    if (seen.insert(layer[y.value].identity()).second) parts.push_back(layer[y.value]);
                }
                next.push_back(intern(Kind::Delta, std::move(parts)));
            }
            layer = std::move(next);
        }
        return layer[pic_.root().value];
    }

private:
    Formula intern(Kind kind, std::vector<Formula> args) {
        std::vector<const void*> key{reinterpret_cast<const void*>(static_cast<std::uintptr_t>(kind))};
        for (const auto& a : args) key.push_back(a.identity());
        if (auto it = table_.find(key); it != table_.end()) return it->second;
        if (table_.size() >= budget_) {
            throw RankTooLarge("characteristic formula exceeds the budget of " + std::to_string(budget_) + " nodes");
        }
        Formula f = kind == Kind::Top ? Formula::top() : Formula::delta(std::move(args));
        table_.emplace(std::move(key), f);
        return f;
    }

    const System& pic_;
    std::size_t budget_;
    std::map<std::vector<const void*>, Formula> table_;
};

}  // namespace

bool satisfies(HyperSet a, const Formula& f) {
    const System& pic = a.picture();
    return Evaluator(pic).eval(pic.root(), f);
}

Formula char_formula(HyperSet a, std::uint32_t rank, std::size_t budget) {
    return CharBuilder(a.picture(), budget).build(rank);
}

bool modally_equivalent(HyperSet a, HyperSet b, std::uint32_t rank, std::size_t budget) {
    return satisfies(b, char_formula(a, rank, budget)) && satisfies(a, char_formula(b, rank, budget));
}

}  // namespace hyperset::modal
