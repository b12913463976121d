#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hyperset/errors.hpp"
#include "hyperset/hyperset.hpp"

namespace hyperset::modal {

enum class Kind : std::uint8_t {
    // core
    Neg,
    And,
    Dia,
    // derived
    Or,
    Box,
    Delta,
    Top,
    Bot,
};

const char* kind_name(Kind k);

// Immutable modal sentence. Subformulas are shared, so a formula is a DAG;
// copying a Formula copies a pointer.
class Formula {
public:
    static Formula top();
    static Formula bot();
    static Formula neg(Formula f);
    static Formula conj(std::vector<Formula> fs);
    static Formula disj(std::vector<Formula> fs);
    static Formula dia(Formula f);
    static Formula box(Formula f);
    static Formula delta(std::vector<Formula> fs);

    Kind kind() const noexcept { return node_->kind; }
    const std::vector<Formula>& args() const noexcept { return node_->args; }
    // Where the parser found this node; zero for built formulas.
    const SourcePos& pos() const noexcept { return node_->pos; }

    bool is_core() const noexcept { return kind() == Kind::Neg || kind() == Kind::And || kind() == Kind::Dia; }

    // Number of distinct nodes in the DAG.
    std::size_t dag_size() const;
    // Number of nodes once fully unshared, saturating at UINT64_MAX.
    std::uint64_t tree_size() const;

    const void* identity() const noexcept { return node_.get(); }

    Formula with_pos(SourcePos pos) const;

private:
    struct Node {
        Kind kind;
        std::vector<Formula> args;
        SourcePos pos;
    };

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula make(Kind kind, std::vector<Formula> args);

    std::shared_ptr<const Node> node_;
};

// Same constructors and arguments all the way down.
bool same_structure(const Formula& f, const Formula& g);

// Rewrites every derived operator into Neg/And/Dia:
//   top      -> and()
//   bot      -> not and()
//   or(F..)  -> not and(not F, ..)
//   box(F)   -> not dia(not F)
//   delta(F..) -> and(and(dia F, ..), box(or(F, ..)))   (then expanded)
// Sharing is preserved.
Formula normalize(const Formula& f);

// Grammar: top | bot | not F | and(F, ...) | or(F, ...) | dia(F) | box(F)
//        | delta(F, ...). Whitespace is insignificant. Throws SyntaxError.
Formula parse_formula(std::string_view text);

// Text in the parser's grammar. Throws RankTooLarge when the unshared tree
// exceeds max_tree_size nodes.
std::string to_string(const Formula& f, std::uint64_t max_tree_size = 1'000'000);

// a |= f. Derived operators are evaluated by their own clauses, not through
// normalize. Memoized per (picture node, subformula).
bool satisfies(HyperSet a, const Formula& f);

inline constexpr std::size_t kDefaultBudget = 1'000'000;

// phi^0_a = top, phi^{k+1}_a = delta{ phi^k_b : b in a }. Structurally equal
// subformulas are shared; throws RankTooLarge when the DAG would exceed
// `budget` distinct nodes.
Formula char_formula(HyperSet a, std::uint32_t rank, std::size_t budget = kDefaultBudget);

bool modally_equivalent(HyperSet a, HyperSet b, std::uint32_t rank, std::size_t budget = kDefaultBudget);

}  // namespace hyperset::modal
