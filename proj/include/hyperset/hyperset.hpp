#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperset/system.hpp"

namespace hyperset {

namespace detail {
struct InternedSet;
}

// A set in the AFA universe, held as its canonical picture.
//
// Canonical pictures are interned in a process-wide table, so two HyperSets
// are equal exactly when they share an entry. The table is guarded by a
// mutex and entries are never released. Default construction gives the
// empty set.
class HyperSet {
public:
    HyperSet();

    const System& picture() const noexcept;

    // Position in the interning table; stable for the process lifetime.
    std::uint64_t id() const noexcept;

    friend bool operator==(HyperSet a, HyperSet b) noexcept { return a.entry_ == b.entry_; }

    // Total order on canonical pictures, independent of interning order.
    friend bool operator<(HyperSet a, HyperSet b) noexcept;

private:
    explicit HyperSet(const detail::InternedSet* entry) : entry_(entry) {}
    const detail::InternedSet* entry_;

    friend HyperSet intern_canonical(System canonical);
};

// Interns a picture that is already canonical (canonicalize/canonical_numbering output).
HyperSet intern_canonical(System canonical);

// The set s depicts.
HyperSet decorate(const System& s);

// Bottom-up evaluation of an acyclic picture through hash-consed member
// lists, without bisimulation. Throws CyclicInput otherwise.
HyperSet mostowski_collapse(const System& s);

bool equals(HyperSet a, HyperSet b);

// Members in canonical node order of a's picture, pairwise distinct.
std::vector<HyperSet> members(HyperSet a);
bool is_member(HyperSet a, HyperSet b);
bool is_wellfounded(HyperSet a);

// Rank-k unfolding: a^0 = {} and a^{k+1} = { b^k : b in a }.
HyperSet unfold(HyperSet a, std::uint32_t rank);

HyperSet empty();
HyperSet omega();
HyperSet singleton(HyperSet a);
HyperSet pair(HyperSet a, HyperSet b);
// b with a added.
HyperSet insert(HyperSet a, HyperSet b);
HyperSet set_union(HyperSet a, HyperSet b);
HyperSet von_neumann(std::uint32_t n);
HyperSet from_members(std::span<const HyperSet> elements);

// Variables of an equation system with their solutions, in declaration order.
class EquationSolution {
public:
    using Entry = std::pair<std::string, HyperSet>;

    explicit EquationSolution(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    // Throws UnknownVariable.
    HyperSet at(std::string_view name) const;
    bool contains(std::string_view name) const;

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<Entry> entries_;
};

// Solves every variable of the equation text. A root directive, if present,
// is ignored.
EquationSolution solve_equations(std::string_view text);

// Human-readable form. Wellfounded sets print as nested braces with "∅" for
// the empty set, Ω prints as "Ω", and other non-wellfounded sets print their
// canonical equations inside angle brackets.
std::string to_string(HyperSet a);

}  // namespace hyperset

template <>
struct std::hash<hyperset::HyperSet> {
    std::size_t operator()(hyperset::HyperSet a) const noexcept { return std::hash<std::uint64_t>{}(a.id()); }
};
