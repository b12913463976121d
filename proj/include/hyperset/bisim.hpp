#pragma once

#include <cstdint>
#include <vector>

#include "hyperset/system.hpp"

namespace hyperset {

// A partition of an index space 0..n-1 into blocks. For one system the
// indices are NodeId values; for a pair (s, t) the nodes of t follow those
// of s, offset by s.size().
class Partition {
public:
    Partition() = default;
    Partition(std::vector<std::uint32_t> block_of, std::uint32_t block_count);

    std::size_t size() const noexcept { return block_of_.size(); }
    std::uint32_t block_count() const noexcept { return block_count_; }
    std::uint32_t block_of(std::uint32_t index) const { return block_of_.at(index); }
    bool same_block(std::uint32_t a, std::uint32_t b) const { return block_of(a) == block_of(b); }

    // Blocks in increasing block id, members sorted.
    std::vector<std::vector<std::uint32_t>> blocks() const;

    // Block ids renumbered by first occurrence, so two partitions with the
    // same blocks compare equal.
    Partition normalized() const;

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.normalized().block_of_ == b.normalized().block_of_;
    }

private:
    std::vector<std::uint32_t> block_of_;
    std::uint32_t block_count_ = 0;
};

// Greatest bisimulation on the disjoint union of s and t by round-based
// splitting from the one-block partition. Quadratic-ish; meant as an oracle.
Partition naive_bisim(const System& s, const System& t);

// Coarsest stable partition of the nodes of s (Paige-Tarjan).
Partition refine_partition(const System& s);
Partition refine_partition(const Digraph& g);

// Coarsest stable partition of the disjoint union, same indexing as
// naive_bisim.
Partition refine_union(const System& s, const System& t);

// True iff the roots of s and t are bisimilar, i.e. depict the same set.
bool bisimilar(const System& s, const System& t);

// One node per bisimulation class, edges lifted blockwise. Nodes are
// ordered by the smallest original NodeId in their block; labels are taken
// from that node.
System quotient(const System& s);

// Quotient with nodes renumbered by a structure-only scheme and labelled
// c0..c{n-1}. Bisimilar systems give equal results.
System canonicalize(const System& s);

// Canonical numbering of a system that is already bisimulation-minimal.
// Throws std::logic_error if two nodes turn out to be bisimilar.
System canonical_numbering(const System& minimal);

// A map between systems sending children of x onto children of map(x).
class SystemMap {
public:
    // Throws InvalidSystemMap if the assignment has the wrong length, points
    // outside target, or breaks the children condition at some node.
    static SystemMap make(System source, System target, std::vector<NodeId> assignment);

    const System& source() const noexcept { return source_; }
    const System& target() const noexcept { return target_; }
    NodeId operator()(NodeId x) const { return assignment_.at(x.value); }

private:
    SystemMap(System source, System target, std::vector<NodeId> assignment)
        : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {}

    System source_;
    System target_;
    std::vector<NodeId> assignment_;
};

// The surjection from s onto quotient(s).
SystemMap quotient_map(const System& s);

}  // namespace hyperset
