#include "doctest.h"
#include "hyperset/bisim.hpp"
#include "hyperset/equations.hpp"
#include "hyperset/errors.hpp"
#include "hyperset/generate.hpp"
#include "oracles.hpp"

using namespace hyperset;

namespace {

const System kLoop = parse_system("a = {a}; root a");
const System kTwoCycle = parse_system("a = {b}; b = {a}; root a");
const System kEmpty = parse_system("e = {}; root e");
const System kChain = parse_system("a = {b}; b = {}; root a");
const System kEscher = parse_system("s0={s3} s1={s0} s2={s1} s3={s2} root s3");
const System kCitations = parse_system("a3={a2} a2={a1} a1={a3} root a3");
const System kVn2 = parse_system("n2 = {n1, n0}; n1 = {n0}; n0 = {}; root n2");
const System kVn3 = parse_system("n3 = {n2, n1, n0}; n2 = {n1, n0}; n1 = {n0}; n0 = {}; root n3");

bool root_pair_same(const Partition& p, const System& s, const System& t) {
    return p.same_block(s.root().value, static_cast<std::uint32_t>(s.size()) + t.root().value);
}

}  // namespace

TEST_CASE("naive_bisim examples") {
    SUBCASE("self-loop against 2-cycle: one block") {
        const Partition p = naive_bisim(kLoop, kTwoCycle);
        CHECK(p.size() == 3);
        CHECK(p.block_count() == 1);
    }
    SUBCASE("empty set against self-loop: two singletons") {
        const Partition p = naive_bisim(kEmpty, kLoop);
        CHECK(p.block_count() == 2);
        CHECK_FALSE(p.same_block(0, 1));
    }
    SUBCASE("chain against itself pairs a with a' and b with b'") {
        const Partition p = naive_bisim(kChain, kChain);
        CHECK(p.block_count() == 2);
        CHECK(p.same_block(0, 2));
        CHECK(p.same_block(1, 3));
        CHECK_FALSE(p.same_block(0, 1));
    }
}

TEST_CASE("refine_partition examples") {
    CHECK(refine_partition(kEscher).block_count() == 1);
    const Partition vn2 = refine_partition(kVn2);
    CHECK(vn2.block_count() == 3);
    const Partition vn3 = refine_partition(kVn3);
    CHECK(vn3.block_count() == 4);
    CHECK(refine_partition(kEmpty).block_count() == 1);
    // Agrees with the oracle on the same inputs.
    for (const System* s : {&kEscher, &kVn2, &kVn3, &kCitations, &kChain, &kLoop}) {
        CHECK(refine_union(*s, *s) == naive_bisim(*s, *s));
    }
}

TEST_CASE("bisimilar examples") {
    CHECK(bisimilar(kLoop, kTwoCycle));
    CHECK(root_pair_same(naive_bisim(kLoop, kTwoCycle), kLoop, kTwoCycle));
    CHECK(bisimilar(kEscher, kLoop));
    CHECK(root_pair_same(naive_bisim(kEscher, kLoop), kEscher, kLoop));
    CHECK_FALSE(bisimilar(kLoop, kChain));
    CHECK_FALSE(bisimilar(kEmpty, kLoop));
}

TEST_CASE("quotient examples") {
    const System q1 = quotient(kEscher);
    CHECK(q1.size() == 1);
    CHECK(q1.edge_count() == 1);
    const System q2 = quotient(kCitations);
    CHECK(q2.size() == 1);
    CHECK(q2.edge_count() == 1);
    const System q3 = quotient(kVn3);
    CHECK(q3 == kVn3);
}

TEST_CASE("canonicalize examples") {
    const System omega = canonicalize(kLoop);
    CHECK(omega.size() == 1);
    CHECK(omega.edge_count() == 1);
    CHECK(canonicalize(kTwoCycle) == omega);
    CHECK(canonicalize(kEscher) == omega);
    CHECK(canonicalize(kCitations) == omega);

    const System pq = parse_system("p = {q}; q = {}; root p");
    CHECK(canonicalize(kChain) == canonicalize(pq));
    CHECK(export_dot(canonicalize(kChain)) == export_dot(canonicalize(pq)));
    CHECK(canonicalize(canonicalize(kVn3)) == canonicalize(kVn3));
}

TEST_CASE("canonical_numbering rejects non-minimal input") {
    CHECK_THROWS_AS(canonical_numbering(kTwoCycle), std::logic_error);
}

TEST_CASE("Partition helpers") {
    const Partition p({2, 2, 0, 1}, 3);
    const Partition q({0, 0, 1, 2}, 3);
    CHECK(p == q);
    CHECK(p.normalized().block_of(2) == 1);
    const auto blocks = p.blocks();
    CHECK(blocks[2] == std::vector<std::uint32_t>{0, 1});
    CHECK_FALSE(p == Partition({0, 1, 1, 2}, 3));
}

TEST_CASE("property: refinement matches the oracle partition") {
    const auto pool = oracle::system_pool(300, 12, 2024);
    for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
        const System& s = pool[i];
        const System& t = pool[i + 1];
        const Partition fast = refine_union(s, t);
        const Partition slow = naive_bisim(s, t);
        CHECK(fast == slow);
        CHECK(bisimilar(s, t) == root_pair_same(slow, s, t));
    }
}

TEST_CASE("property: refinement result is stable and coarsest") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const System s = random_system({40, 1.0 + static_cast<double>(seed % 5) * 0.4, seed % 2 == 0, seed});
        const Partition p = refine_partition(s);
        // Stable: nodes in one block see the same set of child blocks.
        for (const auto& block : p.blocks()) {
            auto sig = [&](std::uint32_t x) {
                std::vector<std::uint32_t> v;
                for (NodeId y : s.children(NodeId{x})) v.push_back(p.block_of(y.value));
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
                return v;
            };
            for (std::uint32_t x : block) CHECK(sig(x) == sig(block.front()));
        }
        const Partition oracle_p = naive_bisim(s, s);
        // Restrict the oracle to the first copy.
        std::vector<std::uint32_t> first(oracle_p.size() / 2);
        for (std::uint32_t x = 0; x < first.size(); ++x) first[x] = oracle_p.block_of(x);
        CHECK(p == Partition(first, oracle_p.block_count()));
    }
}

TEST_CASE("property: quotient is minimal and canonicalize decides bisimilarity") {
    const auto pool = oracle::system_pool(120, 9, 7);
    for (const auto& s : pool) {
        const System q = quotient(s);
        CHECK(refine_partition(q).block_count() == q.size());
        CHECK(bisimilar(s, q));
        CHECK(canonicalize(canonicalize(s)) == canonicalize(s));
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i; j < pool.size(); j += 7) {
            CHECK(bisimilar(pool[i], pool[j]) == (canonicalize(pool[i]) == canonicalize(pool[j])));
        }
    }
}

TEST_CASE("property: bisimilarity is an equivalence on a fixed family") {
    auto family = oracle::system_pool(40, 4, 11);
    family.push_back(kLoop);
    family.push_back(kTwoCycle);
    family.push_back(kEscher);
    family.push_back(kEmpty);
    const std::size_t n = family.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rel[i][j] = bisimilar(family[i], family[j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(rel[i][i]);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(rel[i][j] == rel[j][i]);
            for (std::size_t k = 0; k < n; ++k) {
                if (rel[i][j] && rel[j][k]) CHECK(rel[i][k]);
            }
        }
    }
}

TEST_CASE("SystemMap") {
    SUBCASE("quotient map is valid and root images stay bisimilar") {
        for (const auto& s : oracle::system_pool(60, 8, 3)) {
            const SystemMap pi = quotient_map(s);
            for (std::uint32_t x = 0; x < s.size(); ++x) {
                CHECK(bisimilar(s.rooted_at(NodeId{x}), pi.target().rooted_at(pi(NodeId{x}))));
            }
        }
    }
    SUBCASE("2-cycle onto self-loop") {
        const SystemMap m = SystemMap::make(kTwoCycle, kLoop, {NodeId{0}, NodeId{0}});
        CHECK(m(NodeId{1}) == NodeId{0});
    }
    SUBCASE("invalid maps are rejected") {
        CHECK_THROWS_AS(SystemMap::make(kChain, kLoop, {NodeId{0}, NodeId{0}}), InvalidSystemMap);
        CHECK_THROWS_AS(SystemMap::make(kChain, kChain, {NodeId{0}}), InvalidSystemMap);
        CHECK_THROWS_AS(SystemMap::make(kChain, kChain, {NodeId{0}, NodeId{9}}), InvalidSystemMap);
    }
}
