#include "hyperset/bisim.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hyperset/errors.hpp"

namespace hyperset {

Partition::Partition(std::vector<std::uint32_t> block_of, std::uint32_t block_count)
    : block_of_(std::move(block_of)), block_count_(block_count) {}

std::vector<std::vector<std::uint32_t>> Partition::blocks() const {
    std::vector<std::vector<std::uint32_t>> out(block_count_);
    for (std::uint32_t i = 0; i < block_of_.size(); ++i) out[block_of_[i]].push_back(i);
    return out;
}

Partition Partition::normalized() const {
    std::vector<std::uint32_t> renum(block_count_, UINT32_MAX);
    std::vector<std::uint32_t> out(block_of_.size());
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < block_of_.size(); ++i) {
        auto& r = renum[block_of_[i]];
        if (r == UINT32_MAX) r = next++;
        out[i] = r;
    }
    return {std::move(out), next};
}

Partition naive_bisim(const System& s, const System& t) {
    const Digraph g = Digraph::disjoint_union(s, t);
    const std::size_t n = g.size();
    std::vector<std::uint32_t> block(n, 0);
    std::uint32_t count = n == 0 ? 0 : 1;
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
        std::vector<std::uint32_t> next(n);
        for (std::uint32_t x = 0; x < n; ++x) {
            std::vector<std::uint32_t> sig;
            for (std::uint32_t y : g.children(x)) sig.push_back(block[y]);
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            sig.insert(sig.begin(), block[x]);
            next[x] = ids.emplace(std::move(sig), static_cast<std::uint32_t>(ids.size())).first->second;
        }
        const auto fresh = static_cast<std::uint32_t>(ids.size());
        block = std::move(next);
        if (fresh == count) break;
        count = fresh;
    }
    return {std::move(block), count};
}

namespace {

// Paige-Tarjan relational coarsest partition.
//
// Q is the current partition, kept in a refinable array layout: the members
// of block b occupy elems[first[b], end[b]) and the marked ones sit in front
// of mid[b]. X is a coarser partition whose blocks ("compound" when they hold
// two or more Q-blocks) group Q-blocks; Q stays stable with respect to every
// X-block. Each edge x->y refers to a counter holding |E(x) ∩ S| for the
// X-block S containing y.
class PaigeTarjan {
public:
    explicit PaigeTarjan(const Digraph& g) : g_(g), n_(static_cast<std::uint32_t>(g.size())) {}

    Partition run() {
        if (n_ == 0) return {};
        init();
        while (!compound_.empty()) step();
        return {std::move(blk_), static_cast<std::uint32_t>(first_.size())};
    }

private:
    static constexpr std::uint32_t kNone = UINT32_MAX;

    void init() {
        const std::size_t m = g_.targets.size();
        src_.resize(m);
        for (std::uint32_t x = 0; x < n_; ++x) {
            for (std::uint32_t e = g_.offsets[x]; e < g_.offsets[x + 1]; ++e) src_[e] = x;
        }
        in_off_.assign(n_ + 1, 0);
        for (std::uint32_t y : g_.targets) ++in_off_[y + 1];
        for (std::uint32_t y = 0; y < n_; ++y) in_off_[y + 1] += in_off_[y];
        in_edges_.resize(m);
        {
            std::vector<std::uint32_t> fill(in_off_.begin(), in_off_.end() - 1);
            for (std::uint32_t e = 0; e < m; ++e) in_edges_[fill[g_.targets[e]]++] = e;
        }

        elems_.resize(n_);
        std::iota(elems_.begin(), elems_.end(), 0u);
        loc_ = elems_;
        blk_.assign(n_, 0);
        first_ = {0};
        end_ = {n_};
        mid_ = {0};
        xblk_ = {0};
        qnext_ = {kNone};
        qprev_ = {kNone};
        xhead_ = {0};
        xcount_ = {1};
        in_c_ = {false};

        edge_cnt_.resize(m);
        for (std::uint32_t x = 0; x < n_; ++x) {
            const std::uint32_t deg = g_.offsets[x + 1] - g_.offsets[x];
            if (deg == 0) continue;
            const auto r = static_cast<std::uint32_t>(pool_.size());
            pool_.push_back(deg);
            for (std::uint32_t e = g_.offsets[x]; e < g_.offsets[x + 1]; ++e) edge_cnt_[e] = r;
            mark(x);
        }
        split_marked();
        tmp_cnt_.assign(n_, kNone);
        witness_.assign(n_, kNone);
    }

    void step() {
        const std::uint32_t s = compound_.back();
        const std::uint32_t b1 = xhead_[s];
        const std::uint32_t b2 = qnext_[b1];
        const std::uint32_t b = size_of(b1) <= size_of(b2) ? b1 : b2;

        unlink(b);
        if (xcount_[s] < 2) {
            compound_.pop_back();
            in_c_[s] = false;
        }
        const auto sb = static_cast<std::uint32_t>(xhead_.size());
        xhead_.push_back(b);
        xcount_.push_back(1);
        in_c_.push_back(false);
        xblk_[b] = sb;
        qnext_[b] = qprev_[b] = kNone;

        splitter_.assign(elems_.begin() + first_[b], elems_.begin() + end_[b]);

        // Predecessors of B with their edge counts into B.
        preds_.clear();
        for (std::uint32_t y : splitter_) {
            for (std::uint32_t k = in_off_[y]; k < in_off_[y + 1]; ++k) {
                const std::uint32_t e = in_edges_[k];
                const std::uint32_t x = src_[e];
                if (tmp_cnt_[x] == kNone) {
                    tmp_cnt_[x] = static_cast<std::uint32_t>(pool_.size());
                    pool_.push_back(0);
                    witness_[x] = e;
                    preds_.push_back(x);
                }
                ++pool_[tmp_cnt_[x]];
            }
        }

        // Split with respect to B.
        for (std::uint32_t x : preds_) mark(x);
        split_marked();

        // Split with respect to S - B: predecessors of B with no edge into S - B.
        for (std::uint32_t x : preds_) {
            if (pool_[tmp_cnt_[x]] == pool_[edge_cnt_[witness_[x]]]) mark(x);
        }
        split_marked();

        // Edges into B now count against B.
        for (std::uint32_t y : splitter_) {
            for (std::uint32_t k = in_off_[y]; k < in_off_[y + 1]; ++k) {
                const std::uint32_t e = in_edges_[k];
                --pool_[edge_cnt_[e]];
                edge_cnt_[e] = tmp_cnt_[src_[e]];
            }
        }
        for (std::uint32_t x : preds_) tmp_cnt_[x] = kNone;
    }

    std::uint32_t size_of(std::uint32_t b) const { return end_[b] - first_[b]; }

    void mark(std::uint32_t x) {
        const std::uint32_t b = blk_[x];
        if (mid_[b] == first_[b]) touched_.push_back(b);
        const std::uint32_t i = loc_[x];
        const std::uint32_t j = mid_[b]++;
        std::swap(elems_[i], elems_[j]);
        loc_[elems_[i]] = i;
        loc_[elems_[j]] = j;
    }

    // Every touched block with a proper marked part gives that part to a new block.
    void split_marked() {
        for (std::uint32_t b : touched_) {
            if (mid_[b] == end_[b]) {
                mid_[b] = first_[b];
                continue;
            }
            const auto nb = static_cast<std::uint32_t>(first_.size());
            first_.push_back(first_[b]);
            end_.push_back(mid_[b]);
            mid_.push_back(first_[b]);
            first_[b] = mid_[b];
            for (std::uint32_t i = first_[nb]; i < end_[nb]; ++i) blk_[elems_[i]] = nb;

            const std::uint32_t s = xblk_[b];
            xblk_.push_back(s);
            qprev_.push_back(kNone);
            qnext_.push_back(xhead_[s]);
            qprev_[xhead_[s]] = nb;
            xhead_[s] = nb;
            if (++xcount_[s] == 2 && !in_c_[s]) {
                in_c_[s] = true;
                compound_.push_back(s);
            }
        }
        touched_.clear();
    }

    void unlink(std::uint32_t b) {
        const std::uint32_t s = xblk_[b];
        if (qprev_[b] != kNone) {
            qnext_[qprev_[b]] = qnext_[b];
        } else {
            xhead_[s] = qnext_[b];
        }
        if (qnext_[b] != kNone) qprev_[qnext_[b]] = qprev_[b];
        --xcount_[s];
    }

    const Digraph& g_;
    std::uint32_t n_;

    std::vector<std::uint32_t> src_, in_off_, in_edges_;

    std::vector<std::uint32_t> elems_, loc_, blk_;
    std::vector<std::uint32_t> first_, end_, mid_;
    std::vector<std::uint32_t> touched_;

    std::vector<std::uint32_t> xblk_, qnext_, qprev_;
    std::vector<std::uint32_t> xhead_, xcount_;
    std::vector<bool> in_c_;
    std::vector<std::uint32_t> compound_;

    std::vector<std::uint32_t> pool_, edge_cnt_, tmp_cnt_, witness_;
    std::vector<std::uint32_t> splitter_, preds_;
};

struct Quotient {
    System system;
    std::vector<NodeId> assignment;
};

Quotient build_quotient(const System& s) {
    const Partition p = refine_partition(s);
    std::vector<std::uint32_t> num(p.block_count(), UINT32_MAX);
    std::vector<std::string> labels;
    std::uint32_t next = 0;
    std::vector<NodeId> assignment(s.size());
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        auto& r = num[p.block_of(x)];
        if (r == UINT32_MAX) {
            r = next++;
            labels.push_back(s.label(NodeId{x}));
        }
        assignment[x] = NodeId{r};
    }
    std::vector<Edge> edges;
    edges.reserve(s.edge_count());
    for (const auto& [a, b] : s.edges()) edges.emplace_back(assignment[a.value], assignment[b.value]);
    return {System::from_edges(next, edges, assignment[s.root().value], std::move(labels)), std::move(assignment)};
}

}  // namespace

Partition refine_partition(const Digraph& g) { return PaigeTarjan(g).run(); }

Partition refine_partition(const System& s) { return refine_partition(Digraph::of(s)); }

Partition refine_union(const System& s, const System& t) {
    return refine_partition(Digraph::disjoint_union(s, t));
}

bool bisimilar(const System& s, const System& t) {
    const Partition p = refine_union(s, t);
    return p.same_block(s.root().value, static_cast<std::uint32_t>(s.size()) + t.root().value);
}

System quotient(const System& s) { return build_quotient(s).system; }

System canonical_numbering(const System& minimal) {
    // Colour refinement where each round ranks the signatures
    // (own colour, sorted child colours) lexicographically. The ranks depend
    // only on structure, so isomorphic inputs get identical numberings.
    const Digraph g = Digraph::of(minimal);
    const std::size_t n = g.size();
    std::vector<std::uint32_t> colour(n, 0);
    std::size_t count = 1;
    std::vector<std::vector<std::uint32_t>> sig(n);
    std::vector<std::uint32_t> order(n);
    for (;;) {
        for (std::uint32_t x = 0; x < n; ++x) {
            auto& v = sig[x];
            v.clear();
            v.push_back(colour[x]);
            for (std::uint32_t y : g.children(x)) v.push_back(colour[y]);
            std::sort(v.begin() + 1, v.end());
            v.erase(std::unique(v.begin() + 1, v.end()), v.end());
        }
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return sig[a] < sig[b]; });
        std::uint32_t rank = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
            colour[order[i]] = rank;
        }
        const std::size_t fresh = n == 0 ? 0 : rank + 1;
        if (fresh == count) break;
        count = fresh;
    }
    if (count != n) throw std::logic_error("canonical_numbering: input is not bisimulation-minimal");

    std::vector<Edge> edges;
    edges.reserve(g.targets.size());
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y : g.children(x)) edges.emplace_back(NodeId{colour[x]}, NodeId{colour[y]});
    }
    std::vector<std::string> labels(n);
    for (std::uint32_t i = 0; i < n; ++i) labels[i] = "c" + std::to_string(i);
    return System::from_edges(n, edges, NodeId{colour[minimal.root().value]}, std::move(labels));
}

System canonicalize(const System& s) { return canonical_numbering(quotient(s)); }

SystemMap SystemMap::make(System source, System target, std::vector<NodeId> assignment) {
    if (assignment.size() != source.size()) throw InvalidSystemMap("assignment size differs from source size");
    for (NodeId y : assignment) {
        if (y.value >= target.size()) throw InvalidSystemMap("assignment points outside target");
    }
    std::vector<NodeId> image;
    for (std::uint32_t x = 0; x < source.size(); ++x) {
        image.clear();
        for (NodeId y : source.children(NodeId{x})) image.push_back(assignment[y.value]);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        auto want = target.children(assignment[x]);
        if (!std::equal(image.begin(), image.end(), want.begin(), want.end())) {
            throw InvalidSystemMap("children of node " + std::to_string(x) +
                                   " do not map onto children of its image");
        }
    }
    return SystemMap(std::move(source), std::move(target), std::move(assignment));
}

SystemMap quotient_map(const System& s) {
    Quotient q = build_quotient(s);
    return SystemMap::make(s, std::move(q.system), std::move(q.assignment));
}

}  // namespace hyperset
