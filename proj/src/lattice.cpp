#include "forestlat/lattice.hpp"

#include <algorithm>
#include <bit>

#include "forestlat/enumerate.hpp"

namespace forestlat {

namespace {

// Meet vertices of all cross pairs between two disjoint leaf sets.
VertexMask cross_meets(const Tree& t, LeafMask a, LeafMask b) {
    VertexMask out = 0;
    for (LeafMask am = a; am;) {
        int i = std::countr_zero(am);
        am &= am - 1;
        for (LeafMask bm = b; bm;) {
            int j = std::countr_zero(bm);
            bm &= bm - 1;
            out |= VertexMask{1} << t.meet_vertex(i, j);
        }
    }
    return out;
}

// Row-major bitset over element indices.
class Bitset {
public:
    explicit Bitset(int n) : words_((n + 63) / 64, 0) {}
    void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void or_with(const Bitset& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    }
    bool subset_of(const Bitset& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~o.words_[w]) return false;
        return true;
    }
    // lowest / highest common element with o, or -1
    int first_common(const Bitset& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t x = words_[w] & o.words_[w];
            if (x) return static_cast<int>(w * 64) + std::countr_zero(x);
        }
        return -1;
    }
    int last_common(const Bitset& o) const {
        for (std::size_t w = words_.size(); w-- > 0;) {
            std::uint64_t x = words_[w] & o.words_[w];
            if (x) return static_cast<int>(w * 64) + 63 - std::countl_zero(x);
        }
        return -1;
    }

    std::vector<std::uint64_t> words_;
};

}  // namespace

LatticeModel LatticeModel::enumerate(const Tree& tree, int max_leaves) {
    if (tree.leaf_count() > max_leaves)
        throw bound_error("tree has " + std::to_string(tree.leaf_count()) +
                          " leaves, enumeration bound is " + std::to_string(max_leaves));

    LatticeModel model(tree);
    for_each_set_partition(tree.leaf_count(), [&](const Partition& p) {
        if (is_admissible(tree, p)) model.elements_.push_back(p);
    });
    // Rank-major; the scan already yields RGS order, kept within each rank.
    std::stable_sort(model.elements_.begin(), model.elements_.end(),
                     [](const Partition& a, const Partition& b) { return a.rank() < b.rank(); });

    const int n = model.size();
    model.ranks_.resize(n);
    model.vset_.resize(n);
    model.up_.assign(n, {});
    model.down_.assign(n, {});
    model.index_.reserve(n);
    for (int i = 0; i < n; ++i) {
        model.ranks_[i] = model.elements_[i].rank();
        model.vset_[i] = vertex_mask(tree, model.elements_[i]);
        model.index_.emplace(model.elements_[i], i);
    }

    // Covers: admissible merges of two blocks. Gradedness makes every
    // admissible one-block-fewer coarsening a cover and vice versa.
    for (int i = 0; i < n; ++i) {
        const auto& blocks = model.elements_[i].blocks();
        const int k = static_cast<int>(blocks.size());
        std::vector<VertexMask> smask(k);
        for (int b = 0; b < k; ++b) smask[b] = tree.s_set_mask(blocks[b]);
        VertexMask all = model.vset_[i];
        for (int a = 0; a < k; ++a) {
            for (int b = a + 1; b < k; ++b) {
                VertexMask merged_s =
                    smask[a] | smask[b] | cross_meets(tree, blocks[a], blocks[b]);
                // Disjointness against the untouched blocks.
                if ((merged_s & (all & ~smask[a] & ~smask[b])) != 0) continue;
                std::vector<LeafMask> nb;
                nb.reserve(k - 1);
                nb.push_back(blocks[a] | blocks[b]);
                for (int c = 0; c < k; ++c)
                    if (c != a && c != b) nb.push_back(blocks[c]);
                auto it = model.index_.find(Partition::from_blocks(std::move(nb)));
                if (it == model.index_.end())
                    throw std::logic_error("cover target missing from enumeration");
                model.up_[i].push_back(it->second);
                model.down_[it->second].push_back(i);
            }
        }
    }
    for (auto& v : model.up_) std::sort(v.begin(), v.end());
    for (auto& v : model.down_) std::sort(v.begin(), v.end());
    return model;
}

int LatticeModel::index_of(const Partition& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
}

int LatticeModel::meet(int a, int b) const {
    int i = index_of(meet_adm(tree_, elements_[a], elements_[b]));
    if (i < 0) throw std::logic_error("meet fell outside the lattice");
    return i;
}

int LatticeModel::join(int a, int b) const {
    int i = index_of(join_adm(tree_, elements_[a], elements_[b]));
    if (i < 0) throw std::logic_error("join fell outside the lattice");
    return i;
}

std::vector<int> LatticeModel::atoms() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (ranks_[i] == 1) out.push_back(i);
    return out;
}

std::vector<long long> LatticeModel::mobius_from_bottom() const {
    const int n = size();
    std::vector<long long> mu(n, 0);
    std::vector<int> stamp(n, -1), stack;
    mu[0] = 1;
    for (int y = 1; y < n; ++y) {
        // Walk the down-set of y; indices there are all < y (rank-major).
        long long sum = 0;
        stack.push_back(y);
        stamp[y] = y;
        while (!stack.empty()) {
            int z = stack.back();
            stack.pop_back();
            if (z != y) sum += mu[z];
            for (int w : down_[z]) {
                if (stamp[w] == y) continue;
                stamp[w] = y;
                stack.push_back(w);
            }
        }
        mu[y] = -sum;
    }
    return mu;
}

long long LatticeModel::mobius(int x, int y) const {
    if (!leq(x, y)) throw std::invalid_argument("mobius requires x <= y");
    // Elements of [x, y] in index order are already rank-sorted.
    std::vector<int> interval;
    for (int z = x; z <= y; ++z)
        if (leq(x, z) && leq(z, y)) interval.push_back(z);
    std::vector<long long> mu(interval.size(), 0);
    mu[0] = 1;
    for (std::size_t i = 1; i < interval.size(); ++i) {
        long long sum = 0;
        for (std::size_t j = 0; j < i; ++j)
            if (leq(interval[j], interval[i])) sum += mu[j];
        mu[i] = -sum;
    }
    return mu.back();
}

bool verify_lattice(const LatticeModel& lattice) {
    const int n = lattice.size();
    // Memory guard: the pairwise scan needs two n x n bit matrices.
    if (n > 20000) throw bound_error("lattice too large for exhaustive verification");

    // Reachability through covers, upward and downward.
    std::vector<Bitset> up(n, Bitset(n)), down(n, Bitset(n));
    for (int i = n - 1; i >= 0; --i) {
        up[i].set(i);
        for (int j : lattice.up_covers(i)) up[i].or_with(up[j]);
    }
    for (int i = 0; i < n; ++i) {
        down[i].set(i);
        for (int j : lattice.down_covers(i)) down[i].or_with(down[j]);
    }
    // Cover closure must agree with refinement.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (up[i].get(j) != lattice.leq(i, j)) return false;

    Bitset common(n);
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            // Common upper bounds; index order is rank-major, so the lowest
            // index is rank-minimal. It is the unique minimal bound iff it
            // sits below all the others.
            for (std::size_t w = 0; w < common.words_.size(); ++w)
                common.words_[w] = up[a].words_[w] & up[b].words_[w];
            int j = common.first_common(common);
            if (j < 0) return false;
            if (!common.subset_of(up[j])) return false;
            if (j != lattice.join(a, b)) return false;

            for (std::size_t w = 0; w < common.words_.size(); ++w)
                common.words_[w] = down[a].words_[w] & down[b].words_[w];
            int m = common.last_common(common);
            if (m < 0) return false;
            if (!common.subset_of(down[m])) return false;
            if (m != lattice.meet(a, b)) return false;
        }
    }
    return true;
}

SemimodularResult check_semimodular(const LatticeModel& lattice) {
    const int n = lattice.size();
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (lattice.leq(x, y) || lattice.leq(y, x)) continue;
            int m = lattice.meet(x, y);
            if (lattice.rank_of(x) != lattice.rank_of(m) + 1 ||
                lattice.rank_of(y) != lattice.rank_of(m) + 1)
                continue;
            int j = lattice.join(x, y);
            if (lattice.rank_of(j) != lattice.rank_of(m) + 2) return {false, x, y};
        }
    }
    return {};
}

}  // namespace forestlat
