#include "forestlat/partition.hpp"

#include <algorithm>
#include <bit>

namespace forestlat {

namespace {

int lowest(LeafMask m) { return std::countr_zero(m); }

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

void require_same_ground(const Partition& a, const Partition& b) {
    if (a.ground_mask() != b.ground_mask())
        throw std::invalid_argument("partitions have mismatched ground sets");
}

void require_partition_of(const Tree& t, const Partition& p) {
    if (p.ground_mask() != t.full_leaf_mask())
        throw std::invalid_argument("not a partition of the tree's leaves");
}

}  // namespace

// ---------------------------------------------------------------------------
// Partition

Partition Partition::from_blocks(std::vector<LeafMask> blocks) {
    LeafMask seen = 0;
    for (LeafMask b : blocks) {
        if (b == 0) throw std::invalid_argument("empty block");
        if (seen & b) throw std::invalid_argument("blocks are not disjoint");
        seen |= b;
    }
    std::sort(blocks.begin(), blocks.end(),
              [](LeafMask a, LeafMask b) { return lowest(a) < lowest(b); });
    Partition p;
    p.blocks_ = std::move(blocks);
    return p;
}

Partition Partition::singletons(int ground_size) {
    std::vector<LeafMask> blocks(ground_size);
    for (int i = 0; i < ground_size; ++i) blocks[i] = LeafMask{1} << i;
    Partition p;
    p.blocks_ = std::move(blocks);
    return p;
}

Partition Partition::one_block(int ground_size) {
    Partition p;
    p.blocks_ = {ground_size == 32 ? ~LeafMask{0} : (LeafMask{1} << ground_size) - 1};
    return p;
}

LeafMask Partition::ground_mask() const {
    LeafMask m = 0;
    for (LeafMask b : blocks_) m |= b;
    return m;
}

int Partition::ground_size() const { return std::popcount(ground_mask()); }

int Partition::block_index_of(int leaf) const {
    for (int i = 0; i < block_count(); ++i)
        if (blocks_[i] & (LeafMask{1} << leaf)) return i;
    return -1;
}

std::vector<int> Partition::rgs() const {
    std::vector<int> out;
    LeafMask ground = ground_mask();
    for (LeafMask m = ground; m;) {
        int leaf = std::countr_zero(m);
        m &= m - 1;
        out.push_back(block_index_of(leaf));
    }
    return out;
}

std::size_t PartitionHash::operator()(const Partition& p) const {
    std::size_t h = 1469598103934665603ull;
    for (LeafMask b : p.blocks()) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

bool refines(const Partition& fine, const Partition& coarse) {
    require_same_ground(fine, coarse);
    for (LeafMask b : fine.blocks()) {
        int idx = coarse.block_index_of(lowest(b));
        if ((b & ~coarse.blocks()[idx]) != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// text form

std::string format_partition(const Tree& tree, const Partition& p) {
    std::string out;
    for (LeafMask b : p.blocks()) {
        if (!out.empty()) out += '|';
        bool first = true;
        for (LeafMask m = b; m;) {
            int leaf = std::countr_zero(m);
            m &= m - 1;
            if (!first) out += ',';
            out += tree.leaf_names()[leaf];
            first = false;
        }
    }
    return out;
}

Partition parse_partition(const Tree& tree, std::string_view text) {
    std::vector<LeafMask> blocks;
    std::size_t pos = 0;
    LeafMask block = 0;
    std::string name;
    auto flush_name = [&]() {
        if (name.empty()) throw parse_error("expected leaf label", pos);
        LeafMask bit = LeafMask{1} << tree.leaf_index(name);
        if (block & bit) throw std::invalid_argument("leaf '" + name + "' repeated in block");
        block |= bit;
        name.clear();
    };
    for (pos = 0; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == ',') {
            flush_name();
        } else if (c == '|') {
            flush_name();
            blocks.push_back(block);
            block = 0;
        } else {
            name += c;
        }
    }
    flush_name();
    blocks.push_back(block);
    Partition p = Partition::from_blocks(std::move(blocks));
    require_partition_of(tree, p);
    return p;
}

// ---------------------------------------------------------------------------
// admissibility, meet, join

bool is_admissible(const Tree& tree, const Partition& p) {
    require_partition_of(tree, p);
    VertexMask used = 0;
    for (LeafMask b : p.blocks()) {
        VertexMask s = tree.s_set_mask(b);
        if (used & s) return false;
        used |= s;
    }
    return true;
}

VertexMask vertex_mask(const Tree& tree, const Partition& p) {
    VertexMask out = 0;
    for (LeafMask b : p.blocks()) out |= tree.s_set_mask(b);
    return out;
}

Partition meet_adm(const Tree& tree, const Partition& a, const Partition& b) {
    require_partition_of(tree, a);
    require_same_ground(a, b);
    std::vector<LeafMask> blocks;
    for (LeafMask x : a.blocks())
        for (LeafMask y : b.blocks())
            if (x & y) blocks.push_back(x & y);
    return Partition::from_blocks(std::move(blocks));
}

Partition join_adm(const Tree& tree, const Partition& a, const Partition& b) {
    require_partition_of(tree, a);
    require_same_ground(a, b);

    // Partition-lattice join: union-find over leaves.
    const int m = a.ground_size();
    std::vector<int> parent(m);
    for (int i = 0; i < m; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite_block = [&](LeafMask block) {
        int head = find(lowest(block));
        for (LeafMask mm = block & (block - 1); mm;) {
            int leaf = std::countr_zero(mm);
            mm &= mm - 1;
            parent[find(leaf)] = head;
        }
    };
    for (LeafMask x : a.blocks()) unite_block(x);
    for (LeafMask y : b.blocks()) unite_block(y);

    std::vector<LeafMask> blocks(m, 0);
    for (int i = 0; i < m; ++i) blocks[find(i)] |= LeafMask{1} << i;
    std::erase(blocks, LeafMask{0});

    // Close under admissibility: merging is forced whenever S-sets meet.
    std::vector<VertexMask> smask(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) smask[i] = tree.s_set_mask(blocks[i]);
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < blocks.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < blocks.size() && !merged; ++j) {
                if ((smask[i] & smask[j]) == 0) continue;
                smask[i] |= smask[j] | cross_meets(tree, blocks[i], blocks[j]);
                blocks[i] |= blocks[j];
                blocks.erase(blocks.begin() + j);
                smask.erase(smask.begin() + j);
                merged = true;
            }
        }
    }
    return Partition::from_blocks(std::move(blocks));
}

// ---------------------------------------------------------------------------
// the Pi / Gamma correspondence

Partition pi_of_forest(const Tree& tree, const Forest& forest) {
    std::vector<LeafMask> blocks;
    blocks.reserve(forest.trees().size());
    for (const Tree& t : forest.trees()) blocks.push_back(tree.leaf_mask_of(t.leaf_names()));
    Partition p = Partition::from_blocks(std::move(blocks));
    require_partition_of(tree, p);
    if (!is_admissible(tree, p))
        throw std::invalid_argument("forest is not below the tree: inadmissible leaf partition");
    // Each member tree must be the restriction of the ambient tree to its
    // leaves; by uniqueness this characterizes domination.
    for (const Tree& t : forest.trees()) {
        if (t.vertex_count() == 0) continue;
        if (t != tree.restrict_to(tree.leaf_mask_of(t.leaf_names())).tree)
            throw std::invalid_argument("forest is not below the tree: '" + t.to_string() +
                                        "' is not a restriction");
    }
    return p;
}

Forest gamma_of_partition(const Tree& tree, const Partition& p) {
    if (!is_admissible(tree, p)) throw std::invalid_argument("partition is not admissible");
    std::vector<Tree> trees;
    trees.reserve(p.blocks().size());
    for (LeafMask b : p.blocks()) trees.push_back(tree.restrict_to(b).tree);
    return Forest(std::move(trees));
}

// ---------------------------------------------------------------------------
// general forest order

bool leq_forest(const Forest& lower, const Forest& upper) {
    if (lower.ground_set() != upper.ground_set())
        throw std::invalid_argument("forests have mismatched label sets");

    // Locate, per leaf name, the containing tree of `upper`.
    const auto& uppers = upper.trees();
    auto upper_tree_of = [&](const std::string& name) -> int {
        for (int i = 0; i < static_cast<int>(uppers.size()); ++i) {
            const auto& names = uppers[i].leaf_names();
            if (std::binary_search(names.begin(), names.end(), name)) return i;
        }
        return -1;
    };

    std::vector<std::pair<int, int>> images;  // (upper tree, vertex), for injectivity
    for (const Tree& s : lower.trees()) {
        int ui = upper_tree_of(s.leaf_names().front());
        const Tree& u = uppers[ui];
        // The whole lower tree must land in a single upper tree.
        for (const auto& name : s.leaf_names())
            if (upper_tree_of(name) != ui) return false;
        if (s.vertex_count() == 0) continue;

        std::vector<int> phi(s.vertex_count(), -1);
        for (int v = 0; v < s.vertex_count(); ++v) {
            auto [ls, rs] = s.ancestor_leaves(v);
            // Map both sides into the upper tree's leaf indexing.
            LeafMask la = 0, rb = 0;
            for (auto names = s.names_of(ls); const auto& nm : names)
                la |= LeafMask{1} << u.leaf_index(nm);
            for (auto names = s.names_of(rs); const auto& nm : names)
                rb |= LeafMask{1} << u.leaf_index(nm);
            int cand = u.meet_vertex(std::countr_zero(la), std::countr_zero(rb));
            // All cross pairs must meet at the same vertex: each side lies
            // within one side of the candidate.
            auto [ul, ur] = u.ancestor_leaves(cand);
            bool split_ok = ((la & ~ul) == 0 && (rb & ~ur) == 0) ||
                            ((la & ~ur) == 0 && (rb & ~ul) == 0);
            if (!split_ok) return false;
            phi[v] = cand;
            images.emplace_back(ui, cand);
        }
        // Order-preserving toward the root (D1): strictly below the image of
        // the parent.
        for (int v = 0; v < s.vertex_count(); ++v) {
            int p = s.vertex_parent(v);
            if (p == -1) continue;
            if (phi[v] == phi[p] || !u.below_or_equal(phi[v], phi[p])) return false;
        }
    }
    // Global injectivity (D2; subsumes per-tree injectivity D4).
    std::sort(images.begin(), images.end());
    return std::adjacent_find(images.begin(), images.end()) == images.end();
}

}  // namespace forestlat
