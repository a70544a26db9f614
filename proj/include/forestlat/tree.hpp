#ifndef FORESTLAT_TREE_HPP
#define FORESTLAT_TREE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "forestlat/errors.hpp"

namespace forestlat {

namespace detail {
struct TreeBuild;
}

// Leaf sets and inner-vertex sets are kept as bit masks. Leaves are indexed
// by the rank of their name in lexicographic order; inner vertices by
// canonical post-order (see Tree). Supports up to 32 leaves.
using LeafMask = std::uint32_t;
using VertexMask = std::uint32_t;

// A linear extension of the vertex order: label[v] in 1..n for canonical
// vertex id v, increasing from the leaves toward the root (the root always
// receives n).
struct NiceOrder {
    std::vector<int> label;

    int vertex_with_label(int lab) const;
    bool operator==(const NiceOrder&) const = default;
};

// A rooted binary leaf-labeled tree, stored in canonical form:
//  - children of every inner node sorted by minimal leaf name,
//  - inner vertices numbered 0..n-1 in post-order of that layout,
//  - leaves indexed 0..m-1 by sorted name.
// Immutable after construction. A bare leaf ("a") is the trivial tree with
// no inner vertex; n = m - 1 always holds.
class Tree {
public:
    // Grammar: tree := leaf | '(' tree ',' tree ')', leaf names over
    // [A-Za-z0-9_], optional trailing ';'. Throws parse_error with the
    // offending position, or on duplicate leaf names.
    static Tree parse(std::string_view text);

    // Canonical serialization; parse(to_string()) reproduces the tree.
    const std::string& to_string() const { return canonical_text_; }

    int leaf_count() const { return static_cast<int>(leaf_names_.size()); }
    int vertex_count() const { return leaf_count() - 1; }
    const std::vector<std::string>& leaf_names() const { return leaf_names_; }
    LeafMask full_leaf_mask() const {
        return leaf_count() == 32 ? ~LeafMask{0} : (LeafMask{1} << leaf_count()) - 1;
    }

    // Throws std::invalid_argument for names that are not leaves of this tree.
    int leaf_index(std::string_view name) const;
    LeafMask leaf_mask_of(const std::vector<std::string>& names) const;
    std::vector<std::string> names_of(LeafMask mask) const;

    // The inner vertex at which the root paths of two distinct leaves meet.
    int meet_vertex(int leaf_i, int leaf_j) const;
    int meet_vertex(std::string_view a, std::string_view b) const;

    // Meet vertices of all leaf pairs drawn from the given set; has exactly
    // popcount(leaves) - 1 elements for a nonempty set.
    VertexMask s_set_mask(LeafMask leaves) const;
    std::vector<int> s_set(const std::vector<std::string>& leaves) const;

    // Leaf sets of the two child subtrees of an inner vertex, in canonical
    // child order.
    std::pair<LeafMask, LeafMask> ancestor_leaves(int v) const;

    // |left side| * |right side| of v.
    int exponent(int v) const;
    std::vector<int> exponent_multiset() const;  // sorted ascending

    // Subtree leaf mask of v (both sides together).
    LeafMask subtree_mask(int v) const;

    // Next inner vertex toward the root, -1 for the root vertex.
    int vertex_parent(int v) const;
    int root_vertex() const { return vertex_count() - 1; }

    // v lies weakly above w (w on the path from v to the root).
    bool below_or_equal(int v, int w) const {
        return (subtree_mask(v) & ~subtree_mask(w)) == 0;
    }

    // The unique tree on the given nonempty leaf subset lying below this
    // one: union of root paths, degree-2 vertices suppressed. Its inner
    // vertices correspond to s_set_mask(leaves).
    struct RestrictedTree;
    RestrictedTree restrict_to(LeafMask leaves) const;
    RestrictedTree restrict_to(const std::vector<std::string>& leaves) const;

    // Nice total orders (linear extensions of the vertex order).
    NiceOrder canonical_nice_order() const;
    // False if ord is not a linear extension; throws std::invalid_argument
    // if ord is not a bijection onto 1..n.
    bool validate_nice_order(const NiceOrder& ord) const;
    std::vector<NiceOrder> all_nice_orders() const;

    bool operator==(const Tree& other) const { return canonical_text_ == other.canonical_text_; }
    bool operator!=(const Tree& other) const { return !(*this == other); }

private:
    explicit Tree(detail::TreeBuild&& root);

    void check_vertex(int v) const;

    std::vector<std::string> leaf_names_;  // sorted
    std::string canonical_text_;
    // per inner vertex, indexed by canonical post-order id
    std::vector<LeafMask> v_left_;
    std::vector<LeafMask> v_right_;
    std::vector<int> v_parent_;
    std::vector<int> v_source_;   // original vertex ids, only set by restrict_to
    std::vector<int> meet_;       // m*m table, meet_[i*m+j]; diagonal -1
};

struct Tree::RestrictedTree {
    Tree tree;
    // source_vertex[v] = inner vertex of the original tree behind vertex v.
    std::vector<int> source_vertex;
};

// A set of trees with pairwise disjoint leaf names, kept sorted by minimal
// leaf name. The forest of bare leaves is the bottom of the forest order.
class Forest {
public:
    explicit Forest(std::vector<Tree> trees);
    static Forest bottom(const std::vector<std::string>& leaf_names);

    const std::vector<Tree>& trees() const { return trees_; }
    std::vector<std::string> ground_set() const;  // sorted
    int inner_vertex_count() const;

    std::string to_string() const;  // tree texts joined by '+'
    bool operator==(const Forest& other) const;

private:
    std::vector<Tree> trees_;
};

}  // namespace forestlat

#endif
