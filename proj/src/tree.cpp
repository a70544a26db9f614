#include "forestlat/tree.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <memory>

namespace forestlat {

namespace {

bool is_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

int popcount(std::uint32_t x) { return std::popcount(x); }

}  // namespace

// ---------------------------------------------------------------------------
// construction

// Intermediate form used by the parser and by restrict_to. Children are
// reordered in place during canonicalization.
struct detail::TreeBuild {
    std::string leaf;  // nonempty for leaves
    std::unique_ptr<TreeBuild> left, right;
    int source = -1;   // original vertex id, for restrictions
    std::string min_leaf;

    bool is_leaf() const { return !leaf.empty(); }
};

namespace {

using BuildNode = detail::TreeBuild;

// Sort children by minimal leaf name, bottom-up.
void canonicalize(BuildNode& node) {
    if (node.is_leaf()) {
        node.min_leaf = node.leaf;
        return;
    }
    canonicalize(*node.left);
    canonicalize(*node.right);
    if (node.right->min_leaf < node.left->min_leaf) std::swap(node.left, node.right);
    node.min_leaf = node.left->min_leaf;
}

void collect_leaves(const BuildNode& node, std::vector<std::string>& out) {
    if (node.is_leaf()) {
        out.push_back(node.leaf);
        return;
    }
    collect_leaves(*node.left, out);
    collect_leaves(*node.right, out);
}

void render(const BuildNode& node, std::string& out) {
    if (node.is_leaf()) {
        out += node.leaf;
        return;
    }
    out += '(';
    render(*node.left, out);
    out += ',';
    render(*node.right, out);
    out += ')';
}

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos); }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    std::unique_ptr<BuildNode> node() {
        auto n = std::make_unique<BuildNode>();
        if (peek() == '(') {
            ++pos;
            n->left = node();
            if (peek() != ',') fail("expected ','");
            ++pos;
            n->right = node();
            if (peek() == ',') fail("non-binary node");
            if (peek() != ')') fail("expected ')'");
            ++pos;
        } else {
            std::size_t start = pos;
            while (pos < text.size() && is_label_char(text[pos])) ++pos;
            if (pos == start) fail("expected leaf label or '('");
            n->leaf = std::string(text.substr(start, pos - start));
        }
        return n;
    }
};

}  // namespace

Tree Tree::parse(std::string_view text) {
    Parser p{text};
    auto root = p.node();
    if (p.peek() == ';') ++p.pos;
    if (p.pos != text.size()) p.fail("trailing input");

    std::vector<std::string> leaves;
    collect_leaves(*root, leaves);
    std::sort(leaves.begin(), leaves.end());
    if (std::adjacent_find(leaves.begin(), leaves.end()) != leaves.end())
        throw parse_error("duplicate leaf label '" +
                              *std::adjacent_find(leaves.begin(), leaves.end()) + "'",
                          0);
    if (leaves.size() > 32) throw bound_error("trees with more than 32 leaves are not supported");
    return Tree(std::move(*root));
}

Tree::Tree(BuildNode&& root_in) {
    BuildNode root = std::move(root_in);
    canonicalize(root);
    collect_leaves(root, leaf_names_);
    std::sort(leaf_names_.begin(), leaf_names_.end());
    render(root, canonical_text_);

    const int m = leaf_count();
    const int n = m - 1;
    v_left_.assign(n, 0);
    v_right_.assign(n, 0);
    v_parent_.assign(n, -1);
    v_source_.assign(n, -1);
    meet_.assign(static_cast<std::size_t>(m) * m, -1);

    // Post-order walk assigning vertex ids and filling the pair table: a
    // pair of leaves meets exactly at the vertex whose sides separate them.
    int next_id = 0;
    auto walk = [&](auto&& self, const BuildNode& node) -> LeafMask {
        if (node.is_leaf()) return LeafMask{1} << leaf_index(node.leaf);
        LeafMask l = self(self, *node.left);
        LeafMask r = self(self, *node.right);
        int v = next_id++;
        v_left_[v] = l;
        v_right_[v] = r;
        v_source_[v] = node.source;
        for (LeafMask lm = l; lm;) {
            int i = std::countr_zero(lm);
            lm &= lm - 1;
            for (LeafMask rm = r; rm;) {
                int j = std::countr_zero(rm);
                rm &= rm - 1;
                meet_[static_cast<std::size_t>(i) * m + j] = v;
                meet_[static_cast<std::size_t>(j) * m + i] = v;
            }
        }
        return l | r;
    };
    walk(walk, root);

    // Parent links: a vertex contains exactly the vertices of its sides
    // below it; the parent of each side's top vertex is the vertex itself.
    // Recover parents by matching subtree masks.
    for (int v = 0; v < n; ++v) {
        for (int w = v + 1; w < n; ++w) {
            LeafMask sub = subtree_mask(v);
            if (sub == v_left_[w] || sub == v_right_[w]) {
                v_parent_[v] = w;
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// queries

int NiceOrder::vertex_with_label(int lab) const {
    for (int v = 0; v < static_cast<int>(label.size()); ++v)
        if (label[v] == lab) return v;
    return -1;
}

int Tree::leaf_index(std::string_view name) const {
    auto it = std::lower_bound(leaf_names_.begin(), leaf_names_.end(), name);
    if (it == leaf_names_.end() || *it != name)
        throw std::invalid_argument("unknown leaf label '" + std::string(name) + "'");
    return static_cast<int>(it - leaf_names_.begin());
}

LeafMask Tree::leaf_mask_of(const std::vector<std::string>& names) const {
    LeafMask mask = 0;
    for (const auto& name : names) mask |= LeafMask{1} << leaf_index(name);
    return mask;
}

std::vector<std::string> Tree::names_of(LeafMask mask) const {
    std::vector<std::string> out;
    for (; mask;) {
        int i = std::countr_zero(mask);
        mask &= mask - 1;
        out.push_back(leaf_names_[i]);
    }
    return out;
}

void Tree::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count()) throw std::invalid_argument("invalid vertex id");
}

int Tree::meet_vertex(int leaf_i, int leaf_j) const {
    if (leaf_i < 0 || leaf_i >= leaf_count() || leaf_j < 0 || leaf_j >= leaf_count())
        throw std::invalid_argument("leaf index out of range");
    if (leaf_i == leaf_j) throw std::invalid_argument("meet_vertex needs two distinct leaves");
    return meet_[static_cast<std::size_t>(leaf_i) * leaf_count() + leaf_j];
}

int Tree::meet_vertex(std::string_view a, std::string_view b) const {
    return meet_vertex(leaf_index(a), leaf_index(b));
}

VertexMask Tree::s_set_mask(LeafMask leaves) const {
    VertexMask out = 0;
    const int m = leaf_count();
    for (LeafMask am = leaves; am;) {
        int i = std::countr_zero(am);
        am &= am - 1;
        for (LeafMask bm = am; bm;) {
            int j = std::countr_zero(bm);
            bm &= bm - 1;
            out |= VertexMask{1} << meet_[static_cast<std::size_t>(i) * m + j];
        }
    }
    return out;
}

std::vector<int> Tree::s_set(const std::vector<std::string>& leaves) const {
    VertexMask mask = s_set_mask(leaf_mask_of(leaves));
    std::vector<int> out;
    for (; mask;) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

std::pair<LeafMask, LeafMask> Tree::ancestor_leaves(int v) const {
    check_vertex(v);
    return {v_left_[v], v_right_[v]};
}

int Tree::exponent(int v) const {
    check_vertex(v);
    return popcount(v_left_[v]) * popcount(v_right_[v]);
}

std::vector<int> Tree::exponent_multiset() const {
    std::vector<int> out;
    out.reserve(vertex_count());
    for (int v = 0; v < vertex_count(); ++v) out.push_back(exponent(v));
    std::sort(out.begin(), out.end());
    return out;
}

LeafMask Tree::subtree_mask(int v) const {
    check_vertex(v);
    return v_left_[v] | v_right_[v];
}

int Tree::vertex_parent(int v) const {
    check_vertex(v);
    return v_parent_[v];
}

// ---------------------------------------------------------------------------
// restriction

Tree::RestrictedTree Tree::restrict_to(LeafMask leaves) const {
    if (leaves == 0) throw std::invalid_argument("cannot restrict to an empty leaf set");
    if ((leaves & ~full_leaf_mask()) != 0) throw std::invalid_argument("unknown leaf in restriction");

    // Keep the union of root paths from the chosen leaves; a vertex with
    // only one surviving side is suppressed.
    auto prune = [&](auto&& self, int v) -> std::unique_ptr<BuildNode> {
        std::unique_ptr<BuildNode> l, r;
        // A side is either a single leaf or headed by the vertex whose
        // subtree mask equals the side mask.
        auto side = [&](LeafMask side_mask) -> std::unique_ptr<BuildNode> {
            LeafMask kept = side_mask & leaves;
            if (kept == 0) return nullptr;
            if (popcount(kept) == 1) {
                auto n = std::make_unique<BuildNode>();
                n->leaf = leaf_names_[std::countr_zero(kept)];
                return n;
            }
            // Recurse through the child vertex heading this side.
            for (int w = 0; w < vertex_count(); ++w)
                if (subtree_mask(w) == side_mask) return self(self, w);
            throw std::logic_error("restriction: side vertex not found");
        };
        l = side(v_left_[v]);
        r = side(v_right_[v]);
        if (l && r) {
            auto n = std::make_unique<BuildNode>();
            n->left = std::move(l);
            n->right = std::move(r);
            n->source = v;
            return n;
        }
        return l ? std::move(l) : std::move(r);
    };

    std::unique_ptr<BuildNode> root;
    if (popcount(leaves) == 1) {
        root = std::make_unique<BuildNode>();
        root->leaf = leaf_names_[std::countr_zero(leaves)];
    } else {
        root = prune(prune, root_vertex());
    }
    Tree t(std::move(*root));
    RestrictedTree out{std::move(t), {}};
    out.source_vertex = out.tree.v_source_;
    return out;
}

Tree::RestrictedTree Tree::restrict_to(const std::vector<std::string>& leaves) const {
    return restrict_to(leaf_mask_of(leaves));
}

// ---------------------------------------------------------------------------
// nice orders

NiceOrder Tree::canonical_nice_order() const {
    // Canonical vertex ids are post-order, so the identity labeling is a
    // linear extension.
    NiceOrder ord;
    ord.label.resize(vertex_count());
    for (int v = 0; v < vertex_count(); ++v) ord.label[v] = v + 1;
    return ord;
}

bool Tree::validate_nice_order(const NiceOrder& ord) const {
    const int n = vertex_count();
    if (static_cast<int>(ord.label.size()) != n)
        throw std::invalid_argument("nice order has wrong size");
    std::vector<bool> seen(n + 1, false);
    for (int v = 0; v < n; ++v) {
        int lab = ord.label[v];
        if (lab < 1 || lab > n || seen[lab])
            throw std::invalid_argument("nice order is not a bijection onto 1..n");
        seen[lab] = true;
    }
    for (int v = 0; v < n; ++v)
        if (v_parent_[v] != -1 && ord.label[v] >= ord.label[v_parent_[v]]) return false;
    return true;
}

std::vector<NiceOrder> Tree::all_nice_orders() const {
    const int n = vertex_count();
    std::vector<NiceOrder> out;
    NiceOrder cur;
    cur.label.assign(n, 0);
    std::vector<int> pending_children(n, 0);  // inner-vertex children not yet labeled
    for (int v = 0; v < n; ++v)
        if (v_parent_[v] != -1) ++pending_children[v_parent_[v]];

    auto rec = [&](auto&& self, int next_label) -> void {
        if (next_label > n) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (cur.label[v] != 0 || pending_children[v] != 0) continue;
            cur.label[v] = next_label;
            if (v_parent_[v] != -1) --pending_children[v_parent_[v]];
            self(self, next_label + 1);
            if (v_parent_[v] != -1) ++pending_children[v_parent_[v]];
            cur.label[v] = 0;
        }
    };
    rec(rec, 1);
    return out;
}

// ---------------------------------------------------------------------------
// forests

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
    std::sort(trees_.begin(), trees_.end(), [](const Tree& a, const Tree& b) {
        return a.leaf_names().front() < b.leaf_names().front();
    });
    std::vector<std::string> all;
    for (const auto& t : trees_)
        all.insert(all.end(), t.leaf_names().begin(), t.leaf_names().end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("forest trees must have disjoint leaf sets");
}

Forest Forest::bottom(const std::vector<std::string>& leaf_names) {
    std::vector<Tree> trees;
    trees.reserve(leaf_names.size());
    for (const auto& name : leaf_names) trees.push_back(Tree::parse(name));
    return Forest(std::move(trees));
}

std::vector<std::string> Forest::ground_set() const {
    std::vector<std::string> all;
    for (const auto& t : trees_)
        all.insert(all.end(), t.leaf_names().begin(), t.leaf_names().end());
    std::sort(all.begin(), all.end());
    return all;
}

int Forest::inner_vertex_count() const {
    int n = 0;
    for (const auto& t : trees_) n += t.vertex_count();
    return n;
}

std::string Forest::to_string() const {
    std::string out;
    for (const auto& t : trees_) {
        if (!out.empty()) out += '+';
        out += t.to_string();
    }
    return out;
}

bool Forest::operator==(const Forest& other) const {
    if (trees_.size() != other.trees_.size()) return false;
    for (std::size_t i = 0; i < trees_.size(); ++i)
        if (trees_[i] != other.trees_[i]) return false;
    return true;
}

}  // namespace forestlat
