#include "forestlat/enumerate.hpp"

#include <stdexcept>
#include <string>

namespace forestlat {

void for_each_set_partition(int m, const std::function<void(const Partition&)>& fn) {
    if (m <= 0) throw std::invalid_argument("ground set must be nonempty");
    if (m > 16) throw bound_error("set-partition scan limited to 16 elements");
    std::vector<int> rgs(m, 0);
    std::vector<LeafMask> blocks;
    auto rec = [&](auto&& self, int i, int nblocks) -> void {
        if (i == m) {
            blocks.assign(nblocks, 0);
            for (int leaf = 0; leaf < m; ++leaf) blocks[rgs[leaf]] |= LeafMask{1} << leaf;
            fn(Partition::from_blocks(blocks));
            return;
        }
        for (int b = 0; b <= nblocks; ++b) {
            rgs[i] = b;
            self(self, i + 1, b == nblocks ? nblocks + 1 : nblocks);
        }
    };
    rec(rec, 0, 0);
}

std::vector<Tree> enumerate_labeled_trees(int leaf_count) {
    if (leaf_count < 1) throw std::invalid_argument("need at least one leaf");
    if (leaf_count > 12) throw bound_error("tree enumeration limited to 12 leaves");

    // Trees kept as text; inserting leaf x at a subtree span s rewrites s to
    // (s,x). Every node of a tree on k-1 leaves is an insertion point, which
    // gives the (2k-3)!! recursion.
    std::vector<std::string> texts = {"a"};
    for (int k = 2; k <= leaf_count; ++k) {
        std::string name(1, static_cast<char>('a' + k - 1));
        std::vector<std::string> next;
        next.reserve(texts.size() * (2 * k - 3));
        for (const std::string& t : texts) {
            // Subtree spans: each leaf run and each balanced '(' ... ')'.
            // Nested spans are further insertion points, so only leaf runs
            // are skipped over.
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::size_t end;
                if (t[i] == '(') {
                    int depth = 0;
                    end = i;
                    do {
                        if (t[end] == '(') ++depth;
                        if (t[end] == ')') --depth;
                        ++end;
                    } while (depth > 0);
                } else if (t[i] != ',' && t[i] != ')') {
                    end = i;
                    while (end < t.size() && t[end] != ',' && t[end] != ')' && t[end] != '(') ++end;
                } else {
                    continue;
                }
                next.push_back(t.substr(0, i) + "(" + t.substr(i, end - i) + "," + name + ")" +
                               t.substr(end));
                if (t[i] != '(') i = end - 1;
            }
        }
        texts = std::move(next);
    }

    std::vector<Tree> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(Tree::parse(t));
    return out;
}

std::uint64_t labeled_tree_count(int leaf_count) {
    std::uint64_t c = 1;
    for (int k = 3; k <= leaf_count; ++k) c *= 2 * k - 3;
    return c;
}

}  // namespace forestlat
