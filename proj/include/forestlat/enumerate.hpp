#ifndef FORESTLAT_ENUMERATE_HPP
#define FORESTLAT_ENUMERATE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "forestlat/partition.hpp"
#include "forestlat/tree.hpp"

namespace forestlat {

// Calls fn once for every set partition of {0..m-1}, in restricted-growth
// string order.
void for_each_set_partition(int m, const std::function<void(const Partition&)>& fn);

// All rooted binary leaf-labeled trees on k leaves named a, b, c, ...
// generated by inserting each new leaf at every position of every smaller
// tree; there are (2k-3)!! of them.
std::vector<Tree> enumerate_labeled_trees(int leaf_count);

// (2k-3)!! for k >= 1.
std::uint64_t labeled_tree_count(int leaf_count);

}  // namespace forestlat

#endif
