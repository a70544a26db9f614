#ifndef FORESTLAT_LATTICE_HPP
#define FORESTLAT_LATTICE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "forestlat/partition.hpp"
#include "forestlat/tree.hpp"

namespace forestlat {

inline constexpr int kDefaultLeafBound = 10;

// The interval below a tree, materialized as the lattice of its admissible
// partitions. Elements are indexed rank-major, then by restricted-growth
// string; index 0 is the all-singletons partition, the last index the
// one-block partition. Immutable after enumeration.
class LatticeModel {
public:
    // Scans all set partitions of the leaf set and keeps the admissible
    // ones; covers are the admissible single merges of two blocks. Throws
    // bound_error beyond max_leaves.
    static LatticeModel enumerate(const Tree& tree, int max_leaves = kDefaultLeafBound);

    const Tree& tree() const { return tree_; }
    int size() const { return static_cast<int>(elements_.size()); }
    const Partition& element(int i) const { return elements_[i]; }
    int index_of(const Partition& p) const;  // -1 if absent
    int rank_of(int i) const { return ranks_[i]; }
    int bottom() const { return 0; }
    int top() const { return size() - 1; }
    int rank() const { return tree_.vertex_count(); }
    std::span<const int> up_covers(int i) const { return up_[i]; }
    std::span<const int> down_covers(int i) const { return down_[i]; }
    VertexMask vertex_mask_of(int i) const { return vset_[i]; }

    bool leq(int a, int b) const { return refines(elements_[a], elements_[b]); }
    int meet(int a, int b) const;
    int join(int a, int b) const;

    // Elements of rank 1; one per unordered pair of leaves.
    std::vector<int> atoms() const;

    // Recursive Möbius value on the interval [x, y]; memoized locally.
    // Throws std::invalid_argument unless x <= y.
    long long mobius(int x, int y) const;
    // mu(bottom, y) for every y, by rank-order accumulation.
    std::vector<long long> mobius_from_bottom() const;

private:
    LatticeModel(const Tree& t) : tree_(t) {}

    Tree tree_;
    std::vector<Partition> elements_;
    std::vector<int> ranks_;
    std::vector<std::vector<int>> up_, down_;
    std::vector<VertexMask> vset_;
    std::unordered_map<Partition, int, PartitionHash> index_;
};

// Every pair of elements has a unique minimal upper bound and a unique
// maximal lower bound, the bounds agree with join_adm/meet_adm, and the
// reachability closure of the cover relation agrees with refinement.
bool verify_lattice(const LatticeModel& lattice);

struct SemimodularResult {
    bool ok = true;
    int x = -1, y = -1;  // witness pair when not semimodular
};

// Checks: whenever x and y both cover x^y, x v y covers both. Returns the
// first violating pair in index order, if any.
SemimodularResult check_semimodular(const LatticeModel& lattice);

}  // namespace forestlat

#endif
