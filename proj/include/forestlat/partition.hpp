#ifndef FORESTLAT_PARTITION_HPP
#define FORESTLAT_PARTITION_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "forestlat/tree.hpp"

namespace forestlat {

// A set partition of a leaf set, blocks as bit masks sorted by lowest
// element. Canonical by construction; two partitions of the same ground set
// compare equal iff they are the same partition.
class Partition {
public:
    Partition() = default;
    // Validates blocks nonempty and pairwise disjoint, then canonicalizes.
    static Partition from_blocks(std::vector<LeafMask> blocks);
    static Partition singletons(int ground_size);
    static Partition one_block(int ground_size);

    const std::vector<LeafMask>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    LeafMask ground_mask() const;
    int ground_size() const;
    // rank in the interval lattice: |I| - #blocks
    int rank() const { return ground_size() - block_count(); }
    int block_index_of(int leaf) const;  // -1 if absent

    // Restricted-growth string; lexicographic comparison of these gives the
    // canonical total order used for element indexing.
    std::vector<int> rgs() const;

    bool operator==(const Partition&) const = default;
    bool operator<(const Partition& other) const { return rgs() < other.rgs(); }

private:
    std::vector<LeafMask> blocks_;
};

struct PartitionHash {
    std::size_t operator()(const Partition& p) const;
};

// Refinement order: every block of `fine` inside some block of `coarse`.
// Throws std::invalid_argument on mismatched ground sets.
bool refines(const Partition& fine, const Partition& coarse);

// Text form: blocks separated by '|', elements by ','; e.g. "a,b|c|d".
std::string format_partition(const Tree& tree, const Partition& p);
// Throws parse_error on syntax, std::invalid_argument if the result is not
// a partition of the tree's leaves.
Partition parse_partition(const Tree& tree, std::string_view text);

// p is admissible for `tree` iff distinct blocks have disjoint S-sets.
// Throws std::invalid_argument if p is not a partition of the tree's leaves.
bool is_admissible(const Tree& tree, const Partition& p);

// Inner vertices used by a partition: the union of its blocks' S-sets.
VertexMask vertex_mask(const Tree& tree, const Partition& p);

// Meet of two admissible partitions: blockwise intersections. The result is
// admissible whenever the inputs are.
Partition meet_adm(const Tree& tree, const Partition& a, const Partition& b);

// Join of two admissible partitions: the partition-lattice join, then blocks
// with intersecting S-sets merged until admissible. This is the least
// admissible partition coarsening both inputs: any admissible common
// coarsening must merge two blocks whose S-sets intersect, so every merge
// step is forced.
Partition join_adm(const Tree& tree, const Partition& a, const Partition& b);

// Leaf-set partition of a forest dominated by `tree`. Throws
// std::invalid_argument when the forest is not below the tree (wrong ground
// set, inadmissible blocks, or a tree of the forest that is not the
// corresponding restriction).
Partition pi_of_forest(const Tree& tree, const Forest& forest);

// Forest of restrictions of `tree` to the blocks of an admissible partition;
// inverse of pi_of_forest.
Forest gamma_of_partition(const Tree& tree, const Partition& p);

// Forest order on arbitrary forests over the same label set, decided by
// reconstructing the vertex map: the image of an inner vertex is forced to
// be the meet vertex, in the containing tree of `upper`, of any pair of
// leaves taken from its two sides; the map must then be injective and
// order-preserving toward the root.
bool leq_forest(const Forest& lower, const Forest& upper);

}  // namespace forestlat

#endif
