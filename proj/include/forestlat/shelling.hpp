#ifndef FORESTLAT_SHELLING_HPP
#define FORESTLAT_SHELLING_HPP

#include <string>
#include <vector>

#include "forestlat/lattice.hpp"

namespace forestlat {

// --- edge labeling -----------------------------------------------------------
//
// A cover adds exactly one inner vertex; its label under the nice order is
// the label of the cover edge. Partition-level functions below do not need
// the materialized lattice.

// Throws std::invalid_argument unless fine is covered by coarse.
int edge_label(const Tree& tree, const Partition& fine, const Partition& coarse,
               const NiceOrder& ord);

// Label word of a saturated chain (consecutive covers).
std::vector<int> chain_label(const Tree& tree, const std::vector<Partition>& chain,
                             const NiceOrder& ord);

// The unique cover of `from` below `target` carrying the minimal missing
// label: the two blocks holding the sides of the minimal missing vertex are
// merged. Throws std::invalid_argument unless from < target.
Partition min_cover(const Tree& tree, const Partition& from, const Partition& target,
                    const NiceOrder& ord);

// --- the M-chain and its levels ----------------------------------------------

struct MChain {
    std::vector<int> chain;  // element indices, bottom to top, length n+1
};

// The unique increasing maximal chain: iterate min_cover toward the top; the
// step at position i adds the vertex labeled i.
MChain m_chain(const LatticeModel& lattice, const NiceOrder& ord);
std::vector<Partition> m_chain_partitions(const Tree& tree, const NiceOrder& ord);

struct LevelSets {
    // Atom element indices per level 1..n (index 0 = level 1); A by chain
    // membership, B by edge label.
    std::vector<std::vector<int>> A, B;
};

// Computes both atom partitions and checks they coincide levelwise; throws
// std::logic_error if they do not.
LevelSets levels(const LatticeModel& lattice, const MChain& chain, const NiceOrder& ord);

// y v (x ^ z) == (y v x) ^ z for every chain element x and every y <= z.
bool check_left_modular(const LatticeModel& lattice, const MChain& chain);

// No atom lies below the join of atoms drawn from strictly later pairwise
// distinct levels. Exhaustive over all such selections when their count is
// small (covers every tree up to 7 leaves); deterministic sampling beyond.
bool check_level_condition(const LatticeModel& lattice, const LevelSets& levels);

// --- EL verification -----------------------------------------------------------

struct ElResult {
    bool ok = true;
    int from = -1, to = -1;  // violating interval when !ok
    std::string reason;
};

// Every interval has exactly one weakly increasing saturated chain and that
// chain is strictly lexicographically least.
ElResult verify_el_labeling(const LatticeModel& lattice, const NiceOrder& ord);

// Every maximal chain's label word is a permutation of 1..n. Call after
// verify_el_labeling.
bool verify_sn_labeling(const LatticeModel& lattice, const NiceOrder& ord);

// All saturated chains of [from, to], as label words.
std::vector<std::vector<int>> interval_chain_labels(const LatticeModel& lattice, int from,
                                                    int to, const NiceOrder& ord);

// --- output -------------------------------------------------------------------

// Hasse diagram in DOT form: one node per element (partition text), one edge
// per cover, labeled by the edge label. Deterministic.
std::string hasse_dot(const LatticeModel& lattice, const NiceOrder& ord);

}  // namespace forestlat

#endif
