#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "delannoy/gmap.hpp"
#include "delannoy/morphism.hpp"

namespace delannoy {

// A G-stable equivalence relation on X, as the sorted list of orbits of
// X x X it contains (indices into pair_orbits(X, X)).
struct EquivRelation {
    GSet base;
    std::vector<int> orbit_ids;

    friend bool operator==(const EquivRelation&, const EquivRelation&) = default;
};

using Bits = std::vector<std::uint64_t>;

// Per-base machinery: diagonal orbits, the swap involution, and the
// triple-orbit projection tables (grouped per coordinate) that drive
// transitive closure and the orbitwise transitivity check.
class RelationContext {
  public:
    explicit RelationContext(GSet X);

    const GSet& base() const { return base_; }
    std::size_t pair_count() const { return pair_count_; }
    const std::vector<int>& diagonal_ids() const { return diagonal_; }
    int swap_id(int pair_id) const { return swap_[pair_id]; }

    Bits make_bits(const std::vector<int>& ids) const;
    std::vector<int> bits_to_ids(const Bits& b) const;

    // Orbitwise checks against the triple tables: reflexive + symmetric +
    // transitive, and the three-way idempotent compatibility families.
    bool is_equivalence(const Bits& S) const;
    bool triple_condition(const Bits& S) const;

    // Smallest equivalence relation containing the seed.
    Bits closure(const Bits& seed) const;

    // The full lattice of G-stable equivalence relations on the base,
    // canonically ordered. Every output is certified by is_equivalence.
    std::vector<EquivRelation> enumerate() const;

    // Kernel relation of a map with transitive target.
    EquivRelation kernel_of(const GMap& p) const;

  private:
    GSet base_;
    std::size_t pair_count_ = 0;
    std::vector<int> diagonal_;
    std::vector<int> swap_;

    // Pair-orbit coordinates: piece pair + per-coordinate local word ids.
    struct PairBlock {
        int pi, pj;
        int offset;
        std::vector<int> strides;                 // per coordinate
        std::vector<std::vector<Word>> words;     // per coordinate, shortlex
        std::vector<std::map<Word, int>> word_id; // per coordinate
    };
    std::vector<PairBlock> blocks_;               // indexed by pi * np + pj
    int np_ = 0;
    int block_of(int pair_id) const;              // index into blocks_

    // Grouped triple projections for one piece triple and one coordinate:
    // for each (u, v) pair of local word ids, the bitmask (over local w
    // ids) of the third projection, in each of the three role layouts.
    struct CoordTable {
        // key: u * nwords_v + v  -> mask over the target local ids
        std::vector<std::vector<std::uint64_t>> fwd;   // (12,23) -> 13
        std::vector<std::vector<std::uint64_t>> left;  // (12,13) -> 23
        std::vector<std::vector<std::uint64_t>> right; // (13,23) -> 12
        int n12, n23, n13;
        int mask_words_13, mask_words_23, mask_words_12;
    };
    struct TripleBlock {
        int pi, pj, pk;
        std::vector<CoordTable> coord;            // per coordinate
    };
    std::vector<TripleBlock> triples_;

    friend class RelationCloser;
};

// Cached per-base contexts.
const RelationContext& relation_context(const GSet& X);

// All G-stable equivalence relations (guarded by size caps).
std::vector<EquivRelation> equivalence_relations(const GSet& X);

// Quotient of a transitive base by a relation: the transitive target and
// the projection whose kernel is the relation.
std::pair<GSet, GMap> quotient(const GSet& X, const EquivRelation& R);

// Factor a relation on a transitive product over G^(sx+sy) into relations
// on the two blocks of group coordinates (counterexample to the split
// property if impossible).
std::pair<EquivRelation, EquivRelation> factor_product_relation(const EquivRelation& R, int sx);

} // namespace delannoy
