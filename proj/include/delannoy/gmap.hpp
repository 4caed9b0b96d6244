#pragma once

#include <vector>

#include "delannoy/amalgam.hpp"
#include "delannoy/gset.hpp"

namespace delannoy {

// Per source orbit: the target orbit hit, plus per group coordinate the
// order-preserving injection of the target arm into the source arm
// (a map into a transitive piece is exactly such a tuple).
struct GMapPiece {
    int target_orbit = 0;
    std::vector<std::vector<int>> embed;   // [coord][target position] -> source position

    friend bool operator==(const GMapPiece&, const GMapPiece&) = default;
};

struct GMap {
    GSet source, target;
    std::vector<GMapPiece> pieces;         // one per source orbit

    friend bool operator==(const GMap&, const GMap&) = default;

    static GMap identity(const GSet& X);
    static GMap to_point(const GSet& X);
    // X -> X x X (flattened product); hits the diagonal pieces.
    static GMap diagonal(const GSet& X);
    // R^(arms) -> R^(selected arms): keep the listed positions per coordinate.
    static GMap coordinate_projection(const Shape& X, const std::vector<std::vector<int>>& keep);

    Point apply(int source_orbit, const Point& p) const;
};

// All tuples of order-preserving injections of Y's arms into X's arms.
std::vector<std::vector<std::vector<int>>> arm_injections(const Shape& X, const Shape& Y);

// All G^s-maps from a transitive X into Y.
std::vector<GMap> transitive_homs(const GSet& X, const GSet& Y);

// All invertible self-maps of a transitive X (expected: just the identity).
std::vector<GMap> automorphisms(const GSet& X);

// The set swap of the flattened products: X x Y -> Y x X. Underlying
// point values are unchanged, only the piece bookkeeping flips.
GMap swap_map(const GSet& X, const GSet& Y);

GMap compose_maps(const GMap& g, const GMap& f);   // g after f

} // namespace delannoy
