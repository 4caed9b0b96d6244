#pragma once

#include <vector>

#include "delannoy/gmap.hpp"
#include "delannoy/gset.hpp"
#include "delannoy/scalar.hpp"

namespace delannoy {

// A finite pinned-point set, per group coordinate, strictly increasing.
using Pins = std::vector<std::vector<Q64>>;

// One coordinate of a placement: slot of each arm position, left to right.
// Slot 2*i is the open interval between pins i-1 and i (i = 0 .. p), slot
// 2*i+1 is pin i. Slots weakly increase along the arm; a pin slot holds at
// most one coordinate.
struct Placement {
    std::vector<int> slot;
};

// One G(A)-orbit of a transitive piece: a placement per group coordinate.
// mass = (-1)^(number of coordinates landing in open intervals).
struct StabOrbit {
    int piece = 0;
    std::vector<Placement> placements;
    int mass = 1;
};

// Placements of one arm of length n against p pins, in slot-lex order.
std::vector<Placement> arm_placements(int n, int p);

// All G(A)-orbits of Y, pieces in order, placements in slot-lex order
// (coordinates nested left to right). Frozen enumeration order.
std::vector<StabOrbit> stabilizer_orbits(const GSet& Y, const Pins& A);

// Representative point of a stabilizer orbit: pinned coordinates take the
// pin values; interval coordinates are equally spaced inside the interval.
Point stab_representative(const Shape& piece, const Pins& A, const StabOrbit& o);

// The normalized measure with mu(R^(n)) = (-1)^n: additive over orbits,
// multiplicative over group-coordinate arms.
Rational mu_of_shape(const Shape& sh);
Rational mu_of_set(const GSet& X);

// mu of a map onto a transitive base: the measure of the fiber over a
// representative, as a G(A)-set for A = the representative's coordinates.
Rational mu_of_map(const GMap& f);

Pins merge_pins(const std::vector<const Point*>& pts, int s);

} // namespace delannoy
