#include "doctest.h"

#include "delannoy/measure.hpp"
#include "delannoy/morphism.hpp"

using namespace delannoy;

TEST_CASE("mu on sets") {
    CHECK(mu_of_set(GSet::schwartz(2)) == Rational(1));
    CHECK(mu_of_set(GSet::schwartz(3)) == Rational(-1));
    CHECK(mu_of_set(GSet(1)) == Rational(0));                       // empty G-set
    CHECK(mu_of_set(GSet::point()) == Rational(1));
    // R x R as a G-set: orbits of shapes 2, 1, 2 (diagonal first).
    GSet rr = tensor_obj({GSet::schwartz(1), GSet::schwartz(1)});
    REQUIRE(rr.orbits.size() == 3);
    CHECK(mu_of_set(rr) == Rational(1));
}

TEST_CASE("stabilizer orbits of R at one pin") {
    Pins A{{Q64(0)}};
    auto orbs = stabilizer_orbits(GSet::schwartz(1), A);
    REQUIRE(orbs.size() == 3);
    // Enumeration scans slots left to right: (-inf,0), {0}, (0,inf).
    CHECK(orbs[0].mass == -1);
    CHECK(orbs[1].mass == 1);
    CHECK(orbs[2].mass == -1);
    Point left = stab_representative(Shape({1}), A, orbs[0]);
    Point pin = stab_representative(Shape({1}), A, orbs[1]);
    Point right = stab_representative(Shape({1}), A, orbs[2]);
    CHECK(left.coords[0][0] < Q64(0));
    CHECK(pin.coords[0][0] == Q64(0));
    CHECK(Q64(0) < right.coords[0][0]);
}

TEST_CASE("stabilizer orbits with no pins") {
    auto orbs = stabilizer_orbits(GSet::schwartz(1), Pins{{}});
    REQUIRE(orbs.size() == 1);
    CHECK(orbs[0].mass == -1);
}

TEST_CASE("stabilizer masses sum to mu") {
    // Placement enumeration is the independent oracle here; the sum rule
    // ties it to the measure. |A| <= 2, arms <= 3, a few shapes.
    std::vector<GSet> sets = {GSet::schwartz(1), GSet::schwartz(2), GSet::schwartz(3),
                              GSet::transitive({2, 1}), GSet::transitive({3, 2})};
    std::vector<Pins> pinsets1 = {Pins{{}}, Pins{{Q64(0)}}, Pins{{Q64(0), Q64(1)}}};
    for (const GSet& Y : sets) {
        std::vector<Pins> pinsets;
        if (Y.s == 1) pinsets = pinsets1;
        else
            pinsets = {Pins{{}, {}}, Pins{{Q64(0)}, {}}, Pins{{Q64(0)}, {Q64(2), Q64(5)}}};
        for (const Pins& A : pinsets) {
            Rational sum(0);
            for (const StabOrbit& o : stabilizer_orbits(Y, A)) sum += Rational(o.mass);
            CHECK(sum == mu_of_set(Y));
        }
    }
    // R^(2) against one pin: five orbits, masses summing to mu(R^(2)) = 1.
    auto orbs = stabilizer_orbits(GSet::schwartz(2), Pins{{Q64(0)}});
    CHECK(orbs.size() == 5);
}

TEST_CASE("stabilizer representatives are exact and ordered") {
    Pins A{{Q64(-1), Q64(1)}};
    for (const StabOrbit& o : stabilizer_orbits(GSet::schwartz(3), A)) {
        Point p = stab_representative(Shape({3}), A, o);
        p.validate();
    }
}

TEST_CASE("mu of maps") {
    // Coordinate projection R^(2) -> R^(1): fiber is an interval copy of R.
    GMap drop2 = GMap::coordinate_projection(Shape({2}), {{0}});
    CHECK(mu_of_map(drop2) == Rational(-1));
    GMap drop1 = GMap::coordinate_projection(Shape({2}), {{1}});
    CHECK(mu_of_map(drop1) == Rational(-1));
    // Identity has point fibers.
    for (int n = 0; n <= 4; ++n) CHECK(mu_of_map(GMap::identity(GSet::schwartz(n))) == Rational(1));
    // R^(n) -> point recovers mu(R^(n)).
    for (int n = 0; n <= 5; ++n)
        CHECK(mu_of_map(GMap::to_point(GSet::schwartz(n))) == ((n % 2 == 0) ? Rational(1) : Rational(-1)));
}

TEST_CASE("mu is multiplicative over products") {
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) {
            GSet prod = tensor_obj({GSet::schwartz(n), GSet::schwartz(m)});
            CHECK(mu_of_set(prod) == mu_of_set(GSet::schwartz(n)) * mu_of_set(GSet::schwartz(m)));
        }
    GSet prod = tensor_obj({GSet::schwartz(3), GSet::schwartz(3)});
    CHECK(mu_of_set(prod) == Rational(1));
}

TEST_CASE("isomorphism invariance: shifted pins give equal stabilizer data") {
    for (auto shift : {Q64(3), Q64(-2), Q64(1, 2)}) {
        Pins A{{Q64(0), Q64(1)}};
        Pins B{{Q64(0) + shift, Q64(1) + shift}};
        auto oa = stabilizer_orbits(GSet::schwartz(3), A);
        auto ob = stabilizer_orbits(GSet::schwartz(3), B);
        REQUIRE(oa.size() == ob.size());
        for (std::size_t i = 0; i < oa.size(); ++i) CHECK(oa[i].mass == ob[i].mass);
    }
}
