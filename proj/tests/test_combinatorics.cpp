#include "doctest.h"

#include "delannoy/amalgam.hpp"
#include "delannoy/gmap.hpp"

using namespace delannoy;

namespace {

// Independent oracle: Delannoy recurrence D(m,n) = D(m-1,n) + D(m,n-1) + D(m-1,n-1).
long long delannoy_number(int n, int m) {
    if (n == 0 || m == 0) return 1;
    return delannoy_number(n - 1, m) + delannoy_number(n, m - 1) + delannoy_number(n - 1, m - 1);
}

} // namespace

TEST_CASE("orbit counts of binary products are Delannoy numbers") {
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m) {
            ProductOrbits po({GSet::schwartz(n), GSet::schwartz(m)});
            CHECK(po.size() == static_cast<std::size_t>(delannoy_number(n, m)));
            CHECK(shuffle_count({n, m}) == delannoy_number(n, m));
        }
}

TEST_CASE("R x R has the three expected amalgams, diagonal first") {
    ProductOrbits po({GSet::schwartz(1), GSet::schwartz(1)});
    REQUIRE(po.size() == 3);
    CHECK(po.orbits()[0].words[0] == Word{3u});        // {1,2}
    CHECK(po.orbits()[1].words[0] == Word{1u, 2u});    // {1}{2}
    CHECK(po.orbits()[2].words[0] == Word{2u, 1u});    // {2}{1}
}

TEST_CASE("point x point is a single empty amalgam") {
    ProductOrbits po({GSet::schwartz(0), GSet::schwartz(0)});
    REQUIRE(po.size() == 1);
    CHECK(po.orbits()[0].words[0].empty());
}

TEST_CASE("orbit_of_points matches forced patterns") {
    // (3.5) and (3.5) in R x R -> diagonal.
    Point a{{{Q64(7, 2)}}};
    Amalgam d = orbit_of_points({0, 0}, {a, a});
    CHECK(d.words[0] == Word{3u});

    // (1,4) and (2) in R^(2) x R^(1) -> {1}{2}{1}.
    Point p{{{Q64(1), Q64(4)}}};
    Point q{{{Q64(2)}}};
    Amalgam w = orbit_of_points({0, 0}, {p, q});
    CHECK(w.words[0] == Word{1u, 2u, 1u});
}

TEST_CASE("representative round-trips through orbit_of_points") {
    // All amalgams of R^(2) x R^(2) (13 of them) and a bigger product.
    for (auto factors : {std::vector<GSet>{GSet::schwartz(2), GSet::schwartz(2)},
                         std::vector<GSet>{GSet::schwartz(3), GSet::schwartz(3)},
                         std::vector<GSet>{GSet::schwartz(2), GSet::schwartz(1), GSet::schwartz(2)}}) {
        ProductOrbits po(factors);
        for (int i = 0; i < static_cast<int>(po.size()); ++i) {
            std::vector<Point> rep = po.representative(i);
            Amalgam back = orbit_of_points(po.orbits()[i].factor_orbits, rep);
            CHECK(po.index_of(back) == i);
        }
    }
}

TEST_CASE("round-trip over multi-factor groups") {
    GSet X = GSet::transitive({2, 1});
    GSet Y = GSet::transitive({1, 2});
    ProductOrbits po({X, Y});
    CHECK(po.size() == static_cast<std::size_t>(shuffle_count({2, 1}) * shuffle_count({1, 2})));
    for (int i = 0; i < static_cast<int>(po.size()); ++i) {
        std::vector<Point> rep = po.representative(i);
        CHECK(po.index_of(orbit_of_points(po.orbits()[i].factor_orbits, rep)) == i);
    }
}

TEST_CASE("mismatched group factor counts are rejected") {
    CHECK_THROWS_AS(ProductOrbits({GSet::schwartz(1), GSet::transitive({1, 1})}), structural_error);
}

TEST_CASE("split_point recovers tensor factors") {
    ProductOrbits po({GSet::schwartz(2), GSet::schwartz(1)});
    for (int i = 0; i < static_cast<int>(po.size()); ++i) {
        std::vector<Point> rep = po.representative(i);
        Shape sh = po.shape(i);
        // Rebuild the product point from the word and split it again.
        Point prod;
        prod.coords.resize(1);
        for (int j = 0; j < sh.arms[0]; ++j) prod.coords[0].push_back(Q64(j + 1));
        CHECK(split_point(po.orbits()[i], prod, 0) == rep[0]);
        CHECK(split_point(po.orbits()[i], prod, 1) == rep[1]);
    }
}

TEST_CASE("transitive hom counts are products of binomials") {
    auto binom = [](int n, int k) {
        if (k < 0 || k > n) return 0LL;
        long long r = 1;
        for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
        return r;
    };
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m) {
            auto homs = transitive_homs(GSet::schwartz(n), GSet::schwartz(m));
            CHECK(homs.size() == static_cast<std::size_t>(binom(n, m)));
        }
    // X = R^(2), Y = R^(1): exactly the two coordinate drops.
    auto homs = transitive_homs(GSet::schwartz(2), GSet::schwartz(1));
    REQUIRE(homs.size() == 2);
    CHECK(homs[0].pieces[0].embed[0] == std::vector<int>{0});
    CHECK(homs[1].pieces[0].embed[0] == std::vector<int>{1});
    // No injection of a longer arm.
    CHECK(transitive_homs(GSet::schwartz(1), GSet::schwartz(2)).empty());
    // Identity is the unique self-map of R^(n).
    CHECK(transitive_homs(GSet::schwartz(3), GSet::schwartz(3)).size() == 1);

    GSet prod = GSet::transitive({2, 2});
    auto homs2 = transitive_homs(prod, prod);
    CHECK(homs2.size() == 1);
}

TEST_CASE("automorphisms of transitive sets are trivial") {
    for (int n = 0; n <= 4; ++n) {
        auto auts = automorphisms(GSet::schwartz(n));
        REQUIRE(auts.size() == 1);
        CHECK(auts[0] == GMap::identity(GSet::schwartz(n)));
    }
    auto auts = automorphisms(GSet::transitive({2, 2}));
    REQUIRE(auts.size() == 1);
    CHECK(auts[0] == GMap::identity(GSet::transitive({2, 2})));
    // total arm length 6
    CHECK(automorphisms(GSet::transitive({3, 3})).size() == 1);
}
