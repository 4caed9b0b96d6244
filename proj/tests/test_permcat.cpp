#include "doctest.h"

#include "delannoy/morphism.hpp"

#include <algorithm>

using namespace delannoy;

namespace {

// Deterministic 0/1 morphism for law tests.
template <class S>
Morph<S> unit_pattern(const GSet& X, const GSet& Y, unsigned seed) {
    Morph<S> m = morph_zero<S>(X, Y);
    unsigned state = seed * 2654435761u + 1;
    for (auto& c : m.coeff) {
        state = state * 1664525u + 1013904223u;
        c = S((state >> 16) & 1u);
    }
    return m;
}

long long delannoy_number(int n, int m) {
    if (n == 0 || m == 0) return 1;
    return delannoy_number(n - 1, m) + delannoy_number(n, m - 1) + delannoy_number(n - 1, m - 1);
}

} // namespace

TEST_CASE("identity convention and hom dimensions") {
    Morphism id1 = morph_identity<Rational>(GSet::schwartz(1));
    REQUIRE(id1.coeff.size() == 3);
    CHECK(id1.coeff[0] == Rational(1));  // diagonal orbit comes first
    CHECK(id1.coeff[1] == Rational(0));
    CHECK(id1.coeff[2] == Rational(0));
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m)
            CHECK(hom_dim(GSet::schwartz(n), GSet::schwartz(m)) ==
                  static_cast<std::size_t>(delannoy_number(n, m)));
    CHECK(hom_dim(GSet::schwartz(0), GSet::schwartz(4)) == 1);
}

TEST_CASE("direct sums concatenate") {
    GSet d = dsum_obj(GSet::schwartz(0), GSet::schwartz(1));
    CHECK(d.orbits.size() == 2);
    Morphism id = dsum(morph_identity<Rational>(GSet::schwartz(0)), morph_identity<Rational>(GSet::schwartz(1)));
    Morphism idd = morph_identity<Rational>(d);
    CHECK(id.coeff == idd.coeff);
}

TEST_CASE("unit laws of convolution") {
    for (int n = 0; n <= 3; ++n) {
        GSet X = GSet::schwartz(n);
        Morphism id = morph_identity<Rational>(X);
        Morphism f = unit_pattern<Rational>(X, X, 7 + n);
        CHECK(compose(id, f).coeff == f.coeff);
        CHECK(compose(f, id).coeff == f.coeff);
        CHECK(compose(id, id).coeff == id.coeff);
    }
}

TEST_CASE("pushforward then pullback of a projection is -id") {
    GSet R2 = GSet::schwartz(2), R1 = GSet::schwartz(1);
    for (int keep : {0, 1}) {
        GMap f = GMap::coordinate_projection(Shape({2}), {{keep}});
        Morphism up = pullback<Rational>(f);    // C(R^1) -> C(R^2)
        Morphism down = pushforward<Rational>(f);
        Morphism round = compose(down, up);
        Morphism id = morph_identity<Rational>(R1);
        CHECK(round.coeff == scale(id, Rational(-1)).coeff);
    }
}

TEST_CASE("counit against unit gives the dimension") {
    for (int n = 0; n <= 3; ++n) {
        GSet X = GSet::schwartz(n);
        Morphism u = schwartz_unit<Rational>(X);                    // 1 -> C(X)
        Morphism eps = pushforward<Rational>(GMap::to_point(X));    // C(X) -> 1
        Morphism pairing = compose(eps, u);
        REQUIRE(pairing.coeff.size() == 1);
        CHECK(pairing.coeff[0] == mu_of_set(X));
    }
}

TEST_CASE("associativity of convolution") {
    std::vector<GSet> objs = {GSet::schwartz(1), GSet::schwartz(2)};
    for (const GSet& X : objs)
        for (const GSet& Y : objs)
            for (const GSet& Z : objs)
                for (const GSet& W : objs) {
                    Morphism f = unit_pattern<Rational>(X, Y, 3);
                    Morphism g = unit_pattern<Rational>(Y, Z, 5);
                    Morphism h = unit_pattern<Rational>(Z, W, 11);
                    CHECK(compose(h, compose(g, f)).coeff == compose(compose(h, g), f).coeff);
                }
}

TEST_CASE("associativity through big objects") {
    GSet R4 = GSet::schwartz(4), R3 = GSet::schwartz(3);
    Morphism f = unit_pattern<Rational>(R4, R3, 13);
    Morphism g = unit_pattern<Rational>(R3, R4, 17);
    Morphism h = unit_pattern<Rational>(R4, R4, 19);
    CHECK(compose(h, compose(g, f)).coeff == compose(compose(h, g), f).coeff);
}

TEST_CASE("tensor: units and dimensions") {
    GSet R1 = GSet::schwartz(1);
    Morphism id2 = tensor(morph_identity<Rational>(R1), morph_identity<Rational>(R1));
    Morphism idp = morph_identity<Rational>(tensor_obj({R1, R1}));
    CHECK(id2.coeff == idp.coeff);
    CHECK(trace(idp) == Rational(1));   // dim C(R) tensor C(R) = (-1)(-1)
}

TEST_CASE("interchange law") {
    GSet R1 = GSet::schwartz(1), R2 = GSet::schwartz(2);
    Morphism f = unit_pattern<Rational>(R1, R2, 2);
    Morphism f2 = unit_pattern<Rational>(R2, R1, 3);
    Morphism g = unit_pattern<Rational>(R1, R1, 4);
    Morphism g2 = unit_pattern<Rational>(R1, R1, 6);
    Morphism lhs = tensor(compose(f2, f), compose(g2, g));
    Morphism rhs = compose(tensor(f2, g2), tensor(f, g));
    CHECK(lhs.coeff == rhs.coeff);
}

TEST_CASE("transpose is an involutive anti-homomorphism") {
    GSet R1 = GSet::schwartz(1), R2 = GSet::schwartz(2);
    Morphism f = unit_pattern<Rational>(R1, R2, 8);
    Morphism g = unit_pattern<Rational>(R2, R1, 9);
    CHECK(transpose(transpose(f)).coeff == f.coeff);
    CHECK(transpose(compose(g, f)).coeff == compose(transpose(f), transpose(g)).coeff);
}

TEST_CASE("snake identities on small objects") {
    for (auto X : {GSet::schwartz(0), GSet::schwartz(1), GSet::schwartz(2), GSet::transitive({1, 1})}) {
        Morphism idX = morph_identity<Rational>(X);
        Morphism ev = ev_morph<Rational>(X);
        Morphism coev = coev_morph<Rational>(X);
        // Both legs built over the same flat X,X,X factor list.
        Morphism left = flat_tensor<Rational>({ev, idX}, {{X, X}, {X}}, {{}, {X}});
        Morphism right = flat_tensor<Rational>({idX, coev}, {{X}, {}}, {{X}, {X, X}});
        REQUIRE(left.source == right.target);
        Morphism snake = compose(left, right);
        CHECK(snake.coeff == idX.coeff);
        Morphism left2 = flat_tensor<Rational>({idX, ev}, {{X}, {X, X}}, {{X}, {}});
        Morphism right2 = flat_tensor<Rational>({coev, idX}, {{}, {X}}, {{X, X}, {X}});
        Morphism snake2 = compose(left2, right2);
        CHECK(snake2.coeff == idX.coeff);
    }
}

TEST_CASE("trace of identity is the measure") {
    for (int n = 0; n <= 4; ++n)
        CHECK(trace(morph_identity<Rational>(GSet::schwartz(n))) == mu_of_set(GSet::schwartz(n)));
    GSet prod = tensor_obj({GSet::schwartz(2), GSet::schwartz(1)});
    CHECK(trace(morph_identity<Rational>(prod)) == Rational(-1));
}

TEST_CASE("pullback of identity, and functoriality on a chain") {
    GSet R2 = GSet::schwartz(2);
    CHECK(pullback<Rational>(GMap::identity(R2)).coeff == morph_identity<Rational>(R2).coeff);
    // pullback is contravariantly functorial: (g o f)^* = f^* o g^*.
    GMap f = GMap::coordinate_projection(Shape({3}), {{0, 2}});
    GMap g = GMap::coordinate_projection(Shape({2}), {{1}});
    GMap gf = compose_maps(g, f);
    Morphism lhs = pullback<Rational>(gf);
    Morphism rhs = compose(pullback<Rational>(f), pullback<Rational>(g));
    CHECK(lhs.coeff == rhs.coeff);
}

TEST_CASE("schwartz multiplication is commutative, associative, unital") {
    for (auto X : {GSet::schwartz(0), GSet::schwartz(1), GSet::transitive({1, 1})}) {
        Morphism m = schwartz_mult<Rational>(X);
        Morphism u = schwartz_unit<Rational>(X);
        Morphism id = morph_identity<Rational>(X);
        // unit law: m o (u tensor id) = id (after the unitor, which is an
        // equality of flat products here).
        Morphism ui = tensor(u, id);
        CHECK(compose(m, ui).coeff == id.coeff);
        // commutativity: m o braiding = m.
        Morphism c = pullback<Rational>(swap_map(X, X));
        CHECK(compose(m, c).coeff == m.coeff);
        // associativity: m o (m tensor id) = m o (id tensor m) over X,X,X.
        Morphism mi = flat_tensor<Rational>({m, id}, {{X, X}, {X}}, {{X}, {X}});
        Morphism im = flat_tensor<Rational>({id, m}, {{X}, {X, X}}, {{X}, {X}});
        Morphism lhs = compose(m, mi);
        Morphism rhs = compose(m, im);
        CHECK(lhs.coeff == rhs.coeff);
    }
}

TEST_CASE("mult tensor id is the pullback of the doubled diagonal") {
    // The bridge that lets bigger algebra axioms reduce to G-map identities:
    // for pullback-type morphisms the tensor is again a pullback.
    GSet X = GSet::schwartz(1);
    Morphism m = schwartz_mult<Rational>(X);
    Morphism id = morph_identity<Rational>(X);
    Morphism mi = flat_tensor<Rational>({m, id}, {{X, X}, {X}}, {{X}, {X}});
    // The underlying set map X^2 -> X^3, (x, y) -> (x, x, y).
    ProductOrbits p3({X, X, X});
    ProductOrbits p2({X, X});
    GMap d;
    d.source = p2.flatten();
    d.target = p3.flatten();
    for (std::size_t k = 0; k < p2.size(); ++k) {
        std::vector<Point> rep = p2.representative(static_cast<int>(k));
        auto [piece, pt] = locate_in_product(p3, {p2.orbits()[k].factor_orbits[0],
                                                  p2.orbits()[k].factor_orbits[0],
                                                  p2.orbits()[k].factor_orbits[1]},
                                             {rep[0], rep[0], rep[1]});
        GMapPiece gp;
        gp.target_orbit = piece;
        gp.embed.resize(1);
        // Positions of the doubled point's values inside the merged tuple.
        for (const Q64& v : pt.coords[0]) (void)v;
        std::vector<Q64> merged = pt.coords[0];
        GSet tgt_piece = GSet(1, {p3.shape(piece)});
        // source point of the flat pair (x,y): its merged values
        std::vector<Q64> src_vals;
        for (const Q64& v : rep[0].coords[0]) src_vals.push_back(v);
        for (const Q64& v : rep[1].coords[0]) src_vals.push_back(v);
        std::sort(src_vals.begin(), src_vals.end());
        src_vals.erase(std::unique(src_vals.begin(), src_vals.end()), src_vals.end());
        for (const Q64& v : merged) {
            auto it = std::find(src_vals.begin(), src_vals.end(), v);
            gp.embed[0].push_back(static_cast<int>(it - src_vals.begin()));
        }
        d.pieces.push_back(std::move(gp));
    }
    CHECK(mi.coeff == pullback<Rational>(d).coeff);
}

TEST_CASE("prime-field scalar mode satisfies the same laws") {
    using F = Fp<7>;
    GSet R1 = GSet::schwartz(1), R2 = GSet::schwartz(2);
    Morph<F> f = unit_pattern<F>(R1, R2, 2);
    Morph<F> g = unit_pattern<F>(R2, R2, 3);
    Morph<F> h = unit_pattern<F>(R2, R1, 4);
    CHECK(compose(h, compose(g, f)).coeff == compose(compose(h, g), f).coeff);
    Morph<F> id = morph_identity<F>(R2);
    CHECK(compose(id, g).coeff == g.coeff);
    Morph<F> ev = ev_morph<F>(R1);
    Morph<F> coev = coev_morph<F>(R1);
    Morph<F> idx = morph_identity<F>(R1);
    Morph<F> left = flat_tensor<F>({ev, idx}, {{R1, R1}, {R1}}, {{}, {R1}});
    Morph<F> right = flat_tensor<F>({idx, coev}, {{R1}, {}}, {{R1}, {R1, R1}});
    CHECK(compose(left, right).coeff == idx.coeff);
}
