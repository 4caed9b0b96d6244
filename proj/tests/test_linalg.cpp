#include "doctest.h"

#include "delannoy/linalg.hpp"

using namespace delannoy;

TEST_CASE("rref, rank, kernel, solve") {
    QMat m(3, 4);
    // rows: [1 2 0 1; 2 4 1 0; 3 6 1 1] -> rank 2
    long vals[3][4] = {{1, 2, 0, 1}, {2, 4, 1, 0}, {3, 6, 1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = Rational(vals[i][j]);
    CHECK(rank(m) == 2);
    auto ker = kernel(m);
    CHECK(ker.size() == 2);
    for (const QVec& v : ker) {
        QVec out = m.apply(v);
        for (const auto& x : out) CHECK(sgn(x) == 0);
    }

    QMat A(2, 2);
    A.at(0, 0) = 2; A.at(0, 1) = 1; A.at(1, 0) = 1; A.at(1, 1) = 1;
    auto x = solve(A, {Rational(3), Rational(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rational(1));
    CHECK((*x)[1] == Rational(1));
    QMat B(2, 1);
    B.at(0, 0) = 1; B.at(1, 0) = 1;
    CHECK(!solve(B, {Rational(1), Rational(2)}).has_value());
}

TEST_CASE("QSpan accumulates independent vectors") {
    QSpan sp(3);
    CHECK(sp.add({Rational(1), Rational(1), Rational(0)}));
    CHECK(sp.add({Rational(0), Rational(1), Rational(1)}));
    CHECK(!sp.add({Rational(1), Rational(2), Rational(1)}));
    CHECK(sp.rank() == 2);
    CHECK(sp.contains({Rational(2), Rational(3), Rational(1)}));
    CHECK(!sp.contains({Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("minimal polynomial of a diagonal operator") {
    // diag(1, 1, -2): minimal polynomial (x-1)(x+2).
    auto apply = [](const QVec& v) {
        QVec w = v;
        w[2] *= Rational(-2);
        return w;
    };
    QPoly m = minimal_polynomial(apply, 3);
    REQUIRE(m.size() == 3);
    CHECK(poly_eval(m, Rational(1)) == Rational(0));
    CHECK(poly_eval(m, Rational(-2)) == Rational(0));
}

TEST_CASE("rational root extraction") {
    // (x-1)(x-2)(x+3)
    QPoly p = poly_mul(poly_mul({Rational(-1), Rational(1)}, {Rational(-2), Rational(1)}),
                       {Rational(3), Rational(1)});
    RootReport r = rational_roots(p, 1);
    REQUIRE(r.roots.size() == 3);
    CHECK(r.all_real_roots_rational);
    CHECK(r.roots[0] == Rational(-3));
    CHECK(r.roots[1] == Rational(1));
    CHECK(r.roots[2] == Rational(2));

    // x^2 - 2: irrational roots are detected, not invented.
    QPoly q = {Rational(-2), Rational(0), Rational(1)};
    RootReport rq = rational_roots(q, 1000);
    CHECK(rq.roots.empty());
    CHECK(!rq.all_real_roots_rational);

    // (2x-1)(x-3) with denominator bound 2.
    QPoly h = poly_mul({Rational(-1), Rational(2)}, {Rational(-3), Rational(1)});
    RootReport rh = rational_roots(h, 2);
    REQUIRE(rh.roots.size() == 2);
    CHECK(rh.all_real_roots_rational);
    CHECK(rh.roots[0] == Rational(1) / 2);
    CHECK(rh.roots[1] == Rational(3));

    // Repeated roots are handled through the squarefree part: (x-5)^3.
    QPoly c = poly_mul(poly_mul({Rational(-5), Rational(1)}, {Rational(-5), Rational(1)}),
                       {Rational(-5), Rational(1)});
    RootReport rc = rational_roots(c, 1);
    REQUIRE(rc.roots.size() == 1);
    CHECK(rc.roots[0] == Rational(5));
}
