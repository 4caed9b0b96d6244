#include "doctest.h"

#include "delannoy/karoubi.hpp"

using namespace delannoy;

namespace {
Registry& reg2() {
    static Registry reg;
    static bool built = [] {
        build_registry(reg, 2);
        return true;
    }();
    (void)built;
    return reg;
}
} // namespace

TEST_CASE("registry depth 1: C(R) = L_a + 1 + L_b") {
    Registry& reg = reg2();
    REQUIRE(reg.depth >= 1);
    CHECK(reg.schwartz_tables.at(1) == std::map<Label, int>{{"", 1}, {"a", 1}, {"b", 1}});
    CHECK(trace(reg.idems.at("")) == Rational(1));
    CHECK(trace(reg.idems.at("a")) == Rational(-1));
    CHECK(trace(reg.idems.at("b")) == Rational(-1));
    CHECK(reg.simple("").ambient == GSet::point());
}

TEST_CASE("registry depth 2: binomial multiplicities") {
    Registry& reg = reg2();
    std::map<Label, int> expect = {{"", 1}, {"a", 2}, {"b", 2}, {"aa", 1}, {"ab", 1}, {"ba", 1}, {"bb", 1}};
    CHECK(reg.schwartz_tables.at(2) == expect);
    long long sq = 0;
    for (const auto& [l, m] : reg.schwartz_tables.at(2)) sq += static_cast<long long>(m) * m;
    CHECK(sq == 13);
    for (const auto& [l, e] : reg.idems) {
        Rational expect_dim = (l.size() % 2 == 0) ? Rational(1) : Rational(-1);
        CHECK(trace(e) == expect_dim);
    }
}

TEST_CASE("khom dimensions against simples") {
    Registry& reg = reg2();
    KObject R2 = kobject_full(GSet::schwartz(2));
    CHECK(khom_dim(reg.simple("a"), R2) == 2);
    CHECK(khom_dim(reg.simple(""), R2) == 1);
    CHECK(khom_dim(reg.simple("ab"), R2) == 1);
    CHECK(khom_dim(reg.simple("a"), reg.simple("b")) == 0);
    CHECK(khom_dim(reg.simple("a"), reg.simple("a")) == 1);
    CHECK(!is_iso(reg, reg.simple("a"), reg.simple("b")));
}

TEST_CASE("decompose with splitting morphisms") {
    Registry& reg = reg2();
    for (int n : {0, 1, 2}) {
        KObject M = kobject_full(GSet::schwartz(n));
        auto blocks = decompose(reg, M);   // proj o incl = id verified inside
        int total = 0;
        for (const auto& b : blocks) total += b.multiplicity;
        if (n == 0) CHECK(total == 1);
        if (n == 1) CHECK(total == 3);
        if (n == 2) CHECK(total == 9);
        for (const auto& b : blocks) CHECK(static_cast<int>(b.incl.size()) == b.multiplicity);
    }
}

TEST_CASE("restriction of the base splits a coordinate at a pin") {
    RestrictedObject R = restrict_base(GSet::schwartz(1), 0);
    REQUIRE(R.base.orbits.size() == 3);
    // slot order left-to-right: (-inf,0), {0}, (0,inf)
    CHECK(R.base.orbits[0] == Shape({1, 0}));
    CHECK(R.base.orbits[1] == Shape({0, 0}));
    CHECK(R.base.orbits[2] == Shape({0, 1}));
    RestrictedObject R2 = restrict_base(GSet::schwartz(2), 0);
    CHECK(R2.base.orbits.size() == 5);
}

TEST_CASE("restriction is functorial") {
    GSet X = GSet::schwartz(1), Y = GSet::schwartz(2);
    RestrictedObject RX = restrict_base(X, 0), RY = restrict_base(Y, 0);
    unsigned state = 99;
    auto rnd = [&]() {
        state = state * 1664525u + 1013904223u;
        return Rational(static_cast<long>((state >> 20) % 5) - 2);
    };
    Morphism f = morph_zero<Rational>(X, Y);
    for (auto& c : f.coeff) c = rnd();
    Morphism g = morph_zero<Rational>(Y, X);
    for (auto& c : g.coeff) c = rnd();
    Morphism lhs = restrict_morphism(compose(g, f), RX, RX);
    Morphism rhs = compose(restrict_morphism(g, RX, RY), restrict_morphism(f, RY, RX));
    CHECK(lhs.coeff == rhs.coeff);
    CHECK(restrict_morphism(morph_identity<Rational>(Y), RY, RY).coeff ==
          morph_identity<Rational>(RY.base).coeff);
}

TEST_CASE("restriction rule: formula side") {
    auto f = restriction_formula("ab");
    std::map<LabelTuple, int> expect = {
        {{"", "ab"}, 1}, {{"a", "b"}, 1}, {{"ab", ""}, 1}, {{"a", ""}, 1}, {{"", "b"}, 1}};
    CHECK(f == expect);
    auto fa = restriction_formula("a");
    std::map<LabelTuple, int> ea = {{{"", "a"}, 1}, {{"a", ""}, 1}, {{"", ""}, 1}};
    CHECK(fa == ea);
    auto fe = restriction_formula("");
    std::map<LabelTuple, int> ee = {{{"", ""}, 1}};
    CHECK(fe == ee);
}

TEST_CASE("restriction rule verified for all labels of length <= 2") {
    Registry& reg = reg2();
    for (const auto& [l, e] : reg.idems) {
        RestrictionReport rep = verify_restriction_rule(reg, l);
        INFO("label ", l);
        CHECK(rep.ok);
    }
}

TEST_CASE("restrict(L_empty) and invariants of restrictions") {
    Registry& reg = reg2();
    KObject M = restrict_k(reg.simple(""), 0);
    auto labels = decompose_labels(reg, M);
    std::map<LabelTuple, int> expect = {{{"", ""}, 1}};
    CHECK(labels == expect);
    // Gamma of Res L_lambda is one-dimensional iff len <= 1.
    for (const auto& [l, e] : reg.idems) {
        KObject R = restrict_k(reg.simple(l), 0);
        CHECK(invariant_dim(reg, R) == (l.size() <= 1 ? 1 : 0));
    }
}

TEST_CASE("tensor product rules from the registry") {
    Registry& reg = reg2();
    std::map<Label, int> aa = tensor_decompose(reg, "a", "a");
    CHECK(aa == std::map<Label, int>{{"aa", 2}, {"a", 1}});
    std::map<Label, int> bb = tensor_decompose(reg, "b", "b");
    CHECK(bb == std::map<Label, int>{{"bb", 2}, {"b", 1}});
    std::map<Label, int> ab = tensor_decompose(reg, "a", "b");
    CHECK(ab == std::map<Label, int>{{"ab", 1}, {"ba", 1}, {"a", 1}, {"b", 1}, {"", 1}});
    std::map<Label, int> ue = tensor_decompose(reg, "", "ba");
    CHECK(ue == std::map<Label, int>{{"ba", 1}});
}

TEST_CASE("duality: the dual label swaps letters") {
    Registry& reg = reg2();
    CHECK(dual_label("ab") == "ba");
    CHECK(dual_label("") == "");
    for (const auto& [l, e] : reg.idems)
        if (l.size() <= 2) CHECK(dual_label_check(reg, l));
}

TEST_CASE("counit at the fixed point") {
    RestrictedObject R = restrict_base(GSet::schwartz(1), 0);
    Morphism eps = counit_at_fixed_point(R.base);
    CHECK(eps.target == GSet::point(2));
    int nz = 0;
    for (const auto& c : eps.coeff)
        if (sgn(c) != 0) ++nz;
    CHECK(nz == 1);
}
