#pragma once

#include <compare>
#include <string>
#include <vector>

#include "delannoy/base.hpp"

namespace delannoy {

// A transitive G^s-set: the product of increasing-tuple spaces, one arm
// per group factor. arms = (n_1, ..., n_s) denotes R^(n_1) x ... x R^(n_s).
struct Shape {
    std::vector<int> arms;

    Shape() = default;
    explicit Shape(std::vector<int> a) : arms(std::move(a)) {
        if (arms.empty()) throw structural_error("Shape: needs at least one group factor");
        for (int n : arms)
            if (n < 0) throw structural_error("Shape: negative arm");
    }

    int factors() const { return static_cast<int>(arms.size()); }
    int total() const {
        int t = 0;
        for (int n : arms) t += n;
        return t;
    }
    bool is_point() const { return total() == 0; }

    friend bool operator==(const Shape&, const Shape&) = default;
    friend auto operator<=>(const Shape&, const Shape&) = default;

    std::string str() const;
};

// A finitary smooth G^s-set: an ordered list of transitive pieces.
// List order is part of the identity (morphism vectors index against it).
struct GSet {
    int s = 1;
    std::vector<Shape> orbits;

    GSet() = default;
    explicit GSet(int s_, std::vector<Shape> o = {}) : s(s_), orbits(std::move(o)) {
        if (s < 1) throw structural_error("GSet: s >= 1 required");
        for (const Shape& sh : orbits)
            if (sh.factors() != s) throw structural_error("GSet: mixed factor counts");
    }

    static GSet point(int s_ = 1) { return GSet(s_, {Shape(std::vector<int>(s_, 0))}); }
    // R^(n) over G, or a single transitive piece over G^s.
    static GSet schwartz(int n) { return GSet(1, {Shape({n})}); }
    static GSet transitive(std::vector<int> arms) {
        int s_ = static_cast<int>(arms.size());
        return GSet(s_, {Shape(std::move(arms))});
    }

    bool empty() const { return orbits.empty(); }
    std::size_t size() const { return orbits.size(); }
    int total_arm() const {
        int t = 0;
        for (const Shape& sh : orbits) t += sh.total();
        return t;
    }

    GSet disjoint_union(const GSet& other) const {
        if (s != other.s) throw structural_error("disjoint_union: group mismatch");
        GSet r = *this;
        r.orbits.insert(r.orbits.end(), other.orbits.begin(), other.orbits.end());
        return r;
    }

    friend bool operator==(const GSet&, const GSet&) = default;

    std::string str() const;
};

// A point of a transitive piece: per group factor, a strictly increasing
// vector of rationals.
struct Point {
    std::vector<std::vector<Q64>> coords;

    Point() = default;
    explicit Point(std::vector<std::vector<Q64>> c) : coords(std::move(c)) { validate(); }

    void validate() const {
        for (const auto& arm : coords)
            for (std::size_t i = 1; i < arm.size(); ++i)
                if (!(arm[i - 1] < arm[i])) throw structural_error("Point: arm not strictly increasing");
    }

    Shape shape() const {
        std::vector<int> arms;
        arms.reserve(coords.size());
        for (const auto& arm : coords) arms.push_back(static_cast<int>(arm.size()));
        return Shape(arms);
    }

    friend bool operator==(const Point&, const Point&) = default;
};

} // namespace delannoy
