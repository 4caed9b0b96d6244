#include "delannoy/amalgam.hpp"

#include <algorithm>
#include <map>

namespace delannoy {

Limits& limits() {
    static Limits l;
    return l;
}

std::string Shape::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < arms.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(arms[i]);
    }
    return s + ")";
}

std::string GSet::str() const {
    std::string r = "[";
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        if (i) r += " + ";
        r += orbits[i].str();
    }
    return r + "]";
}

bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

bool amalgam_less(const Amalgam& a, const Amalgam& b) {
    if (a.factor_orbits != b.factor_orbits) return a.factor_orbits < b.factor_orbits;
    for (std::size_t c = 0; c < a.words.size(); ++c) {
        if (a.words[c] != b.words[c]) return word_less(a.words[c], b.words[c]);
    }
    return false;
}

std::string amalgam_key(const Amalgam& a) {
    std::string k;
    k.reserve(2 * a.factor_orbits.size() + 8 * a.words.size());
    for (int fo : a.factor_orbits) {
        k.push_back(static_cast<char>(fo & 0xff));
        k.push_back(static_cast<char>((fo >> 8) & 0xff));
        k.push_back(static_cast<char>((fo >> 16) & 0xff));
    }
    for (const Word& w : a.words) {
        k.push_back(static_cast<char>(0xfe));
        for (std::uint32_t m : w) k.push_back(static_cast<char>(m & 0xff));
    }
    return k;
}

namespace {

void gen_words(std::vector<int>& rem, Word& cur, std::vector<Word>& out) {
    bool done = true;
    for (int r : rem)
        if (r > 0) { done = false; break; }
    if (done) {
        out.push_back(cur);
        return;
    }
    const int k = static_cast<int>(rem.size());
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        bool ok = true;
        for (int f = 0; f < k; ++f)
            if ((mask >> f & 1) && rem[f] == 0) { ok = false; break; }
        if (!ok) continue;
        for (int f = 0; f < k; ++f)
            if (mask >> f & 1) --rem[f];
        cur.push_back(mask);
        gen_words(rem, cur, out);
        cur.pop_back();
        for (int f = 0; f < k; ++f)
            if (mask >> f & 1) ++rem[f];
    }
}

void stream_words(std::vector<int>& rem, Word& cur, const std::function<void(const Word&)>& fn) {
    bool done = true;
    for (int r : rem)
        if (r > 0) { done = false; break; }
    if (done) {
        fn(cur);
        return;
    }
    const int k = static_cast<int>(rem.size());
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        bool ok = true;
        for (int f = 0; f < k; ++f)
            if ((mask >> f & 1) && rem[f] == 0) { ok = false; break; }
        if (!ok) continue;
        for (int f = 0; f < k; ++f)
            if (mask >> f & 1) --rem[f];
        cur.push_back(mask);
        stream_words(rem, cur, fn);
        cur.pop_back();
        for (int f = 0; f < k; ++f)
            if (mask >> f & 1) ++rem[f];
    }
}

} // namespace

std::vector<Word> shuffle_words(const std::vector<int>& arms) {
    if (arms.size() > 8) throw resource_error("shuffle_words: more than 8 factors");
    std::vector<int> rem = arms;
    Word cur;
    std::vector<Word> out;
    gen_words(rem, cur, out);
    std::sort(out.begin(), out.end(), word_less);
    if (out.size() > limits().max_product_orbits)
        throw resource_error("shuffle_words: cap exceeded");
    return out;
}

void for_each_shuffle_word(const std::vector<int>& arms, const std::function<void(const Word&)>& fn) {
    std::vector<int> rem = arms;
    Word cur;
    stream_words(rem, cur, fn);
}

long long shuffle_count(const std::vector<int>& arms) {
    // Multi-dimensional Delannoy recurrence on a dense table.
    std::vector<int> dims;
    for (int a : arms) dims.push_back(a + 1);
    std::size_t tot = 1;
    for (int d : dims) tot *= static_cast<std::size_t>(d);
    std::vector<long long> tab(tot, 0);
    const int k = static_cast<int>(arms.size());
    auto at = [&](const std::vector<int>& ix) -> long long& {
        std::size_t p = 0;
        for (int i = 0; i < k; ++i) p = p * dims[i] + ix[i];
        return tab[p];
    };
    std::vector<int> ix(k, 0);
    for (std::size_t flat = 0; flat < tot; ++flat) {
        std::size_t f = flat;
        for (int i = k - 1; i >= 0; --i) { ix[i] = static_cast<int>(f % dims[i]); f /= dims[i]; }
        bool origin = true;
        for (int i = 0; i < k; ++i)
            if (ix[i] != 0) origin = false;
        if (origin) { at(ix) = 1; continue; }
        long long s = 0;
        std::vector<int> jx = ix;
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            bool ok = true;
            for (int i = 0; i < k; ++i)
                if ((mask >> i & 1) && jx[i] == 0) { ok = false; break; }
            if (!ok) continue;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) --jx[i];
            s += at(jx);
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) ++jx[i];
        }
        at(ix) = s;
    }
    std::vector<int> full = arms;
    return at(full);
}

ProductOrbits::ProductOrbits(std::vector<GSet> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw structural_error("ProductOrbits: no factors");
    s_ = factors_[0].s;
    for (const GSet& g : factors_)
        if (g.s != s_) throw structural_error("ProductOrbits: mismatched group factor count");

    const int k = static_cast<int>(factors_.size());
    std::vector<int> tuple(k, 0);
    // Orbit tuples in lex order; per tuple, coordinate word lists are each
    // canonical, and their row-major product is the canonical amalgam order.
    std::function<void(int)> rec = [&](int f) {
        if (f == k) {
            std::vector<std::vector<Word>> per_coord(s_);
            for (int c = 0; c < s_; ++c) {
                std::vector<int> arms(k);
                for (int i = 0; i < k; ++i) arms[i] = factors_[i].orbits[tuple[i]].arms[c];
                per_coord[c] = shuffle_words(arms);
            }
            std::vector<int> wi(s_, 0);
            bool more = true;
            while (more) {
                Amalgam a;
                a.factor_orbits = tuple;
                a.words.resize(s_);
                for (int c = 0; c < s_; ++c) a.words[c] = per_coord[c][wi[c]];
                orbits_.push_back(std::move(a));
                if (orbits_.size() > limits().max_product_orbits)
                    throw resource_error("ProductOrbits: orbit cap exceeded");
                int c = s_ - 1;
                while (c >= 0) {
                    if (static_cast<std::size_t>(++wi[c]) < per_coord[c].size()) break;
                    wi[c] = 0;
                    --c;
                }
                more = c >= 0;
            }
            return;
        }
        for (int o = 0; o < static_cast<int>(factors_[f].orbits.size()); ++o) {
            tuple[f] = o;
            rec(f + 1);
        }
    };
    bool any_empty = false;
    for (const GSet& g : factors_)
        if (g.empty()) any_empty = true;
    if (!any_empty) rec(0);

    index_.reserve(orbits_.size() * 2);
    for (std::size_t i = 0; i < orbits_.size(); ++i) index_[amalgam_key(orbits_[i])] = static_cast<int>(i);
}

int ProductOrbits::index_of(const Amalgam& a) const {
    auto it = index_.find(amalgam_key(a));
    if (it == index_.end()) throw structural_error("ProductOrbits: amalgam not in this product");
    return it->second;
}

Shape ProductOrbits::shape(int idx) const {
    const Amalgam& a = orbits_.at(idx);
    std::vector<int> arms(s_);
    for (int c = 0; c < s_; ++c) arms[c] = static_cast<int>(a.words[c].size());
    return Shape(arms);
}

std::vector<Point> ProductOrbits::representative(int idx) const {
    const Amalgam& a = orbits_.at(idx);
    const int k = static_cast<int>(factors_.size());
    std::vector<Point> pts(k);
    for (int f = 0; f < k; ++f) pts[f].coords.resize(s_);
    for (int c = 0; c < s_; ++c) {
        const Word& w = a.words[c];
        for (std::size_t j = 0; j < w.size(); ++j)
            for (int f = 0; f < k; ++f)
                if (w[j] >> f & 1) pts[f].coords[c].push_back(Q64(static_cast<long long>(j + 1)));
    }
    return pts;
}

GSet ProductOrbits::flatten() const {
    GSet g(s_);
    g.orbits.reserve(orbits_.size());
    for (int i = 0; i < static_cast<int>(orbits_.size()); ++i) g.orbits.push_back(shape(i));
    return g;
}

Amalgam orbit_of_points(const std::vector<int>& factor_orbits, const std::vector<Point>& pts) {
    if (pts.empty()) throw structural_error("orbit_of_points: no points");
    const int k = static_cast<int>(pts.size());
    const int s = static_cast<int>(pts[0].coords.size());
    for (const Point& p : pts) {
        if (static_cast<int>(p.coords.size()) != s)
            throw structural_error("orbit_of_points: mixed factor counts");
        p.validate();
    }
    Amalgam a;
    a.factor_orbits = factor_orbits;
    a.words.resize(s);
    std::vector<std::pair<Q64, int>> vals;
    for (int c = 0; c < s; ++c) {
        vals.clear();
        for (int f = 0; f < k; ++f)
            for (const Q64& v : pts[f].coords[c]) vals.emplace_back(v, f);
        std::sort(vals.begin(), vals.end(), [](const auto& x, const auto& y) {
            if (x.first == y.first) return x.second < y.second;
            return x.first < y.first;
        });
        Word& w = a.words[c];
        for (std::size_t i = 0; i < vals.size();) {
            std::uint32_t mask = 0;
            std::size_t j = i;
            while (j < vals.size() && vals[j].first == vals[i].first) {
                mask |= 1u << vals[j].second;
                ++j;
            }
            w.push_back(mask);
            i = j;
        }
    }
    return a;
}

std::pair<int, Point> locate_in_product(const ProductOrbits& po, const std::vector<int>& pieces,
                                        const std::vector<Point>& pts) {
    Amalgam a = orbit_of_points(pieces, pts);
    int idx = po.index_of(a);
    Point prod;
    prod.coords.resize(po.s());
    for (int c = 0; c < po.s(); ++c) {
        std::vector<Q64> vals;
        for (const Point& p : pts)
            for (const Q64& v : p.coords[c]) vals.push_back(v);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        prod.coords[c] = std::move(vals);
    }
    return {idx, std::move(prod)};
}

Point split_point(const Amalgam& a, const Point& product_point, int factor) {
    const int s = static_cast<int>(a.words.size());
    Point p;
    p.coords.resize(s);
    for (int c = 0; c < s; ++c) {
        const Word& w = a.words[c];
        if (product_point.coords[c].size() != w.size())
            throw structural_error("split_point: point does not match amalgam shape");
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j] >> factor & 1) p.coords[c].push_back(product_point.coords[c][j]);
    }
    return p;
}

} // namespace delannoy
