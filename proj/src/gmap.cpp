#include "delannoy/gmap.hpp"

#include <algorithm>
#include <functional>

namespace delannoy {

GMap GMap::identity(const GSet& X) {
    GMap m;
    m.source = m.target = X;
    for (int o = 0; o < static_cast<int>(X.orbits.size()); ++o) {
        GMapPiece p;
        p.target_orbit = o;
        p.embed.resize(X.s);
        for (int c = 0; c < X.s; ++c)
            for (int i = 0; i < X.orbits[o].arms[c]; ++i) p.embed[c].push_back(i);
        m.pieces.push_back(std::move(p));
    }
    return m;
}

GMap GMap::to_point(const GSet& X) {
    GMap m;
    m.source = X;
    m.target = GSet::point(X.s);
    for (std::size_t o = 0; o < X.orbits.size(); ++o) {
        GMapPiece p;
        p.target_orbit = 0;
        p.embed.assign(X.s, {});
        m.pieces.push_back(std::move(p));
    }
    return m;
}

GMap GMap::diagonal(const GSet& X) {
    ProductOrbits xx({X, X});
    GMap m;
    m.source = X;
    m.target = xx.flatten();
    for (int o = 0; o < static_cast<int>(X.orbits.size()); ++o) {
        Amalgam diag;
        diag.factor_orbits = {o, o};
        diag.words.resize(X.s);
        for (int c = 0; c < X.s; ++c) diag.words[c].assign(X.orbits[o].arms[c], 3u);
        GMapPiece p;
        p.target_orbit = xx.index_of(diag);
        p.embed.resize(X.s);
        for (int c = 0; c < X.s; ++c)
            for (int i = 0; i < X.orbits[o].arms[c]; ++i) p.embed[c].push_back(i);
        m.pieces.push_back(std::move(p));
    }
    return m;
}

GMap GMap::coordinate_projection(const Shape& X, const std::vector<std::vector<int>>& keep) {
    const int s = X.factors();
    if (static_cast<int>(keep.size()) != s) throw structural_error("coordinate_projection: bad keep list");
    std::vector<int> arms(s);
    for (int c = 0; c < s; ++c) {
        for (std::size_t i = 0; i < keep[c].size(); ++i) {
            if (keep[c][i] < 0 || keep[c][i] >= X.arms[c]) throw structural_error("coordinate_projection: out of range");
            if (i && keep[c][i] <= keep[c][i - 1]) throw structural_error("coordinate_projection: not increasing");
        }
        arms[c] = static_cast<int>(keep[c].size());
    }
    GMap m;
    m.source = GSet(s, {X});
    m.target = GSet(s, {Shape(arms)});
    GMapPiece p;
    p.target_orbit = 0;
    p.embed = keep;
    m.pieces.push_back(std::move(p));
    return m;
}

Point GMap::apply(int source_orbit, const Point& p) const {
    const GMapPiece& piece = pieces.at(source_orbit);
    Point q;
    q.coords.resize(source.s);
    for (int c = 0; c < source.s; ++c)
        for (int pos : piece.embed[c]) q.coords[c].push_back(p.coords[c].at(pos));
    return q;
}

std::vector<std::vector<std::vector<int>>> arm_injections(const Shape& X, const Shape& Y) {
    if (X.factors() != Y.factors()) throw structural_error("arm_injections: group mismatch");
    const int s = X.factors();
    std::vector<std::vector<std::vector<int>>> per_coord(s);
    for (int c = 0; c < s; ++c) {
        const int n = X.arms[c], m = Y.arms[c];
        if (m > n) return {};   // no injection of a longer arm
        // All increasing m-subsets of [0, n).
        std::vector<int> sel(m);
        std::function<void(int, int)> rec = [&](int idx, int start) {
            if (idx == m) { per_coord[c].push_back(sel); return; }
            for (int v = start; v <= n - (m - idx); ++v) {
                sel[idx] = v;
                rec(idx + 1, v + 1);
            }
        };
        rec(0, 0);
    }
    // Cartesian product over coordinates.
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> ix(s, 0);
    bool more = true;
    while (more) {
        std::vector<std::vector<int>> tup(s);
        for (int c = 0; c < s; ++c) tup[c] = per_coord[c][ix[c]];
        out.push_back(std::move(tup));
        int c = s - 1;
        while (c >= 0) {
            if (static_cast<std::size_t>(++ix[c]) < per_coord[c].size()) break;
            ix[c] = 0;
            --c;
        }
        more = c >= 0;
    }
    return out;
}

std::vector<GMap> transitive_homs(const GSet& X, const GSet& Y) {
    if (X.s != Y.s) throw structural_error("transitive_homs: group mismatch");
    if (X.orbits.size() != 1) throw structural_error("transitive_homs: source must be transitive");
    std::vector<GMap> out;
    for (int t = 0; t < static_cast<int>(Y.orbits.size()); ++t) {
        for (auto& emb : arm_injections(X.orbits[0], Y.orbits[t])) {
            GMap m;
            m.source = X;
            m.target = Y;
            GMapPiece p;
            p.target_orbit = t;
            p.embed = emb;
            m.pieces.push_back(std::move(p));
            out.push_back(std::move(m));
        }
    }
    return out;
}

GMap compose_maps(const GMap& g, const GMap& f) {
    if (!(f.target == g.source)) throw structural_error("compose_maps: middle mismatch");
    GMap m;
    m.source = f.source;
    m.target = g.target;
    for (const GMapPiece& fp : f.pieces) {
        const GMapPiece& gp = g.pieces.at(fp.target_orbit);
        GMapPiece p;
        p.target_orbit = gp.target_orbit;
        p.embed.resize(m.source.s);
        for (int c = 0; c < m.source.s; ++c)
            for (int pos : gp.embed[c]) p.embed[c].push_back(fp.embed[c].at(pos));
        m.pieces.push_back(std::move(p));
    }
    return m;
}

GMap swap_map(const GSet& X, const GSet& Y) {
    ProductOrbits xy({X, Y});
    ProductOrbits yx({Y, X});
    GMap m;
    m.source = xy.flatten();
    m.target = yx.flatten();
    for (std::size_t k = 0; k < xy.size(); ++k) {
        Amalgam a = xy.orbits()[k];
        std::swap(a.factor_orbits[0], a.factor_orbits[1]);
        for (Word& w : a.words)
            for (std::uint32_t& mask : w) mask = ((mask & 1u) << 1) | ((mask >> 1) & 1u);
        GMapPiece p;
        p.target_orbit = yx.index_of(a);
        p.embed.resize(m.source.s);
        for (int c = 0; c < m.source.s; ++c)
            for (int i = 0; i < m.source.orbits[k].arms[c]; ++i) p.embed[c].push_back(i);
        m.pieces.push_back(std::move(p));
    }
    return m;
}

std::vector<GMap> automorphisms(const GSet& X) {
    if (X.orbits.size() != 1) throw structural_error("automorphisms: transitive X required");
    std::vector<GMap> homs = transitive_homs(X, X);
    GMap id = GMap::identity(X);
    std::vector<GMap> out;
    for (const GMap& f : homs) {
        for (const GMap& g : homs) {
            if (compose_maps(g, f) == id && compose_maps(f, g) == id) {
                out.push_back(f);
                break;
            }
        }
    }
    return out;
}

} // namespace delannoy
