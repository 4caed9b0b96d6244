#include "delannoy/measure.hpp"

#include <algorithm>

namespace delannoy {

std::vector<Placement> arm_placements(int n, int p) {
    std::vector<Placement> out;
    Placement cur;
    cur.slot.resize(n);
    // Weakly increasing slot sequences, strict on pin slots.
    std::function<void(int, int)> rec = [&](int idx, int min_slot) {
        if (idx == n) {
            out.push_back(cur);
            return;
        }
        for (int s = min_slot; s <= 2 * p; ++s) {
            cur.slot[idx] = s;
            rec(idx + 1, s % 2 == 0 ? s : s + 1);
        }
    };
    rec(0, 0);
    return out;
}

std::vector<StabOrbit> stabilizer_orbits(const GSet& Y, const Pins& A) {
    if (static_cast<int>(A.size()) != Y.s) throw structural_error("stabilizer_orbits: pin/group mismatch");
    for (const auto& pins : A)
        for (std::size_t i = 1; i < pins.size(); ++i)
            if (!(pins[i - 1] < pins[i])) throw structural_error("stabilizer_orbits: pins not increasing");

    std::vector<StabOrbit> out;
    for (int piece = 0; piece < static_cast<int>(Y.orbits.size()); ++piece) {
        const Shape& sh = Y.orbits[piece];
        std::vector<std::vector<Placement>> per_coord(Y.s);
        for (int c = 0; c < Y.s; ++c)
            per_coord[c] = arm_placements(sh.arms[c], static_cast<int>(A[c].size()));
        std::vector<std::size_t> ix(Y.s, 0);
        bool more = true;
        while (more) {
            StabOrbit o;
            o.piece = piece;
            o.placements.resize(Y.s);
            int free_coords = 0;
            for (int c = 0; c < Y.s; ++c) {
                o.placements[c] = per_coord[c][ix[c]];
                for (int s : o.placements[c].slot)
                    if (s % 2 == 0) ++free_coords;
            }
            o.mass = (free_coords % 2 == 0) ? 1 : -1;
            out.push_back(std::move(o));
            if (out.size() > limits().max_stab_orbits) throw resource_error("stabilizer_orbits: cap exceeded");
            int c = Y.s - 1;
            while (c >= 0) {
                if (++ix[c] < per_coord[c].size()) break;
                ix[c] = 0;
                --c;
            }
            more = c >= 0;
        }
    }
    return out;
}

Point stab_representative(const Shape& piece, const Pins& A, const StabOrbit& o) {
    Point pt;
    const int s = piece.factors();
    pt.coords.resize(s);
    for (int c = 0; c < s; ++c) {
        const auto& pins = A[c];
        const int p = static_cast<int>(pins.size());
        const Placement& pl = o.placements[c];
        // Count occupants per interval slot first, then space them evenly.
        std::vector<int> count(2 * p + 1, 0);
        for (int sl : pl.slot) ++count[sl];
        std::vector<int> seen(2 * p + 1, 0);
        for (int sl : pl.slot) {
            if (sl % 2 == 1) {
                pt.coords[c].push_back(pins[(sl - 1) / 2]);
            } else {
                const int i = sl / 2;             // interval index 0..p
                const int m = count[sl];
                const int t = ++seen[sl];         // 1-based position inside the interval
                Q64 v;
                if (p == 0) {
                    v = Q64(t);
                } else if (i == 0) {
                    v = pins[0] - Q64(m + 1 - t);
                } else if (i == p) {
                    v = pins[p - 1] + Q64(t);
                } else {
                    v = pins[i - 1] + (pins[i] - pins[i - 1]) * Q64(t, m + 1);
                }
                pt.coords[c].push_back(v);
            }
        }
    }
    pt.validate();
    return pt;
}

Rational mu_of_shape(const Shape& sh) {
    return (sh.total() % 2 == 0) ? Rational(1) : Rational(-1);
}

Rational mu_of_set(const GSet& X) {
    Rational r(0);
    for (const Shape& sh : X.orbits) r += mu_of_shape(sh);
    return r;
}

Pins merge_pins(const std::vector<const Point*>& pts, int s) {
    Pins A(s);
    for (int c = 0; c < s; ++c) {
        std::vector<Q64> vals;
        for (const Point* p : pts)
            for (const Q64& v : p->coords[c]) vals.push_back(v);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        A[c] = std::move(vals);
    }
    return A;
}

Rational mu_of_map(const GMap& f) {
    if (f.target.orbits.size() != 1) throw structural_error("mu_of_map: target must be transitive");
    const Shape& X = f.target.orbits[0];
    // Representative of the base: 1..n per coordinate; its coordinates pin
    // the fiber. Within each source piece, the embedded positions are forced
    // onto the pins and the remaining positions fill the gaps between them.
    Rational total(0);
    for (std::size_t o = 0; o < f.source.orbits.size(); ++o) {
        const Shape& sh = f.source.orbits[o];
        const GMapPiece& piece = f.pieces[o];
        // The fiber over the representative is a product of open-interval
        // blocks; compute its measure by enumerating the forced placements.
        Rational contrib(1);
        for (int c = 0; c < f.source.s; ++c) {
            const int n = sh.arms[c];
            const std::vector<int>& emb = piece.embed[c];
            // Free positions between consecutive pinned positions stay inside
            // one open interval; each block of g free coordinates contributes
            // (-1)^g.
            int free_count = n - static_cast<int>(emb.size());
            contrib *= (free_count % 2 == 0) ? Rational(1) : Rational(-1);
        }
        total += contrib;
    }
    return total;
}

} // namespace delannoy
