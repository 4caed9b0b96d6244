#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "delannoy/amalgam.hpp"
#include "delannoy/gmap.hpp"
#include "delannoy/measure.hpp"
#include "delannoy/scalar.hpp"

namespace delannoy {

// A morphism C(source) -> C(target): a G-invariant function on
// target x source, stored densely against the canonical amalgam order
// of that product.
template <class S>
struct Morph {
    GSet source, target;
    std::vector<S> coeff;
};

using Morphism = Morph<Rational>;

std::string gset_key(const GSet& g);

// Cached canonical orbit list of a product of two GSets (the index set of
// Hom(C(X), C(Y)) is pair_orbits(Y, X)).
const ProductOrbits& pair_orbits(const GSet& first, const GSet& second);

// Convolution structure: for each orbit of Z x X, the integer-weighted
// list of (orbit of Z x Y, orbit of Y x X) pairs arising from the
// stabilizer orbits of Y pinned at the output representative.
struct ConvTerm {
    int alpha;
    int beta;
    long long w;
};
struct ConvTable {
    const ProductOrbits* zx = nullptr;
    const ProductOrbits* zy = nullptr;
    const ProductOrbits* yx = nullptr;
    std::vector<std::vector<ConvTerm>> terms;
};
const ConvTable& conv_table(const GSet& Z, const GSet& Y, const GSet& X);

// Number of threads used when building convolution tables (outputs are
// independent, so results are identical for any value).
void set_threads(int n);
int threads();

template <class S>
Morph<S> morph_zero(const GSet& X, const GSet& Y) {
    return Morph<S>{X, Y, std::vector<S>(pair_orbits(Y, X).size(), S(0))};
}

template <class S>
Morph<S> morph_identity(const GSet& X) {
    Morph<S> m = morph_zero<S>(X, X);
    const ProductOrbits& po = pair_orbits(X, X);
    for (int o = 0; o < static_cast<int>(X.orbits.size()); ++o) {
        Amalgam diag;
        diag.factor_orbits = {o, o};
        diag.words.resize(X.s);
        for (int c = 0; c < X.s; ++c) diag.words[c].assign(X.orbits[o].arms[c], 3u);
        m.coeff[po.index_of(diag)] = S(1);
    }
    return m;
}

// Evaluation at a concrete pair of points (with their piece indices).
template <class S>
S value_at(const Morph<S>& f, int target_piece, const Point& y, int source_piece, const Point& x) {
    const ProductOrbits& po = pair_orbits(f.target, f.source);
    return f.coeff[po.index_of(orbit_of_points({target_piece, source_piece}, {y, x}))];
}

template <class S>
Morph<S> compose(const Morph<S>& psi, const Morph<S>& phi) {
    if (!(phi.target == psi.source)) throw structural_error("compose: middle object mismatch");
    const ConvTable& T = conv_table(psi.target, psi.source, phi.source);
    Morph<S> out{phi.source, psi.target, std::vector<S>(T.zx->size(), S(0))};
    for (std::size_t g = 0; g < T.terms.size(); ++g) {
        S acc(0);
        for (const ConvTerm& t : T.terms[g]) {
            S prod = psi.coeff[t.alpha];
            prod *= phi.coeff[t.beta];
            prod *= S(static_cast<long>(t.w));
            acc += prod;
        }
        out.coeff[g] = acc;
    }
    return out;
}

// Direct sum: concatenated orbit lists, block-extended coefficients.
GSet dsum_obj(const GSet& X, const GSet& Y);

template <class S>
Morph<S> dsum(const Morph<S>& f, const Morph<S>& g) {
    GSet src = dsum_obj(f.source, g.source);
    GSet tgt = dsum_obj(f.target, g.target);
    Morph<S> out = morph_zero<S>(src, tgt);
    const ProductOrbits& po = pair_orbits(tgt, src);
    const int f_src = static_cast<int>(f.source.orbits.size());
    const int f_tgt = static_cast<int>(f.target.orbits.size());
    for (std::size_t i = 0; i < po.size(); ++i) {
        Amalgam a = po.orbits()[i];
        const int ti = a.factor_orbits[0], si = a.factor_orbits[1];
        if (ti < f_tgt && si < f_src) {
            out.coeff[i] = f.coeff[pair_orbits(f.target, f.source).index_of(a)];
        } else if (ti >= f_tgt && si >= f_src) {
            a.factor_orbits = {ti - f_tgt, si - f_src};
            out.coeff[i] = g.coeff[pair_orbits(g.target, g.source).index_of(a)];
        }
    }
    return out;
}

// Tensor product of objects: the flattened canonical product.
GSet tensor_obj(const std::vector<GSet>& factors);

// Tensor over one shared flat factor list. Group i of the morphisms
// consumes src_bases[i] and produces tgt_bases[i]; the result indexes
// against the flat product of the concatenated base lists, so composites
// built over the same base list never disagree about bracketing
// (associators are equalities here).
template <class S>
Morph<S> flat_tensor(const std::vector<Morph<S>>& fs, const std::vector<std::vector<GSet>>& src_bases,
                     const std::vector<std::vector<GSet>>& tgt_bases) {
    const int k = static_cast<int>(fs.size());
    if (k == 0 || src_bases.size() != fs.size() || tgt_bases.size() != fs.size())
        throw structural_error("flat_tensor: group count mismatch");
    const int s = fs[0].source.s;
    GSet pt = GSet::point(s);
    auto group_obj = [&](const std::vector<GSet>& bases) -> GSet {
        if (bases.empty()) return pt;
        if (bases.size() == 1) return bases[0];
        return ProductOrbits(bases).flatten();
    };
    std::vector<GSet> all_src, all_tgt;
    for (int i = 0; i < k; ++i) {
        if (!(group_obj(src_bases[i]) == fs[i].source) || !(group_obj(tgt_bases[i]) == fs[i].target))
            throw structural_error("flat_tensor: group bases do not match morphism types");
        for (const GSet& b : src_bases[i]) all_src.push_back(b);
        for (const GSet& b : tgt_bases[i]) all_tgt.push_back(b);
    }
    if (all_src.empty()) all_src.push_back(pt);
    if (all_tgt.empty()) all_tgt.push_back(pt);
    std::vector<std::unique_ptr<ProductOrbits>> grp_src(k), grp_tgt(k);
    for (int i = 0; i < k; ++i) {
        if (src_bases[i].size() > 1) grp_src[i] = std::make_unique<ProductOrbits>(src_bases[i]);
        if (tgt_bases[i].size() > 1) grp_tgt[i] = std::make_unique<ProductOrbits>(tgt_bases[i]);
    }
    ProductOrbits pts(all_src), ptt(all_tgt);
    GSet X = pts.flatten(), T = ptt.flatten();
    Morph<S> out = morph_zero<S>(X, T);
    const ProductOrbits& po = pair_orbits(T, X);
    for (std::size_t i = 0; i < po.size(); ++i) {
        const Amalgam& a = po.orbits()[i];
        std::vector<Point> rep = po.representative(static_cast<int>(i));
        const Amalgam& ta = ptt.orbits()[a.factor_orbits[0]];
        const Amalgam& sa = pts.orbits()[a.factor_orbits[1]];
        S v(1);
        int soff = 0, toff = 0;
        for (int g = 0; g < k; ++g) {
            const int ns = static_cast<int>(src_bases[g].size());
            const int nt = static_cast<int>(tgt_bases[g].size());
            if (is_zero(v)) break;
            int spiece, tpiece;
            Point spt, tpt;
            if (ns == 0) {
                spiece = 0;
                spt.coords.resize(s);
            } else if (ns == 1) {
                spiece = sa.factor_orbits[soff];
                spt = split_point(sa, rep[1], soff);
            } else {
                std::vector<int> pieces;
                std::vector<Point> pp;
                for (int j = 0; j < ns; ++j) {
                    pieces.push_back(sa.factor_orbits[soff + j]);
                    pp.push_back(split_point(sa, rep[1], soff + j));
                }
                auto [pi, pv] = locate_in_product(*grp_src[g], pieces, pp);
                spiece = pi;
                spt = pv;
            }
            if (nt == 0) {
                tpiece = 0;
                tpt.coords.resize(s);
            } else if (nt == 1) {
                tpiece = ta.factor_orbits[toff];
                tpt = split_point(ta, rep[0], toff);
            } else {
                std::vector<int> pieces;
                std::vector<Point> pp;
                for (int j = 0; j < nt; ++j) {
                    pieces.push_back(ta.factor_orbits[toff + j]);
                    pp.push_back(split_point(ta, rep[0], toff + j));
                }
                auto [pi, pv] = locate_in_product(*grp_tgt[g], pieces, pp);
                tpiece = pi;
                tpt = pv;
            }
            v *= value_at(fs[g], tpiece, tpt, spiece, spt);
            soff += ns;
            toff += nt;
        }
        out.coeff[i] = v;
    }
    return out;
}

template <class S>
Morph<S> tensor_many(const std::vector<Morph<S>>& fs) {
    std::vector<std::vector<GSet>> src, tgt;
    for (const auto& f : fs) {
        src.push_back({f.source});
        tgt.push_back({f.target});
    }
    return flat_tensor(fs, src, tgt);
}

template <class S>
Morph<S> tensor(const Morph<S>& f, const Morph<S>& g) {
    return tensor_many<S>({f, g});
}

// Transpose along self-duality: swap the two slots of the indexing product.
template <class S>
Morph<S> transpose(const Morph<S>& f) {
    Morph<S> out = morph_zero<S>(f.target, f.source);
    const ProductOrbits& po = pair_orbits(f.source, f.target);
    const ProductOrbits& orig = pair_orbits(f.target, f.source);
    for (std::size_t i = 0; i < po.size(); ++i) {
        Amalgam a = po.orbits()[i];
        std::swap(a.factor_orbits[0], a.factor_orbits[1]);
        for (Word& w : a.words)
            for (std::uint32_t& m : w) m = ((m & 1u) << 1) | ((m >> 1) & 1u);
        out.coeff[i] = f.coeff[orig.index_of(a)];
    }
    return out;
}

// Evaluation / coevaluation of the self-dual object C(X): indicators of
// the diagonal orbits of X x X.
template <class S>
Morph<S> ev_morph(const GSet& X) {
    GSet XX = tensor_obj({X, X});
    GSet pt = GSet::point(X.s);
    Morph<S> out = morph_zero<S>(XX, pt);
    const ProductOrbits& xx = pair_orbits(X, X);
    const ProductOrbits& po = pair_orbits(pt, XX);
    for (std::size_t j = 0; j < xx.size(); ++j) {
        const Amalgam& a = xx.orbits()[j];
        bool diag = a.factor_orbits[0] == a.factor_orbits[1];
        for (const Word& w : a.words)
            for (std::uint32_t m : w)
                if (m != 3u) diag = false;
        if (!diag) continue;
        Amalgam b;
        b.factor_orbits = {0, static_cast<int>(j)};
        b.words.resize(X.s);
        for (int c = 0; c < X.s; ++c) b.words[c].assign(XX.orbits[j].arms[c], 2u);
        out.coeff[po.index_of(b)] = S(1);
    }
    return out;
}

template <class S>
Morph<S> coev_morph(const GSet& X) {
    return transpose(ev_morph<S>(X));
}

template <class S>
S trace(const Morph<S>& f) {
    if (!(f.source == f.target)) throw structural_error("trace: endomorphism required");
    const ProductOrbits& po = pair_orbits(f.target, f.source);
    S acc(0);
    for (int o = 0; o < static_cast<int>(f.source.orbits.size()); ++o) {
        Amalgam diag;
        diag.factor_orbits = {o, o};
        diag.words.resize(f.source.s);
        for (int c = 0; c < f.source.s; ++c) diag.words[c].assign(f.source.orbits[o].arms[c], 3u);
        S v = f.coeff[po.index_of(diag)];
        if (f.source.orbits[o].total() % 2 != 0) v *= S(-1);
        acc += v;
    }
    return acc;
}

template <class S>
Morph<S> pullback(const GMap& f) {
    // f: Y -> X induces C(X) -> C(Y), the indicator of the graph.
    Morph<S> out = morph_zero<S>(f.target, f.source);
    const ProductOrbits& po = pair_orbits(f.source, f.target);
    for (std::size_t i = 0; i < po.size(); ++i) {
        const Amalgam& a = po.orbits()[i];
        const int yi = a.factor_orbits[0], xi = a.factor_orbits[1];
        if (f.pieces[yi].target_orbit != xi) continue;
        std::vector<Point> rep = po.representative(static_cast<int>(i));
        if (f.apply(yi, rep[0]) == rep[1]) out.coeff[i] = S(1);
    }
    return out;
}

template <class S>
Morph<S> pushforward(const GMap& f) {
    return transpose(pullback<S>(f));
}

inline std::size_t hom_dim(const GSet& X, const GSet& Y) { return pair_orbits(Y, X).size(); }

// External product across group factors: pieces (i, j) in lex order.
GSet box_obj(const GSet& A, const GSet& B);

template <class S>
Morph<S> box(const Morph<S>& f, const Morph<S>& g) {
    GSet src = box_obj(f.source, g.source);
    GSet tgt = box_obj(f.target, g.target);
    Morph<S> out = morph_zero<S>(src, tgt);
    const ProductOrbits& po = pair_orbits(tgt, src);
    const ProductOrbits& fo = pair_orbits(f.target, f.source);
    const ProductOrbits& go = pair_orbits(g.target, g.source);
    const int s1 = f.source.s;
    const int gsrc = static_cast<int>(g.source.orbits.size());
    const int gtgt = static_cast<int>(g.target.orbits.size());
    for (std::size_t i = 0; i < po.size(); ++i) {
        const Amalgam& a = po.orbits()[i];
        Amalgam af, ag;
        af.factor_orbits = {a.factor_orbits[0] / gtgt, a.factor_orbits[1] / gsrc};
        ag.factor_orbits = {a.factor_orbits[0] % gtgt, a.factor_orbits[1] % gsrc};
        af.words.assign(a.words.begin(), a.words.begin() + s1);
        ag.words.assign(a.words.begin() + s1, a.words.end());
        S v = f.coeff[fo.index_of(af)];
        v *= g.coeff[go.index_of(ag)];
        out.coeff[i] = v;
    }
    return out;
}

// Schwartz algebra structure maps.
template <class S>
Morph<S> schwartz_mult(const GSet& X) {
    return pullback<S>(GMap::diagonal(X));
}
template <class S>
Morph<S> schwartz_unit(const GSet& X) {
    return pullback<S>(GMap::to_point(X));
}

// Scalar arithmetic helpers on morphisms.
template <class S>
Morph<S> add(const Morph<S>& f, const Morph<S>& g) {
    if (!(f.source == g.source && f.target == g.target)) throw structural_error("add: type mismatch");
    Morph<S> out = f;
    for (std::size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += g.coeff[i];
    return out;
}
template <class S>
Morph<S> sub(const Morph<S>& f, const Morph<S>& g) {
    if (!(f.source == g.source && f.target == g.target)) throw structural_error("sub: type mismatch");
    Morph<S> out = f;
    for (std::size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] -= g.coeff[i];
    return out;
}
template <class S>
Morph<S> scale(const Morph<S>& f, const S& c) {
    Morph<S> out = f;
    for (auto& v : out.coeff) v *= c;
    return out;
}
template <class S>
bool is_zero_morph(const Morph<S>& f) {
    for (const auto& v : f.coeff)
        if (!is_zero(v)) return false;
    return true;
}

} // namespace delannoy
