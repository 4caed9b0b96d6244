#include "delannoy/karoubi.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace delannoy {

KObject kobject_full(const GSet& X) { return KObject{X, morph_identity<Rational>(X)}; }

Label dual_label(const Label& l) {
    Label d = l;
    for (char& c : d) c = (c == 'a') ? 'b' : 'a';
    return d;
}

bool valid_label(const Label& l) {
    for (char c : l)
        if (c != 'a' && c != 'b') return false;
    return true;
}

KObject Registry::simple(const Label& l) const {
    auto it = idems.find(l);
    if (it == idems.end()) throw structural_error("registry: unknown label '" + l + "'");
    return KObject{GSet::schwartz(static_cast<int>(l.size())), it->second};
}

QMat left_compose_op(const Morphism& e, const GSet& X) {
    const ConvTable& T = conv_table(e.target, e.source, X);
    QMat m(T.zx->size(), T.yx->size());
    for (std::size_t g = 0; g < T.terms.size(); ++g)
        for (const ConvTerm& t : T.terms[g]) {
            if (sgn(e.coeff[t.alpha]) == 0) continue;
            m.at(g, t.beta) += Rational(static_cast<long>(t.w)) * e.coeff[t.alpha];
        }
    return m;
}

QMat right_compose_op(const Morphism& e, const GSet& Z) {
    const ConvTable& T = conv_table(Z, e.target, e.source);
    QMat m(T.zx->size(), T.zy->size());
    for (std::size_t g = 0; g < T.terms.size(); ++g)
        for (const ConvTerm& t : T.terms[g]) {
            if (sgn(e.coeff[t.beta]) == 0) continue;
            m.at(g, t.alpha) += Rational(static_cast<long>(t.w)) * e.coeff[t.beta];
        }
    return m;
}

namespace {

std::vector<QVec> column_basis(const QMat& m) {
    QSpan sp(m.rows);
    for (std::size_t j = 0; j < m.cols; ++j) {
        QVec col(m.rows);
        for (std::size_t i = 0; i < m.rows; ++i) col[i] = m.at(i, j);
        sp.add(std::move(col));
    }
    return sp.rows();
}

} // namespace

KObject boxed_simple(const Registry& reg, const LabelTuple& labels) {
    if (labels.empty()) throw structural_error("boxed_simple: empty tuple");
    Morphism e = reg.simple(labels[0]).idem;
    for (std::size_t c = 1; c < labels.size(); ++c) e = box(e, reg.simple(labels[c]).idem);
    GSet amb(static_cast<int>(labels.size()));
    std::vector<int> arms;
    for (const Label& l : labels) arms.push_back(static_cast<int>(l.size()));
    amb.orbits.push_back(Shape(arms));
    if (!(e.source == amb)) throw diagnostic_error("boxed_simple: ambient mismatch");
    return KObject{amb, e};
}

int khom_dim(const KObject& M, const KObject& N) {
    QMat L = left_compose_op(N.idem, M.ambient);
    QMat R = right_compose_op(M.idem, N.ambient);
    std::vector<QVec> cols = column_basis(R);
    QSpan sp(L.rows);
    for (const QVec& v : cols) sp.add(L.apply(v));
    return static_cast<int>(sp.rank());
}

namespace {

// Multiplicity of the boxed simple B inside M: dim e_M Hom e_B.
int block_multiplicity(const KObject& M, const KObject& B) {
    QMat L = left_compose_op(M.idem, B.ambient);
    QMat R = right_compose_op(B.idem, M.ambient);
    std::vector<QVec> cols = column_basis(R);
    QSpan sp(L.rows);
    for (const QVec& v : cols) sp.add(L.apply(v));
    return static_cast<int>(sp.rank());
}

std::vector<Label> labels_up_to(const Registry& reg, int len) {
    if (reg.depth < len) throw resource_error("registry depth insufficient");
    std::vector<Label> out;
    for (const auto& [l, e] : reg.idems)
        if (static_cast<int>(l.size()) <= len) out.push_back(l);
    std::sort(out.begin(), out.end(), [](const Label& x, const Label& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

} // namespace

std::map<LabelTuple, int> decompose_labels(const Registry& reg, const KObject& M) {
    const int s = M.ambient.s;
    std::vector<int> caps(s, 0);
    for (const Shape& sh : M.ambient.orbits)
        for (int c = 0; c < s; ++c) caps[c] = std::max(caps[c], sh.arms[c]);
    std::vector<std::vector<Label>> per_coord(s);
    for (int c = 0; c < s; ++c) per_coord[c] = labels_up_to(reg, caps[c]);

    std::map<LabelTuple, int> out;
    Rational tr_acc(0);
    long long sq_acc = 0;
    std::vector<std::size_t> ix(s, 0);
    bool more = !M.ambient.empty();
    while (more) {
        LabelTuple t(s);
        int total_len = 0;
        for (int c = 0; c < s; ++c) {
            t[c] = per_coord[c][ix[c]];
            total_len += static_cast<int>(t[c].size());
        }
        KObject B = boxed_simple(reg, t);
        int m = block_multiplicity(M, B);
        if (m > 0) {
            out[t] = m;
            tr_acc += Rational(m) * ((total_len % 2 == 0) ? Rational(1) : Rational(-1));
            sq_acc += static_cast<long long>(m) * m;
        }
        int c = s - 1;
        while (c >= 0) {
            if (++ix[c] < per_coord[c].size()) break;
            ix[c] = 0;
            --c;
        }
        more = c >= 0;
    }
    // Exactness cross-checks: the dimension identity and the compressed
    // endomorphism count. Failures would mean an unmatched block.
    if (tr_acc != trace(M.idem)) throw diagnostic_error("decompose: trace mismatch (unmatched block?)");
    if (sq_acc != khom_dim(M, M)) throw diagnostic_error("decompose: End dimension mismatch (unmatched block?)");
    return out;
}

std::vector<Block> decompose(const Registry& reg, const KObject& M) {
    std::map<LabelTuple, int> mults = decompose_labels(reg, M);
    std::vector<Block> blocks;
    Morphism total = morph_zero<Rational>(M.ambient, M.ambient);
    for (const auto& [t, m] : mults) {
        KObject B = boxed_simple(reg, t);
        Block blk;
        blk.label = t;
        blk.multiplicity = m;
        // Inclusions: a basis of e_M Hom(B, M) e_B; projections dually,
        // normalized through the pairing in End_K(B) = k.
        QMat Li = left_compose_op(M.idem, B.ambient);
        QMat Ri = right_compose_op(B.idem, M.ambient);
        std::vector<QVec> incl;
        {
            QSpan sp(Li.rows);
            for (const QVec& v : column_basis(Ri)) {
                QVec w = Li.apply(v);
                if (sp.add(w)) incl.push_back(sp.rows().back());
            }
        }
        QMat Lp = left_compose_op(B.idem, M.ambient);
        QMat Rp = right_compose_op(M.idem, B.ambient);
        std::vector<QVec> proj;
        {
            QSpan sp(Lp.rows);
            for (const QVec& v : column_basis(Rp)) {
                QVec w = Lp.apply(v);
                if (sp.add(w)) proj.push_back(sp.rows().back());
            }
        }
        if (static_cast<int>(incl.size()) != m || static_cast<int>(proj.size()) != m)
            throw diagnostic_error("decompose: block basis size mismatch");
        // Scalar of v o u against the idempotent of B.
        std::size_t ref = 0;
        while (ref < B.idem.coeff.size() && sgn(B.idem.coeff[ref]) == 0) ++ref;
        QMat P(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Morphism u{B.ambient, M.ambient, incl[j]};
                Morphism v{M.ambient, B.ambient, proj[i]};
                Morphism c = compose(v, u);
                Rational scal = c.coeff[ref] / B.idem.coeff[ref];
                Morphism check = scale(B.idem, scal);
                if (!(check.coeff == c.coeff)) throw diagnostic_error("decompose: pairing not scalar");
                P.at(i, j) = scal;
            }
        // Invert the pairing: new projections P^{-1} proj satisfy p o i = id.
        QMat aug(m, 2 * m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) aug.at(i, j) = P.at(i, j);
            aug.at(i, m + i) = 1;
        }
        auto piv = rref(aug);
        if (static_cast<int>(piv.size()) != m || piv.back() >= static_cast<std::size_t>(m))
            throw diagnostic_error("decompose: singular block pairing");
        for (int j = 0; j < m; ++j) {
            Morphism u{B.ambient, M.ambient, incl[j]};
            QVec pv(Lp.rows, Rational(0));
            for (int i = 0; i < m; ++i) {
                Rational c = aug.at(j, m + i);
                if (sgn(c) == 0) continue;
                for (std::size_t k = 0; k < pv.size(); ++k) pv[k] += c * proj[i][k];
            }
            Morphism v{M.ambient, B.ambient, pv};
            Morphism chk = compose(v, u);
            if (!(chk.coeff == B.idem.coeff)) throw diagnostic_error("decompose: p o i != id");
            blk.incl.push_back(u);
            blk.proj.push_back(v);
            total = add(total, compose(u, v));
        }
        blocks.push_back(std::move(blk));
    }
    if (!(total.coeff == M.idem.coeff)) throw diagnostic_error("decompose: splitting does not sum to the idempotent");
    return blocks;
}

bool is_iso(const Registry& reg, const KObject& M, const KObject& N) {
    return decompose_labels(reg, M) == decompose_labels(reg, N);
}

RestrictedObject restrict_base(const GSet& X, int coord) {
    if (coord < 0 || coord >= X.s) throw structural_error("restrict_base: bad coordinate");
    RestrictedObject R;
    R.orig = X;
    R.coord = coord;
    R.base = GSet(X.s + 1);
    for (int o = 0; o < static_cast<int>(X.orbits.size()); ++o) {
        const int n = X.orbits[o].arms[coord];
        for (const Placement& pl : arm_placements(n, 1)) {
            RestrictedObject::PieceInfo info;
            info.orig_piece = o;
            info.slots = pl.slot;
            int l = 0, r = 0;
            for (int s : pl.slot) {
                if (s == 0) ++l;
                else if (s == 2) ++r;
            }
            std::vector<int> arms;
            for (int c = 0; c < X.s; ++c) {
                if (c == coord) {
                    arms.push_back(l);
                    arms.push_back(r);
                } else {
                    arms.push_back(X.orbits[o].arms[c]);
                }
            }
            R.base.orbits.push_back(Shape(arms));
            R.pieces.push_back(std::move(info));
        }
    }
    return R;
}

Point embed_restricted(const RestrictedObject& R, int piece, const Point& p) {
    const RestrictedObject::PieceInfo& info = R.pieces.at(piece);
    const int s = R.orig.s;
    Point q;
    q.coords.resize(s);
    for (int c = 0, rc = 0; c < s; ++c) {
        if (c == R.coord) {
            const auto& left = p.coords[rc];
            const auto& right = p.coords[rc + 1];
            std::size_t il = 0, ir = 0;
            for (int slot : info.slots) {
                if (slot == 0) q.coords[c].push_back(left[il++] - Q64(1000));
                else if (slot == 1) q.coords[c].push_back(Q64(0));
                else q.coords[c].push_back(right[ir++]);
            }
            rc += 2;
        } else {
            q.coords[c] = p.coords[rc];
            rc += 1;
        }
    }
    q.validate();
    return q;
}

Morphism restrict_morphism(const Morphism& f, const RestrictedObject& RY, const RestrictedObject& RX) {
    if (!(f.target == RY.orig) || !(f.source == RX.orig))
        throw structural_error("restrict_morphism: base mismatch");
    Morphism out = morph_zero<Rational>(RX.base, RY.base);
    const ProductOrbits& po = pair_orbits(RY.base, RX.base);
    for (std::size_t i = 0; i < po.size(); ++i) {
        const Amalgam& a = po.orbits()[i];
        std::vector<Point> rep = po.representative(static_cast<int>(i));
        Point y = embed_restricted(RY, a.factor_orbits[0], rep[0]);
        Point x = embed_restricted(RX, a.factor_orbits[1], rep[1]);
        out.coeff[i] = value_at(f, RY.pieces[a.factor_orbits[0]].orig_piece, y,
                                RX.pieces[a.factor_orbits[1]].orig_piece, x);
    }
    return out;
}

KObject restrict_k(const KObject& M, int coord) {
    RestrictedObject R = restrict_base(M.ambient, coord);
    return KObject{R.base, restrict_morphism(M.idem, R, R)};
}

Morphism counit_at_fixed_point(const GSet& base) {
    int hit = -1;
    for (int o = 0; o < static_cast<int>(base.orbits.size()); ++o) {
        if (base.orbits[o].total() == 0) {
            if (hit >= 0) throw structural_error("counit_at_fixed_point: fixed point not unique");
            hit = o;
        }
    }
    if (hit < 0) throw structural_error("counit_at_fixed_point: no fixed point");
    Morphism eps = morph_zero<Rational>(base, GSet::point(base.s));
    const ProductOrbits& po = pair_orbits(GSet::point(base.s), base);
    Amalgam a;
    a.factor_orbits = {0, hit};
    a.words.resize(base.s);
    eps.coeff[po.index_of(a)] = 1;
    return eps;
}

std::map<LabelTuple, int> restriction_formula(const Label& l) {
    const int n = static_cast<int>(l.size());
    std::map<LabelTuple, int> out;
    for (int i = 0; i <= n; ++i) out[{l.substr(0, i), l.substr(i)}]++;          // cuts
    for (int i = 1; i <= n; ++i) out[{l.substr(0, i - 1), l.substr(i)}]++;      // deletions
    return out;
}

RestrictionReport verify_restriction_rule(const Registry& reg, const Label& lambda) {
    RestrictionReport rep;
    rep.lambda = lambda;
    KObject M = restrict_k(reg.simple(lambda), 0);
    rep.computed = decompose_labels(reg, M);
    rep.formula = restriction_formula(lambda);
    rep.ok = rep.computed == rep.formula;
    return rep;
}

std::map<Label, int> tensor_decompose(const Registry& reg, const Label& a, const Label& b) {
    KObject A = reg.simple(a), B = reg.simple(b);
    GSet amb = tensor_obj({A.ambient, B.ambient});
    Morphism e = tensor(A.idem, B.idem);
    std::map<LabelTuple, int> m = decompose_labels(reg, KObject{amb, e});
    std::map<Label, int> out;
    for (const auto& [t, c] : m) out[t[0]] = c;
    return out;
}

int invariant_dim(const Registry& reg, const KObject& M) {
    LabelTuple unit(M.ambient.s, Label{});
    QMat L = left_compose_op(M.idem, boxed_simple(reg, unit).ambient);
    QMat R = right_compose_op(boxed_simple(reg, unit).idem, M.ambient);
    QSpan sp(L.rows);
    for (const QVec& v : column_basis(R)) sp.add(L.apply(v));
    return static_cast<int>(sp.rank());
}

bool dual_label_check(const Registry& reg, const Label& a) {
    const int n = static_cast<int>(a.size());
    std::vector<Label> same_len;
    for (const auto& [l, e] : reg.idems)
        if (static_cast<int>(l.size()) == n) same_len.push_back(l);
    for (const Label& mu : same_len) {
        KObject A = reg.simple(a), B = reg.simple(mu);
        KObject T{tensor_obj({A.ambient, B.ambient}), tensor(A.idem, B.idem)};
        int inv = invariant_dim(reg, T);
        bool expect = (mu == dual_label(a));
        if (inv != (expect ? 1 : 0)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Registry construction.

namespace {

// Multiplication operator of x on End(C(R^(n))), as a dense matrix.
QMat mult_matrix(const ConvTable& T, const QVec& x, bool left) {
    const std::size_t D = T.zx->size();
    QMat m(D, D);
    for (std::size_t g = 0; g < T.terms.size(); ++g)
        for (const ConvTerm& t : T.terms[g]) {
            if (left) {
                if (sgn(x[t.alpha]) != 0) m.at(g, t.beta) += Rational(static_cast<long>(t.w)) * x[t.alpha];
            } else {
                if (sgn(x[t.beta]) != 0) m.at(g, t.alpha) += Rational(static_cast<long>(t.w)) * x[t.beta];
            }
        }
    return m;
}

QVec end_product(const ConvTable& T, const QVec& x, const QVec& y) {
    QVec out(T.zx->size(), Rational(0));
    for (std::size_t g = 0; g < T.terms.size(); ++g) {
        Rational acc(0);
        for (const ConvTerm& t : T.terms[g]) {
            if (sgn(x[t.alpha]) == 0 || sgn(y[t.beta]) == 0) continue;
            acc += Rational(static_cast<long>(t.w)) * x[t.alpha] * y[t.beta];
        }
        out[g] = acc;
    }
    return out;
}

// The exact center of End(C(R^(n))): intersect commutant kernels of
// deterministic trial elements until stable, then certify against every
// basis element; any failure adds the exact constraints and retries.
std::vector<QVec> exact_center(const ConvTable& T) {
    const std::size_t D = T.zx->size();
    std::vector<QVec> K;
    for (std::size_t i = 0; i < D; ++i) {
        QVec e(D, Rational(0));
        e[i] = 1;
        K.push_back(std::move(e));
    }
    auto intersect_with_commutant_of = [&](const QVec& u) {
        QMat L = mult_matrix(T, u, true);
        QMat R = mult_matrix(T, u, false);
        QMat M(D, K.size());
        for (std::size_t j = 0; j < K.size(); ++j) {
            QVec lk = L.apply(K[j]);
            QVec rk = R.apply(K[j]);
            for (std::size_t i = 0; i < D; ++i) M.at(i, j) = lk[i] - rk[i];
        }
        std::vector<QVec> ker = kernel(M);
        std::vector<QVec> K2;
        for (const QVec& c : ker) {
            QVec v(D, Rational(0));
            for (std::size_t j = 0; j < K.size(); ++j) {
                if (sgn(c[j]) == 0) continue;
                for (std::size_t i = 0; i < D; ++i) v[i] += c[j] * K[j][i];
            }
            K2.push_back(std::move(v));
        }
        bool changed = K2.size() != K.size();
        K = std::move(K2);
        return changed;
    };

    int stable = 0;
    for (int t = 1; t <= 16 && stable < 2; ++t) {
        QVec u(D);
        for (std::size_t i = 0; i < D; ++i)
            u[i] = Rational(static_cast<long>((static_cast<long long>(t) * (i + 1) + (i * i) % 17) % 101));
        if (intersect_with_commutant_of(u)) stable = 0;
        else ++stable;
    }
    for (int round = 0; round < 4; ++round) {
        bool ok = true;
        for (const QVec& z : K) {
            QMat Lz = mult_matrix(T, z, true);
            QMat Rz = mult_matrix(T, z, false);
            if (!(Lz.a == Rz.a)) { ok = false; break; }
        }
        if (ok) return K;
        for (std::size_t i = 0; i < D; ++i) {
            QVec b(D, Rational(0));
            b[i] = 1;
            intersect_with_commutant_of(b);
        }
    }
    throw diagnostic_error("exact_center: certification failed");
}

// Split the center into one-dimensional ideals by eigenspace refinement.
std::vector<QVec> split_center(const ConvTable& T, const std::vector<QVec>& K) {
    const std::size_t D = T.zx->size();
    std::vector<std::vector<QVec>> subspaces = {K};
    for (std::size_t zi = 0; zi < K.size(); ++zi) {
        bool all_one = true;
        for (const auto& V : subspaces)
            if (V.size() > 1) all_one = false;
        if (all_one) break;
        QMat W = mult_matrix(T, K[zi], true);
        std::vector<std::vector<QVec>> next;
        for (const auto& V : subspaces) {
            if (V.size() <= 1) {
                next.push_back(V);
                continue;
            }
            QMat Vm = QMat::from_columns(V);
            QMat A(V.size(), V.size());
            for (std::size_t j = 0; j < V.size(); ++j) {
                QVec img = W.apply(V[j]);
                auto sol = solve(Vm, img);
                if (!sol) throw diagnostic_error("split_center: center not closed under multiplication");
                for (std::size_t i = 0; i < V.size(); ++i) A.at(i, j) = (*sol)[i];
            }
            QPoly mp = minimal_polynomial([&](const QVec& v) { return A.apply(v); }, V.size());
            mpz_class den(1);
            for (const auto& x : A.a) den = lcm(den, mpz_class(x.get_den()));
            RootReport roots = rational_roots(mp, den);
            if (!roots.all_real_roots_rational)
                throw diagnostic_error("split_center: center element with irrational spectrum");
            if (roots.roots.size() <= 1) {
                next.push_back(V);
                continue;
            }
            std::size_t covered = 0;
            for (const Rational& lam : roots.roots) {
                QMat Ashift = A;
                for (std::size_t i = 0; i < V.size(); ++i) Ashift.at(i, i) -= lam;
                std::vector<QVec> ker = kernel(Ashift);
                covered += ker.size();
                if (ker.empty()) continue;
                std::vector<QVec> sub;
                for (const QVec& c : ker) {
                    QVec v(D, Rational(0));
                    for (std::size_t j = 0; j < V.size(); ++j) {
                        if (sgn(c[j]) == 0) continue;
                        for (std::size_t i = 0; i < D; ++i) v[i] += c[j] * V[j][i];
                    }
                    sub.push_back(std::move(v));
                }
                next.push_back(std::move(sub));
            }
            if (covered != V.size()) throw diagnostic_error("split_center: non-semisimple action");
        }
        subspaces = std::move(next);
    }
    std::vector<QVec> lines;
    for (auto& V : subspaces) {
        if (V.size() != 1) throw diagnostic_error("split_center: refinement incomplete");
        lines.push_back(std::move(V[0]));
    }
    return lines;
}

} // namespace

void build_registry(Registry& reg, int depth) {
    if (reg.depth < 0) {
        reg.idems[""] = morph_identity<Rational>(GSet::point());
        reg.schwartz_tables[0] = {{"", 1}};
        reg.depth = 0;
    }
    for (int n = reg.depth + 1; n <= depth; ++n) {
        const GSet Rn = GSet::schwartz(n);
        const ConvTable& T = conv_table(Rn, Rn, Rn);
        const std::size_t D = T.zx->size();
        const Morphism id = morph_identity<Rational>(Rn);

        std::vector<QVec> center = exact_center(T);
        std::vector<QVec> lines = split_center(T, center);

        std::vector<Morphism> idems;
        QVec sum(D, Rational(0));
        for (const QVec& v : lines) {
            QVec v2 = end_product(T, v, v);
            std::size_t ref = 0;
            while (ref < D && sgn(v[ref]) == 0) ++ref;
            if (ref == D) throw diagnostic_error("build_registry: zero center line");
            Rational c = v2[ref] / v[ref];
            if (sgn(c) == 0) throw diagnostic_error("build_registry: nilpotent center line");
            QVec e(D);
            for (std::size_t i = 0; i < D; ++i) e[i] = v[i] / c;
            QVec ee = end_product(T, e, e);
            if (!(ee == e)) throw diagnostic_error("build_registry: idempotent check failed");
            for (std::size_t i = 0; i < D; ++i) sum[i] += e[i];
            idems.push_back(Morphism{Rn, Rn, e});
        }
        if (!(sum == id.coeff)) throw diagnostic_error("build_registry: idempotents do not sum to id");
        for (std::size_t i = 0; i < idems.size(); ++i)
            for (std::size_t j = i + 1; j < idems.size(); ++j) {
                QVec p = end_product(T, idems[i].coeff, idems[j].coeff);
                for (const auto& x : p)
                    if (sgn(x) != 0) throw diagnostic_error("build_registry: idempotents not orthogonal");
            }

        // Match blocks against known labels; leftovers are the new
        // length-n simples.
        std::map<Label, int> table;
        std::vector<int> unmatched;
        for (int j = 0; j < static_cast<int>(idems.size()); ++j) {
            const KObject Mj{Rn, idems[j]};
            Rational tr = trace(idems[j]);
            bool matched = false;
            for (const auto& [l, e] : reg.idems) {
                KObject B = reg.simple(l);
                int m = block_multiplicity(Mj, B);
                if (m > 0) {
                    Rational expect = Rational(m) * ((l.size() % 2 == 0) ? Rational(1) : Rational(-1));
                    if (expect != tr) throw diagnostic_error("build_registry: trace/multiplicity mismatch");
                    table[l] += m;
                    matched = true;
                    break;
                }
            }
            if (!matched) unmatched.push_back(j);
        }

        // Label the new simples via the restriction rule: the profile
        // (1, n-1) summand is exactly the i = 1 cut, so the first letter and
        // the tail are read off there; the (n-1, 1) profile cross-checks.
        if (n == 1) {
            if (unmatched.size() != 2) throw diagnostic_error("build_registry: n=1 expects two new blocks");
            // Tie-break convention: "a" has the lexicographically smaller
            // normalized coefficient vector.
            auto normalized = [&](const Morphism& e) {
                QVec v = e.coeff;
                std::size_t ref = 0;
                while (ref < v.size() && sgn(v[ref]) == 0) ++ref;
                Rational inv = 1 / v[ref];
                for (auto& x : v) x *= inv;
                return v;
            };
            QVec va = normalized(idems[unmatched[0]]);
            QVec vb = normalized(idems[unmatched[1]]);
            bool first_is_a = std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
            reg.idems["a"] = idems[unmatched[first_is_a ? 0 : 1]];
            reg.idems["b"] = idems[unmatched[first_is_a ? 1 : 0]];
            table["a"] += 1;
            table["b"] += 1;
        } else if (n >= 2) {
            std::vector<Label> len1 = {"a", "b"}, lenm;
            for (const auto& [l, e] : reg.idems)
                if (static_cast<int>(l.size()) == n - 1) lenm.push_back(l);
            std::map<Label, int> seen_new;
            for (int j : unmatched) {
                const KObject Mj{Rn, idems[j]};
                if (trace(idems[j]) != ((n % 2 == 0) ? Rational(1) : Rational(-1)))
                    throw diagnostic_error("build_registry: new block trace is not (-1)^n");
                KObject Res = restrict_k(Mj, 0);
                Label found_label;
                int hits = 0;
                for (const Label& x : len1)
                    for (const Label& w : lenm) {
                        KObject B = boxed_simple(reg, {x, w});
                        if (block_multiplicity(Res, B) > 0) {
                            found_label = x + w;
                            ++hits;
                        }
                    }
                if (hits != 1) throw diagnostic_error("build_registry: i=1 cut not unique");
                int hits2 = 0;
                Label check;
                for (const Label& w : lenm)
                    for (const Label& y : len1) {
                        KObject B = boxed_simple(reg, {w, y});
                        if (block_multiplicity(Res, B) > 0) {
                            check = w + y;
                            ++hits2;
                        }
                    }
                if (hits2 != 1 || check != found_label)
                    throw diagnostic_error("build_registry: cut cross-check failed for " + found_label);
                if (seen_new.count(found_label))
                    throw diagnostic_error("build_registry: duplicate new label " + found_label);
                seen_new[found_label] = j;
                reg.idems[found_label] = idems[j];
                table[found_label] += 1;
            }
            if (seen_new.size() != (1u << n))
                throw diagnostic_error("build_registry: expected 2^n new simples");
        }
        reg.schwartz_tables[n] = table;
        reg.depth = n;
    }
}

} // namespace delannoy
