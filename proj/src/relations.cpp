#include "delannoy/relations.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <functional>
#include <unordered_map>

namespace delannoy {

namespace {

inline bool bit(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }
inline void set_bit(Bits& b, int i) { b[i >> 6] |= 1ull << (i & 63); }
inline std::size_t popcount(const Bits& b) {
    std::size_t n = 0;
    for (auto w : b) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
}
inline bool subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

// Projections of a 3-factor shuffle column mask onto factor pairs.
inline std::uint32_t proj12(std::uint32_t m) { return m & 3u; }
inline std::uint32_t proj13(std::uint32_t m) { return (m & 1u) | ((m >> 2 & 1u) << 1); }
inline std::uint32_t proj23(std::uint32_t m) { return (m >> 1 & 1u) | ((m >> 2 & 1u) << 1); }

Word project_word(const Word& w, std::uint32_t (*proj)(std::uint32_t)) {
    Word out;
    for (std::uint32_t m : w) {
        std::uint32_t p = proj(m);
        if (p) out.push_back(p);
    }
    return out;
}

} // namespace

int RelationContext::block_of(int pair_id) const {
    int lo = 0, hi = static_cast<int>(blocks_.size()) - 1;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (blocks_[mid].offset <= pair_id) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

RelationContext::RelationContext(GSet X) : base_(std::move(X)) {
    for (const Shape& sh : base_.orbits)
        for (int a : sh.arms)
            if (a > limits().max_relation_arm)
                throw resource_error("relation enumeration: arm exceeds cap");

    const ProductOrbits& pp = pair_orbits(base_, base_);
    pair_count_ = pp.size();
    np_ = static_cast<int>(base_.orbits.size());
    const int s = base_.s;

    // Pair blocks: canonical order is (i, j) lex, then row-major over the
    // per-coordinate shortlex word lists.
    int offset = 0;
    for (int i = 0; i < np_; ++i)
        for (int j = 0; j < np_; ++j) {
            PairBlock b;
            b.pi = i;
            b.pj = j;
            b.offset = offset;
            b.words.resize(s);
            b.word_id.resize(s);
            int size = 1;
            for (int c = 0; c < s; ++c) {
                b.words[c] = shuffle_words({base_.orbits[i].arms[c], base_.orbits[j].arms[c]});
                for (int k = 0; k < static_cast<int>(b.words[c].size()); ++k) b.word_id[c][b.words[c][k]] = k;
                size *= static_cast<int>(b.words[c].size());
            }
            b.strides.assign(s, 1);
            for (int c = s - 2; c >= 0; --c)
                b.strides[c] = b.strides[c + 1] * static_cast<int>(b.words[c + 1].size());
            // Consistency with the canonical product index.
            {
                Amalgam a;
                a.factor_orbits = {i, j};
                a.words.resize(s);
                for (int c = 0; c < s; ++c) a.words[c] = b.words[c].front();
                if (pp.index_of(a) != offset) throw diagnostic_error("pair block layout mismatch");
            }
            offset += size;
            blocks_.push_back(std::move(b));
        }
    if (offset != static_cast<int>(pair_count_)) throw diagnostic_error("pair block size mismatch");

    // Diagonals and the swap involution.
    for (int i = 0; i < np_; ++i) {
        Amalgam d;
        d.factor_orbits = {i, i};
        d.words.resize(s);
        for (int c = 0; c < s; ++c) d.words[c].assign(base_.orbits[i].arms[c], 3u);
        diagonal_.push_back(pp.index_of(d));
    }
    swap_.resize(pair_count_);
    for (std::size_t k = 0; k < pair_count_; ++k) {
        Amalgam a = pp.orbits()[k];
        std::swap(a.factor_orbits[0], a.factor_orbits[1]);
        for (Word& w : a.words)
            for (std::uint32_t& m : w) m = ((m & 1u) << 1) | ((m >> 1) & 1u);
        swap_[k] = pp.index_of(a);
    }

    // Triple tables, grouped per coordinate.
    for (int i = 0; i < np_; ++i)
        for (int j = 0; j < np_; ++j)
            for (int k = 0; k < np_; ++k) {
                TripleBlock tb;
                tb.pi = i;
                tb.pj = j;
                tb.pk = k;
                tb.coord.resize(s);
                for (int c = 0; c < s; ++c) {
                    CoordTable& ct = tb.coord[c];
                    const PairBlock& b12 = blocks_[i * np_ + j];
                    const PairBlock& b23 = blocks_[j * np_ + k];
                    const PairBlock& b13 = blocks_[i * np_ + k];
                    ct.n12 = static_cast<int>(b12.words[c].size());
                    ct.n23 = static_cast<int>(b23.words[c].size());
                    ct.n13 = static_cast<int>(b13.words[c].size());
                    ct.mask_words_13 = (ct.n13 + 63) / 64;
                    ct.mask_words_23 = (ct.n23 + 63) / 64;
                    ct.mask_words_12 = (ct.n12 + 63) / 64;
                    ct.fwd.assign(static_cast<std::size_t>(ct.n12) * ct.n23,
                                  std::vector<std::uint64_t>());
                    ct.left.assign(static_cast<std::size_t>(ct.n12) * ct.n13,
                                   std::vector<std::uint64_t>());
                    ct.right.assign(static_cast<std::size_t>(ct.n13) * ct.n23,
                                    std::vector<std::uint64_t>());
                    std::size_t count = 0;
                    for_each_shuffle_word(
                        {base_.orbits[i].arms[c], base_.orbits[j].arms[c], base_.orbits[k].arms[c]},
                        [&](const Word& w) {
                            ++count;
                            int u = b12.word_id[c].at(project_word(w, proj12));
                            int v = b23.word_id[c].at(project_word(w, proj23));
                            int t = b13.word_id[c].at(project_word(w, proj13));
                            auto& f = ct.fwd[static_cast<std::size_t>(u) * ct.n23 + v];
                            if (f.empty()) f.assign(ct.mask_words_13, 0);
                            f[t >> 6] |= 1ull << (t & 63);
                            auto& l = ct.left[static_cast<std::size_t>(u) * ct.n13 + t];
                            if (l.empty()) l.assign(ct.mask_words_23, 0);
                            l[v >> 6] |= 1ull << (v & 63);
                            auto& r = ct.right[static_cast<std::size_t>(t) * ct.n23 + v];
                            if (r.empty()) r.assign(ct.mask_words_12, 0);
                            r[u >> 6] |= 1ull << (u & 63);
                        });
                    if (count > limits().max_triple_words)
                        throw resource_error("relation enumeration: triple word cap exceeded");
                }
                triples_.push_back(std::move(tb));
            }
}

Bits RelationContext::make_bits(const std::vector<int>& ids) const {
    Bits b((pair_count_ + 63) / 64, 0);
    for (int i : ids) set_bit(b, i);
    return b;
}

std::vector<int> RelationContext::bits_to_ids(const Bits& b) const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < pair_count_; ++i)
        if (bit(b, static_cast<int>(i))) ids.push_back(static_cast<int>(i));
    return ids;
}

namespace {

// Decompose a pair id into per-coordinate local word ids.
void decompose_id(int local, const std::vector<int>& strides, std::vector<int>& out) {
    for (std::size_t c = 0; c < strides.size(); ++c) {
        out[c] = local / strides[c];
        local %= strides[c];
    }
}

} // namespace

// Iterate the product of per-coordinate masks, invoking fn with the local
// index (mixed radix against `strides`); returns false to stop early.
template <class Fn>
static void product_masks(const std::vector<const std::vector<std::uint64_t>*>& masks,
                          const std::vector<int>& strides, Fn&& fn) {
    const int s = static_cast<int>(masks.size());
    std::vector<std::vector<int>> ids(s);
    for (int c = 0; c < s; ++c) {
        const auto& m = *masks[c];
        for (std::size_t w = 0; w < m.size(); ++w) {
            std::uint64_t x = m[w];
            while (x) {
                int b = __builtin_ctzll(x);
                ids[c].push_back(static_cast<int>(w * 64 + b));
                x &= x - 1;
            }
        }
        if (ids[c].empty()) return;
    }
    std::vector<std::size_t> ix(s, 0);
    while (true) {
        int local = 0;
        for (int c = 0; c < s; ++c) local += ids[c][ix[c]] * strides[c];
        fn(local);
        int c = s - 1;
        while (c >= 0) {
            if (++ix[c] < ids[c].size()) break;
            ix[c] = 0;
            --c;
        }
        if (c < 0) break;
    }
}

bool RelationContext::is_equivalence(const Bits& S) const {
    for (int d : diagonal_)
        if (!bit(S, d)) return false;
    std::vector<int> members = bits_to_ids(S);
    for (int m : members)
        if (!bit(S, swap_[m])) return false;
    // Transitivity, orbitwise: for p12, p23 in S with matching middle
    // piece, every induced p13 lies in S.
    const int s = base_.s;
    std::vector<int> lu(s), lv(s);
    for (int p : members) {
        const PairBlock& bp = blocks_[block_of(p)];
        decompose_id(p - bp.offset, bp.strides, lu);
        for (int q : members) {
            const PairBlock& bq = blocks_[block_of(q)];
            if (bq.pi != bp.pj) continue;
            decompose_id(q - bq.offset, bq.strides, lv);
            const TripleBlock& tb = triples_[(bp.pi * np_ + bp.pj) * np_ + bq.pj];
            const PairBlock& bt = blocks_[bp.pi * np_ + bq.pj];
            std::vector<const std::vector<std::uint64_t>*> masks(s);
            bool empty = false;
            for (int c = 0; c < s; ++c) {
                const CoordTable& ct = tb.coord[c];
                const auto& mask = ct.fwd[static_cast<std::size_t>(lu[c]) * ct.n23 + lv[c]];
                if (mask.empty()) { empty = true; break; }
                masks[c] = &mask;
            }
            if (empty) continue;
            bool ok = true;
            product_masks(masks, bt.strides, [&](int local) {
                if (!bit(S, bt.offset + local)) ok = false;
            });
            if (!ok) return false;
        }
    }
    return true;
}

bool RelationContext::triple_condition(const Bits& S) const {
    // The three pairwise equalities of the E-idempotent compatibility
    // condition, as implication families over triple orbits.
    std::vector<int> members = bits_to_ids(S);
    const int s = base_.s;
    std::vector<int> lu(s), lv(s);
    auto run = [&](int which) {
        for (int p : members) {
            const PairBlock& bp = blocks_[block_of(p)];
            decompose_id(p - bp.offset, bp.strides, lu);
            for (int q : members) {
                const PairBlock& bq = blocks_[block_of(q)];
                decompose_id(q - bq.offset, bq.strides, lv);
                // which 0: p=p12, q=p23 -> p13; 1: p=p12, q=p13 -> p23;
                // 2: p=p13, q=p23 -> p12.
                int i, j, k;
                if (which == 0) {
                    if (bp.pj != bq.pi) continue;
                    i = bp.pi; j = bp.pj; k = bq.pj;
                } else if (which == 1) {
                    if (bp.pi != bq.pi) continue;
                    i = bp.pi; j = bp.pj; k = bq.pj;
                } else {
                    if (bp.pj != bq.pj) continue;
                    i = bp.pi; k = bp.pj; j = bq.pi;
                }
                const TripleBlock& tb = triples_[(i * np_ + j) * np_ + k];
                const PairBlock* bt;
                std::vector<const std::vector<std::uint64_t>*> masks(s);
                bool empty = false;
                for (int c = 0; c < s; ++c) {
                    const CoordTable& ct = tb.coord[c];
                    const std::vector<std::uint64_t>* mask = nullptr;
                    if (which == 0) mask = &ct.fwd[static_cast<std::size_t>(lu[c]) * ct.n23 + lv[c]];
                    else if (which == 1) mask = &ct.left[static_cast<std::size_t>(lu[c]) * ct.n13 + lv[c]];
                    else mask = &ct.right[static_cast<std::size_t>(lu[c]) * ct.n23 + lv[c]];
                    if (mask->empty()) { empty = true; break; }
                    masks[c] = mask;
                }
                if (empty) continue;
                if (which == 0) bt = &blocks_[i * np_ + k];
                else if (which == 1) bt = &blocks_[j * np_ + k];
                else bt = &blocks_[i * np_ + j];
                bool ok = true;
                product_masks(masks, bt->strides, [&](int local) {
                    if (!bit(S, bt->offset + local)) ok = false;
                });
                if (!ok) return false;
            }
        }
        return true;
    };
    return run(0) && run(1) && run(2);
}

namespace {
struct CloseState {
    Bits S;
    std::vector<int> members;
    std::deque<int> queue;
};
} // namespace

Bits RelationContext::closure(const Bits& seed) const {
    const int s = base_.s;
    CloseState st;
    st.S.assign((pair_count_ + 63) / 64, 0);
    auto push = [&](int id) {
        if (bit(st.S, id)) return;
        set_bit(st.S, id);
        st.members.push_back(id);
        st.queue.push_back(id);
    };
    for (int d : diagonal_) push(d);
    for (std::size_t i = 0; i < pair_count_; ++i)
        if (bit(seed, static_cast<int>(i))) push(static_cast<int>(i));

    std::vector<int> lu(s), lv(s);
    while (!st.queue.empty()) {
        int p = st.queue.front();
        st.queue.pop_front();
        push(swap_[p]);
        const PairBlock& bp = blocks_[block_of(p)];
        decompose_id(p - bp.offset, bp.strides, lu);
        // compose p with all current members, both orders
        std::vector<int> lq(s);
        for (std::size_t qi = 0; qi < st.members.size(); ++qi) {
            int q = st.members[qi];
            const PairBlock& bq = blocks_[block_of(q)];
            decompose_id(q - bq.offset, bq.strides, lq);
            for (int order = 0; order < 2; ++order) {
                const PairBlock* b1 = order ? &bq : &bp;
                const PairBlock* b2 = order ? &bp : &bq;
                const int* l1 = order ? lq.data() : lu.data();
                const int* l2 = order ? lu.data() : lq.data();
                if (b1->pj != b2->pi) continue;
                const TripleBlock& tb = triples_[(b1->pi * np_ + b1->pj) * np_ + b2->pj];
                const PairBlock& bt = blocks_[b1->pi * np_ + b2->pj];
                std::vector<const std::vector<std::uint64_t>*> masks(s);
                bool empty = false;
                for (int c = 0; c < s; ++c) {
                    const CoordTable& ct = tb.coord[c];
                    const auto& mask = ct.fwd[static_cast<std::size_t>(l1[c]) * ct.n23 + l2[c]];
                    if (mask.empty()) { empty = true; break; }
                    masks[c] = &mask;
                }
                if (empty) continue;
                product_masks(masks, bt.strides, [&](int local) { push(bt.offset + local); });
            }
        }
    }
    return st.S;
}

std::vector<EquivRelation> RelationContext::enumerate() const {
    std::vector<Bits> found;
    std::map<Bits, int> seen;
    auto record = [&](const Bits& b) {
        auto it = seen.find(b);
        if (it != seen.end()) return false;
        if (!is_equivalence(b)) throw diagnostic_error("closure produced a non-relation");
        seen.emplace(b, static_cast<int>(found.size()));
        found.push_back(b);
        return true;
    };

    // Candidate upper bounds: kernels of coordinate-subset projections
    // (transitive base only). Certified before use.
    if (base_.orbits.size() == 1) {
        const Shape& sh = base_.orbits[0];
        std::vector<std::vector<std::vector<int>>> keeps(1);
        std::function<void(int, std::vector<std::vector<int>>&)> rec = [&](int c, std::vector<std::vector<int>>& cur) {
            if (c == base_.s) {
                GMap p = GMap::coordinate_projection(sh, cur);
                EquivRelation k = kernel_of(p);
                record(make_bits(k.orbit_ids));
                return;
            }
            const int n = sh.arms[c];
            for (std::uint32_t m = 0; m < (1u << n); ++m) {
                cur.push_back({});
                for (int i = 0; i < n; ++i)
                    if (m >> i & 1) cur.back().push_back(i);
                rec(c + 1, cur);
                cur.pop_back();
            }
        };
        std::vector<std::vector<int>> cur;
        rec(0, cur);
    }

    Bits bottom = closure(make_bits({}));
    record(bottom);

    // Closure of a seed, with early exit once a known upper bound fills.
    auto bounded_closure = [&](Bits seed) -> Bits {
        // Upper bound: intersection of found relations containing the seed.
        Bits P;
        bool have = false;
        for (const Bits& K : found) {
            if (!subset(seed, K)) continue;
            if (!have) { P = K; have = true; }
            else
                for (std::size_t w = 0; w < P.size(); ++w) P[w] &= K[w];
        }
        if (have) {
            Bits withdiag = seed;
            for (int d : diagonal_) set_bit(withdiag, d);
            if (seen.count(P) && subset(withdiag, P)) {
                std::size_t target = popcount(P);
                // Run closure but abort as soon as the bound fills.
                // (A strictly smaller closed set just drains normally.)
                Bits S((pair_count_ + 63) / 64, 0);
                std::vector<int> members;
                std::deque<int> queue;
                bool inside = true;
                auto push = [&](int id) {
                    if (bit(S, id)) return;
                    if (!bit(P, id)) inside = false;
                    set_bit(S, id);
                    members.push_back(id);
                    queue.push_back(id);
                };
                for (int d : diagonal_) push(d);
                for (std::size_t i = 0; i < pair_count_; ++i)
                    if (bit(seed, static_cast<int>(i))) push(static_cast<int>(i));
                const int s = base_.s;
                std::vector<int> lu(s), lq(s);
                while (!queue.empty() && inside) {
                    if (members.size() == target) return P;
                    int p = queue.front();
                    queue.pop_front();
                    push(swap_[p]);
                    const PairBlock& bp = blocks_[block_of(p)];
                    decompose_id(p - bp.offset, bp.strides, lu);
                    for (std::size_t qi = 0; qi < members.size() && inside; ++qi) {
                        int q = members[qi];
                        const PairBlock& bq = blocks_[block_of(q)];
                        decompose_id(q - bq.offset, bq.strides, lq);
                        for (int order = 0; order < 2; ++order) {
                            const PairBlock* b1 = order ? &bq : &bp;
                            const PairBlock* b2 = order ? &bp : &bq;
                            const int* l1 = order ? lq.data() : lu.data();
                            const int* l2 = order ? lu.data() : lq.data();
                            if (b1->pj != b2->pi) continue;
                            const TripleBlock& tb = triples_[(b1->pi * np_ + b1->pj) * np_ + b2->pj];
                            const PairBlock& bt = blocks_[b1->pi * np_ + b2->pj];
                            std::vector<const std::vector<std::uint64_t>*> masks(s);
                            bool empty = false;
                            for (int c = 0; c < s; ++c) {
                                const CoordTable& ct = tb.coord[c];
                                const auto& mask = ct.fwd[static_cast<std::size_t>(l1[c]) * ct.n23 + l2[c]];
                                if (mask.empty()) { empty = true; break; }
                                masks[c] = &mask;
                            }
                            if (empty) continue;
                            product_masks(masks, bt.strides, [&](int local) { push(bt.offset + local); });
                        }
                        if (members.size() == target && subset(S, P)) return P;
                    }
                }
                if (inside) return S;
                // Fell outside the bound: fall through to the plain closure.
            }
        }
        return closure(seed);
    };

    // Principal relations.
    for (std::size_t o = 0; o < pair_count_; ++o) {
        Bits seed((pair_count_ + 63) / 64, 0);
        set_bit(seed, static_cast<int>(o));
        record(bounded_closure(seed));
    }
    // Join closure.
    bool changed = true;
    while (changed) {
        changed = false;
        const std::size_t n = found.size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                Bits seed = found[a];
                for (std::size_t w = 0; w < seed.size(); ++w) seed[w] |= found[b][w];
                if (seen.count(seed)) continue;
                if (record(bounded_closure(seed))) changed = true;
            }
    }

    std::vector<EquivRelation> out;
    for (const Bits& b : found) out.push_back(EquivRelation{base_, bits_to_ids(b)});
    std::sort(out.begin(), out.end(), [](const EquivRelation& a, const EquivRelation& b) {
        if (a.orbit_ids.size() != b.orbit_ids.size()) return a.orbit_ids.size() < b.orbit_ids.size();
        return a.orbit_ids < b.orbit_ids;
    });
    return out;
}

EquivRelation RelationContext::kernel_of(const GMap& p) const {
    if (!(p.source == base_)) throw structural_error("kernel_of: wrong source");
    const ProductOrbits& pp = pair_orbits(base_, base_);
    std::vector<int> ids;
    for (std::size_t k = 0; k < pp.size(); ++k) {
        const Amalgam& a = pp.orbits()[k];
        std::vector<Point> rep = pp.representative(static_cast<int>(k));
        const int i = a.factor_orbits[0], j = a.factor_orbits[1];
        if (p.pieces[i].target_orbit != p.pieces[j].target_orbit) continue;
        if (p.apply(i, rep[0]) == p.apply(j, rep[1])) ids.push_back(static_cast<int>(k));
    }
    return EquivRelation{base_, ids};
}

const RelationContext& relation_context(const GSet& X) {
    static std::unordered_map<std::string, std::unique_ptr<RelationContext>> cache;
    static std::mutex mu;
    std::string key = gset_key(X);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<RelationContext>(X)).first;
    return *it->second;
}

std::vector<EquivRelation> equivalence_relations(const GSet& X) {
    return relation_context(X).enumerate();
}

std::pair<GSet, GMap> quotient(const GSet& X, const EquivRelation& R) {
    if (X.orbits.size() != 1) throw structural_error("quotient: transitive base required");
    if (!(R.base == X)) throw structural_error("quotient: relation base mismatch");
    const RelationContext& ctx = relation_context(X);
    Bits rb = ctx.make_bits(R.orbit_ids);
    if (!ctx.is_equivalence(rb)) throw structural_error("quotient: not an equivalence relation");
    const Shape& sh = X.orbits[0];
    std::vector<std::vector<int>> cur;
    std::function<std::optional<GMap>(int)> rec = [&](int c) -> std::optional<GMap> {
        if (c == X.s) {
            GMap p = GMap::coordinate_projection(sh, cur);
            if (ctx.kernel_of(p).orbit_ids == R.orbit_ids) return p;
            return std::nullopt;
        }
        const int n = sh.arms[c];
        for (std::uint32_t m = 0; m < (1u << n); ++m) {
            cur.push_back({});
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) cur.back().push_back(i);
            auto r = rec(c + 1);
            cur.pop_back();
            if (r) return r;
        }
        return std::nullopt;
    };
    auto p = rec(0);
    if (!p) throw diagnostic_error("quotient: relation is not a coordinate-subset kernel");
    return {p->target, *p};
}

std::pair<EquivRelation, EquivRelation> factor_product_relation(const EquivRelation& R, int sx) {
    const GSet& Z = R.base;
    if (Z.orbits.size() != 1) throw structural_error("factor_product_relation: transitive base required");
    const int s = Z.s;
    if (sx <= 0 || sx >= s) throw structural_error("factor_product_relation: bad split");
    const Shape& sh = Z.orbits[0];
    GSet X = GSet::transitive(std::vector<int>(sh.arms.begin(), sh.arms.begin() + sx));
    GSet Y = GSet::transitive(std::vector<int>(sh.arms.begin() + sx, sh.arms.end()));
    const ProductOrbits& zz = pair_orbits(Z, Z);
    const ProductOrbits& xx = pair_orbits(X, X);
    const ProductOrbits& yy = pair_orbits(Y, Y);

    std::vector<int> sxids, syids;
    std::map<std::pair<int, int>, bool> seen_pairs;
    for (int id : R.orbit_ids) {
        const Amalgam& a = zz.orbits()[id];
        Amalgam ax, ay;
        ax.factor_orbits = {0, 0};
        ay.factor_orbits = {0, 0};
        ax.words.assign(a.words.begin(), a.words.begin() + sx);
        ay.words.assign(a.words.begin() + sx, a.words.end());
        int xi = xx.index_of(ax);
        int yi = yy.index_of(ay);
        sxids.push_back(xi);
        syids.push_back(yi);
        seen_pairs[{xi, yi}] = true;
    }
    std::sort(sxids.begin(), sxids.end());
    sxids.erase(std::unique(sxids.begin(), sxids.end()), sxids.end());
    std::sort(syids.begin(), syids.end());
    syids.erase(std::unique(syids.begin(), syids.end()), syids.end());

    if (sxids.size() * syids.size() != R.orbit_ids.size())
        throw diagnostic_error("factor_product_relation: relation is not a product");
    for (int xi : sxids)
        for (int yi : syids)
            if (!seen_pairs.count({xi, yi}))
                throw diagnostic_error("factor_product_relation: relation is not a product");

    EquivRelation RX{X, sxids}, RY{Y, syids};
    const RelationContext& cx = relation_context(X);
    const RelationContext& cy = relation_context(Y);
    if (!cx.is_equivalence(cx.make_bits(sxids)) || !cy.is_equivalence(cy.make_bits(syids)))
        throw diagnostic_error("factor_product_relation: factors are not relations");
    return {RX, RY};
}

} // namespace delannoy
