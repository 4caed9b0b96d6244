#include "delannoy/morphism.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace delannoy {

namespace {
int g_threads = 1;
}

void set_threads(int n) { g_threads = n < 1 ? 1 : n; }
int threads() { return g_threads; }

std::string gset_key(const GSet& g) {
    std::string k = std::to_string(g.s) + ":";
    for (const Shape& sh : g.orbits) {
        for (int a : sh.arms) k += std::to_string(a) + ",";
        k += ";";
    }
    return k;
}

const ProductOrbits& pair_orbits(const GSet& first, const GSet& second) {
    static std::unordered_map<std::string, std::unique_ptr<ProductOrbits>> cache;
    static std::mutex mu;
    std::string key = gset_key(first) + "|" + gset_key(second);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<ProductOrbits>(std::vector<GSet>{first, second})).first;
    return *it->second;
}

namespace {

void build_outputs(const ConvTable& t, const GSet& Y, std::size_t lo, std::size_t hi,
                   std::vector<std::vector<ConvTerm>>& terms) {
    for (std::size_t g = lo; g < hi; ++g) {
        std::vector<Point> rep = t.zx->representative(static_cast<int>(g));
        const int zi = t.zx->orbits()[g].factor_orbits[0];
        const int xi = t.zx->orbits()[g].factor_orbits[1];
        Pins A = merge_pins({&rep[0], &rep[1]}, Y.s);
        std::map<std::pair<int, int>, long long> acc;
        for (const StabOrbit& o : stabilizer_orbits(Y, A)) {
            Point y = stab_representative(Y.orbits[o.piece], A, o);
            int alpha = t.zy->index_of(orbit_of_points({zi, o.piece}, {rep[0], y}));
            int beta = t.yx->index_of(orbit_of_points({o.piece, xi}, {y, rep[1]}));
            acc[{alpha, beta}] += o.mass;
        }
        std::vector<ConvTerm>& out = terms[g];
        for (const auto& [ab, w] : acc)
            if (w != 0) out.push_back({ab.first, ab.second, w});
    }
}

} // namespace

const ConvTable& conv_table(const GSet& Z, const GSet& Y, const GSet& X) {
    static std::unordered_map<std::string, std::unique_ptr<ConvTable>> cache;
    static std::mutex mu;
    std::string key = gset_key(Z) + "|" + gset_key(Y) + "|" + gset_key(X);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }

    auto t = std::make_unique<ConvTable>();
    t->zx = &pair_orbits(Z, X);
    t->zy = &pair_orbits(Z, Y);
    t->yx = &pair_orbits(Y, X);
    t->terms.resize(t->zx->size());

    const std::size_t n = t->zx->size();
    const int nt = g_threads;
    if (nt <= 1 || n < 64) {
        build_outputs(*t, Y, 0, n, t->terms);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (n + nt - 1) / nt;
        for (int i = 0; i < nt; ++i) {
            std::size_t lo = i * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] { build_outputs(*t, Y, lo, hi, t->terms); });
        }
        for (auto& th : pool) th.join();
    }

    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(t));
    return *it->second;
}

GSet dsum_obj(const GSet& X, const GSet& Y) { return X.disjoint_union(Y); }

GSet tensor_obj(const std::vector<GSet>& factors) { return ProductOrbits(factors).flatten(); }

GSet box_obj(const GSet& A, const GSet& B) {
    GSet out(A.s + B.s);
    for (const Shape& a : A.orbits)
        for (const Shape& b : B.orbits) {
            std::vector<int> arms = a.arms;
            arms.insert(arms.end(), b.arms.begin(), b.arms.end());
            out.orbits.push_back(Shape(arms));
        }
    return out;
}

} // namespace delannoy
