#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "delannoy/gset.hpp"

namespace delannoy {

// One group coordinate of an amalgam: the shuffle word of the factors.
// Each column is a nonempty bitmask over the factors (bit f-1 = factor f);
// factor f occupies exactly arm(f) columns.
using Word = std::vector<std::uint32_t>;

// Canonical word order: shorter words first (more coincidences), then
// numeric lex on the column masks. Frozen: morphism vectors index
// against it, so the diagonal orbit of X x X always comes first.
bool word_less(const Word& a, const Word& b);

// Canonical encoding of one orbit of a product of transitive pieces.
struct Amalgam {
    std::vector<int> factor_orbits;      // which orbit of each participating GSet
    std::vector<Word> words;             // one shuffle word per group coordinate

    friend bool operator==(const Amalgam&, const Amalgam&) = default;
};
bool amalgam_less(const Amalgam& a, const Amalgam& b);

// The canonically ordered orbit list of a product of GSets, with index
// lookup, shapes and integer representatives.
class ProductOrbits {
  public:
    ProductOrbits() = default;
    explicit ProductOrbits(std::vector<GSet> factors);

    int s() const { return s_; }
    const std::vector<GSet>& factors() const { return factors_; }
    const std::vector<Amalgam>& orbits() const { return orbits_; }
    std::size_t size() const { return orbits_.size(); }

    int index_of(const Amalgam& a) const;     // structural_error if absent

    // Shape of one product orbit: arms = column counts per coordinate.
    Shape shape(int idx) const;

    // Representative: column j (1-based, left to right) takes value j;
    // returns one Point per factor.
    std::vector<Point> representative(int idx) const;

    // The product as a plain GSet (provenance dropped).
    GSet flatten() const;

  private:
    int s_ = 1;
    std::vector<GSet> factors_;
    std::vector<Amalgam> orbits_;
    std::unordered_map<std::string, int> index_;
};

// All shuffle words for the given arms, in canonical order.
std::vector<Word> shuffle_words(const std::vector<int>& arms);

// Streaming enumeration (used for big triple tables); canonical order.
void for_each_shuffle_word(const std::vector<int>& arms, const std::function<void(const Word&)>& fn);

// Orbit of a concrete tuple of points, one per factor. The word per
// coordinate records the relative order/equality pattern of all arms.
Amalgam orbit_of_points(const std::vector<int>& factor_orbits, const std::vector<Point>& pts);

// The factor-f component of a point of the product orbit described by `a`.
Point split_point(const Amalgam& a, const Point& product_point, int factor);

// Locate a concrete tuple of factor points inside a product: returns the
// orbit index together with the product point (distinct merged values).
std::pair<int, Point> locate_in_product(const ProductOrbits& po, const std::vector<int>& pieces,
                                        const std::vector<Point>& pts);

// Orbit count of the product of transitive arms (Delannoy-style numbers).
long long shuffle_count(const std::vector<int>& arms);

std::string amalgam_key(const Amalgam& a);

} // namespace delannoy
