#pragma once

#include <optional>
#include <vector>

#include "delannoy/scalar.hpp"

namespace delannoy {

using QVec = std::vector<Rational>;

// Dense rational matrix, row major.
struct QMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Rational> a;

    QMat() = default;
    QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rational(0)) {}
    Rational& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static QMat from_columns(const std::vector<QVec>& cols_);
    QVec apply(const QVec& x) const;           // this * x
    QMat mul(const QMat& other) const;
};

// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank(QMat m);

// Basis of the right kernel (as column vectors).
std::vector<QVec> kernel(const QMat& m);

// Solve A x = b; returns one solution or nullopt if inconsistent.
std::optional<QVec> solve(const QMat& A, const QVec& b);

// Incremental row-space accumulator (echelon with recorded pivots).
class QSpan {
  public:
    explicit QSpan(std::size_t dim) : dim_(dim) {}
    // Returns true if the vector enlarged the span.
    bool add(QVec v);
    bool contains(QVec v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<QVec>& rows() const { return rows_; }
    // Coordinates of v in terms of the ORIGINAL vectors added is not
    // tracked; use solve() against a basis matrix when needed.

  private:
    std::size_t dim_;
    std::vector<QVec> rows_;
    std::vector<std::size_t> pivots_;
    void reduce(QVec& v) const;
};

// Polynomials over Q, coefficient vector by ascending degree.
using QPoly = std::vector<Rational>;
QPoly poly_trim(QPoly p);
QPoly poly_mul(const QPoly& p, const QPoly& q);
QPoly poly_rem(QPoly p, const QPoly& q);
QPoly poly_derivative(const QPoly& p);
QPoly poly_gcd(QPoly p, QPoly q);
Rational poly_eval(const QPoly& p, const Rational& x);

// Monic minimal polynomial of the operator `apply` on a space of the
// given dimension (lcm of the minimal polynomials of the basis vectors).
QPoly minimal_polynomial(const std::function<QVec(const QVec&)>& apply, std::size_t dim);

// All rational roots of p whose denominator divides `den_bound`,
// found by Sturm isolation. Also reports whether every real root was
// accounted for (squarefree p assumed for exact multiplicity handling).
struct RootReport {
    std::vector<Rational> roots;
    bool all_real_roots_rational = false;
};
RootReport rational_roots(const QPoly& p, const mpz_class& den_bound);

} // namespace delannoy
