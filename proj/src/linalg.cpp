#include "delannoy/linalg.hpp"

#include <algorithm>
#include <functional>

#include "delannoy/base.hpp"

namespace delannoy {

QMat QMat::from_columns(const std::vector<QVec>& cols_) {
    if (cols_.empty()) return QMat(0, 0);
    QMat m(cols_[0].size(), cols_.size());
    for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (cols_[j].size() != m.rows) throw structural_error("from_columns: ragged input");
        for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) = cols_[j][i];
    }
    return m;
}

QVec QMat::apply(const QVec& x) const {
    if (x.size() != cols) throw structural_error("QMat::apply: size mismatch");
    QVec y(rows, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) {
        Rational acc(0);
        const Rational* row = &a[i * cols];
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn(x[j]) != 0 && sgn(row[j]) != 0) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

QMat QMat::mul(const QMat& other) const {
    if (cols != other.rows) throw structural_error("QMat::mul: size mismatch");
    QMat r(rows, other.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const Rational& v = at(i, k);
            if (sgn(v) == 0) continue;
            for (std::size_t j = 0; j < other.cols; ++j) {
                const Rational& w = other.at(k, j);
                if (sgn(w) != 0) r.at(i, j) += v * w;
            }
        }
    return r;
}

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && sgn(m.at(piv, col)) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(piv, j));
        Rational inv = 1 / m.at(row, col);
        for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            Rational f = m.at(i, col);
            if (sgn(f) == 0) continue;
            for (std::size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

std::vector<QVec> kernel(const QMat& m) {
    QMat r = m;
    std::vector<std::size_t> pivots = rref(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        QVec v(m.cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> solve(const QMat& A, const QVec& b) {
    QMat aug(A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    std::vector<std::size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;   // inconsistent
    QVec x(A.cols, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, A.cols);
    return x;
}

void QSpan::reduce(QVec& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Rational f = v[pivots_[i]];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (sgn(rows_[i][j]) != 0) v[j] -= f * rows_[i][j];
    }
}

bool QSpan::add(QVec v) {
    if (v.size() != dim_) throw structural_error("QSpan::add: size mismatch");
    reduce(v);
    std::size_t p = 0;
    while (p < dim_ && sgn(v[p]) == 0) ++p;
    if (p == dim_) return false;
    Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Rational f = rows_[i][p];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (sgn(v[j]) != 0) rows_[i][j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

bool QSpan::contains(QVec v) const {
    reduce(v);
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

QPoly poly_trim(QPoly p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
    return p;
}

QPoly poly_mul(const QPoly& p, const QPoly& q) {
    if (p.empty() || q.empty()) return {};
    QPoly r(p.size() + q.size() - 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

QPoly poly_rem(QPoly p, const QPoly& q) {
    QPoly d = poly_trim(q);
    if (d.empty()) throw structural_error("poly_rem: division by zero polynomial");
    p = poly_trim(std::move(p));
    while (p.size() >= d.size() && !p.empty()) {
        Rational f = p.back() / d.back();
        std::size_t off = p.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i) p[off + i] -= f * d[i];
        p = poly_trim(std::move(p));
    }
    return p;
}

// Exact quotient p / d (remainder must vanish).
static QPoly poly_div_exact(QPoly p, const QPoly& d_in) {
    const QPoly d = poly_trim(d_in);
    p = poly_trim(std::move(p));
    if (d.empty()) throw structural_error("poly_div_exact: zero divisor");
    if (p.empty()) return {};
    QPoly q(p.size() - d.size() + 1, Rational(0));
    while (p.size() >= d.size() && !p.empty()) {
        Rational f = p.back() / d.back();
        std::size_t off = p.size() - d.size();
        q[off] = f;
        for (std::size_t i = 0; i < d.size(); ++i) p[off + i] -= f * d[i];
        p = poly_trim(std::move(p));
    }
    if (!p.empty()) throw diagnostic_error("poly_div_exact: nonzero remainder");
    return q;
}

QPoly poly_derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    return d;
}

QPoly poly_gcd(QPoly p, QPoly q) {
    p = poly_trim(std::move(p));
    q = poly_trim(std::move(q));
    while (!q.empty()) {
        QPoly r = poly_rem(p, q);
        p = std::move(q);
        q = std::move(r);
    }
    if (!p.empty()) {
        Rational inv = 1 / p.back();
        for (auto& c : p) c *= inv;
    }
    return p;
}

Rational poly_eval(const QPoly& p, const Rational& x) {
    Rational acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

QPoly minimal_polynomial(const std::function<QVec(const QVec&)>& apply, std::size_t dim) {
    QPoly m = {Rational(1)};
    for (std::size_t e = 0; e < dim; ++e) {
        QVec v(dim, Rational(0));
        v[e] = 1;
        // Skip basis vectors the current candidate already annihilates:
        // evaluate m(T) v by Horner on vectors.
        {
            QVec acc(dim, Rational(0));
            for (std::size_t i = m.size(); i-- > 0;) {
                acc = apply(acc);
                for (std::size_t j = 0; j < dim; ++j) acc[j] += m[i] * v[j];
            }
            bool zero = true;
            for (const auto& x : acc)
                if (sgn(x) != 0) { zero = false; break; }
            if (zero) continue;
        }
        QSpan span(dim);
        std::vector<QVec> powers;
        QVec cur = v;
        while (span.add(cur)) {
            powers.push_back(cur);
            cur = apply(cur);
        }
        QMat A = QMat::from_columns(powers);
        auto sol = solve(A, cur);
        if (!sol) throw diagnostic_error("minimal_polynomial: inconsistent Krylov system");
        QPoly local(powers.size() + 1, Rational(0));
        for (std::size_t i = 0; i < powers.size(); ++i) local[i] = -(*sol)[i];
        local.back() = 1;
        QPoly g = poly_gcd(m, local);
        m = poly_mul(poly_div_exact(m, g), local);
        if (m.size() > dim + 1) throw diagnostic_error("minimal_polynomial: degree overflow");
    }
    if (m.empty()) m = {Rational(1)};
    Rational inv = 1 / m.back();
    for (auto& c : m) c *= inv;
    return m;
}

namespace {

int sturm_changes(const std::vector<QPoly>& chain, const Rational& x) {
    int changes = 0, last = 0;
    for (const QPoly& p : chain) {
        int s = sgn(poly_eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

} // namespace

RootReport rational_roots(const QPoly& p_in, const mpz_class& den_bound) {
    RootReport rep;
    QPoly p = poly_trim(p_in);
    if (p.size() <= 1) {
        rep.all_real_roots_rational = true;
        return rep;
    }
    QPoly g = poly_gcd(p, poly_derivative(p));
    if (g.size() > 1) p = poly_div_exact(p, g);   // squarefree part

    std::vector<QPoly> chain = {p, poly_derivative(p)};
    while (chain.back().size() > 1) {
        QPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }

    Rational bound(1);
    Rational lead = p.back();
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        Rational c = abs(p[i] / lead);
        if (c + 1 > bound) bound = c + 1;
    }

    const Rational den(den_bound);
    int total = sturm_changes(chain, -bound) - sturm_changes(chain, bound);
    std::function<void(Rational, Rational, int)> isolate = [&](Rational lo, Rational hi, int count) {
        if (count <= 0) return;
        if (count == 1) {
            if (sgn(poly_eval(p, lo)) == 0) { rep.roots.push_back(lo); return; }
            if (sgn(poly_eval(p, hi)) == 0) { rep.roots.push_back(hi); return; }
            for (int iter = 0; iter < 20000; ++iter) {
                // Unique candidate of denominator den inside (lo, hi)?
                Rational slo = lo * den, shi = hi * den;
                mpz_class klo, khi;
                mpz_cdiv_q(klo.get_mpz_t(), slo.get_num().get_mpz_t(), slo.get_den().get_mpz_t());
                mpz_fdiv_q(khi.get_mpz_t(), shi.get_num().get_mpz_t(), shi.get_den().get_mpz_t());
                if (Rational(klo) == slo) klo += 1;   // endpoints already ruled out
                if (Rational(khi) == shi) khi -= 1;
                if (klo > khi) return;   // no admissible candidate: irrational root
                if (klo == khi) {
                    Rational cand = Rational(klo) / den;
                    if (sgn(poly_eval(p, cand)) == 0) rep.roots.push_back(cand);
                    return;
                }
                Rational mid = (lo + hi) / 2;
                if (sgn(poly_eval(p, mid)) == 0) { rep.roots.push_back(mid); return; }
                int left = sturm_changes(chain, lo) - sturm_changes(chain, mid);
                if (left == 1) hi = mid;
                else lo = mid;
            }
            return;
        }
        Rational mid = (lo + hi) / 2;
        while (sgn(poly_eval(p, mid)) == 0) mid = (lo * 1 + mid * 3) / 4;
        int left = sturm_changes(chain, lo) - sturm_changes(chain, mid);
        isolate(lo, mid, left);
        isolate(mid, hi, count - left);
    };
    isolate(-bound, bound, total);
    std::sort(rep.roots.begin(), rep.roots.end());
    rep.all_real_roots_rational = static_cast<int>(rep.roots.size()) == total;
    return rep;
}

} // namespace delannoy
