#include "odl/qseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace odl {

namespace {

// Sparse series: list of (exponent, coefficient) pairs with increasing
// exponents.  Used for the Euler and Jacobi expansions whose term count is
// O(sqrt(prec)).
struct SparseSeries {
    std::vector<std::pair<std::size_t, long>> terms;
};

// prod (1-q^n) = sum_{k in Z} (-1)^k q^{k(3k-1)/2}  (pentagonal numbers)
SparseSeries euler_sparse(std::size_t prec) {
    SparseSeries s;
    for (long k = 0;; ++k) {
        bool any = false;
        for (long sgn : {+1, -1}) {
            long kk = sgn * k;
            if (kk == 0 && sgn < 0) continue;
            long e = kk * (3 * kk - 1) / 2;
            if (e < (long)prec) {
                s.terms.push_back({(std::size_t)e, (k % 2 == 0) ? 1L : -1L});
                any = true;
            }
        }
        if (!any) break;
    }
    std::sort(s.terms.begin(), s.terms.end());
    return s;
}

// prod (1-q^n)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}  (Jacobi)
SparseSeries jacobi_sparse(std::size_t prec) {
    SparseSeries s;
    for (long k = 0;; ++k) {
        long e = k * (k + 1) / 2;
        if (e >= (long)prec) break;
        s.terms.push_back({(std::size_t)e, (k % 2 == 0) ? (2 * k + 1) : -(2 * k + 1)});
    }
    return s;
}

QSeries sparse_mul(const QSeries& a, const SparseSeries& s, std::size_t prec) {
    QSeries r(prec);
    mpz_class t;
    for (auto& [e, v] : s.terms) {
        if (e >= prec) break;
        std::size_t lim = std::min(a.prec(), prec - e);
        for (std::size_t i = 0; i < lim; ++i) {
            t = a.c[i] * v;
            r.c[i + e] += t;
        }
    }
    return r;
}

}  // namespace

QSeries qs_add(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.prec(), b.prec()));
    for (std::size_t i = 0; i < r.prec(); ++i) r[i] = a[i] + b[i];
    return r;
}

QSeries qs_sub(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.prec(), b.prec()));
    for (std::size_t i = 0; i < r.prec(); ++i) r[i] = a[i] - b[i];
    return r;
}

QSeries qs_mul(const QSeries& a, const QSeries& b) {
    std::size_t prec = std::min(a.prec(), b.prec());
    QSeries r(prec);
    mpz_class t;
    for (std::size_t i = 0; i < prec; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < prec; ++j) {
            if (b[j] == 0) continue;
            t = a[i] * b[j];
            r[i + j] += t;
        }
    }
    return r;
}

QSeries qs_pow(const QSeries& a, unsigned e, std::size_t prec) {
    QSeries r(prec);
    r[0] = 1;
    QSeries base = a;
    base.c.resize(prec);
    while (e > 0) {
        if (e & 1u) r = qs_mul(r, base);
        e >>= 1u;
        if (e) base = qs_mul(base, base);
    }
    return r;
}

QSeries qs_dilate(const QSeries& a, unsigned m, std::size_t prec) {
    QSeries r(prec);
    for (std::size_t i = 0; i * m < prec && i < a.prec(); ++i) r[i * m] = a[i];
    return r;
}

namespace {

QSeries eisenstein(std::size_t prec, unsigned r, long scale) {
    QSeries e(prec);
    e[0] = 1;
    mpz_class pw;
    for (std::size_t n = 1; n < prec; ++n) {
        mpz_ui_pow_ui(pw.get_mpz_t(), n, r);
        pw *= scale;
        for (std::size_t m = n; m < prec; m += n) e.c[m] += pw;
    }
    return e;
}

}  // namespace

QSeries eisenstein_e4(std::size_t prec) { return eisenstein(prec, 3, 240); }
QSeries eisenstein_e6(std::size_t prec) { return eisenstein(prec, 5, -504); }

QSeries euler_product_power(unsigned r, std::size_t prec) {
    if (prec == 0) return QSeries();
    // Peel off factors of 3 (Jacobi) and 1 (pentagonal), multiplying
    // sparsely so the cost stays O(prec^{3/2}) per factor.
    SparseSeries pent = euler_sparse(prec);
    SparseSeries jac = jacobi_sparse(prec);
    QSeries acc(prec);
    acc[0] = 1;
    unsigned threes = r / 3, ones = r % 3;
    for (unsigned i = 0; i < threes; ++i) acc = sparse_mul(acc, jac, prec);
    for (unsigned i = 0; i < ones; ++i) acc = sparse_mul(acc, pent, prec);
    return acc;
}

namespace {

QSeries shift_by_q(const QSeries& a, std::size_t prec) {
    QSeries r(prec);
    for (std::size_t i = 1; i < prec && i - 1 < a.prec(); ++i) r[i] = a[i - 1];
    return r;
}

}  // namespace

QSeries discriminant_form(std::size_t prec) {
    if (prec == 0) return QSeries();
    return shift_by_q(euler_product_power(24, prec), prec);
}

QSeries eta_square_level11(std::size_t prec) {
    if (prec == 0) return QSeries();
    QSeries f = euler_product_power(2, prec);
    QSeries g = qs_dilate(f, 11, prec);
    return shift_by_q(qs_mul(f, g), prec);
}

}  // namespace odl
