#pragma once
// Truncated power series in q with exact integer coefficients, plus the
// classical generators needed to build spaces of holomorphic cusp forms:
// the Eisenstein series E4 and E6, the discriminant form, and eta-product
// expansions.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace odl {

// Coefficients c[0..prec-1]; c[i] multiplies q^i.  All arithmetic truncates
// to the shorter operand's precision.
struct QSeries {
    std::vector<mpz_class> c;

    QSeries() = default;
    explicit QSeries(std::size_t prec) : c(prec) {}

    std::size_t prec() const { return c.size(); }
    const mpz_class& operator[](std::size_t i) const { return c[i]; }
    mpz_class& operator[](std::size_t i) { return c[i]; }
};

QSeries qs_add(const QSeries& a, const QSeries& b);
QSeries qs_sub(const QSeries& a, const QSeries& b);
QSeries qs_mul(const QSeries& a, const QSeries& b);
// a * b^e by repeated squaring, truncated to a's precision.
QSeries qs_pow(const QSeries& a, unsigned e, std::size_t prec);
// Substitute q -> q^m (dilation), truncating to prec.
QSeries qs_dilate(const QSeries& a, unsigned m, std::size_t prec);

// E4 = 1 + 240 sum sigma_3(n) q^n, E6 = 1 - 504 sum sigma_5(n) q^n.
QSeries eisenstein_e4(std::size_t prec);
QSeries eisenstein_e6(std::size_t prec);

// Euler product prod_{n>=1} (1-q^n)^r for small positive r, computed through
// the sparse pentagonal-number series (r=1) and the sparse triangular-number
// series (r=3), so large precisions stay cheap.
QSeries euler_product_power(unsigned r, std::size_t prec);

// q prod (1-q^n)^24, the weight-12 discriminant cusp form.
QSeries discriminant_form(std::size_t prec);

// q prod (1-q^n)^2 (1-q^{11n})^2, the weight-2 level-11 newform.
QSeries eta_square_level11(std::size_t prec);

}  // namespace odl
