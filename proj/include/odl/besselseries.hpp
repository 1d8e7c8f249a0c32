// Smoothly weighted Bessel-function series over orders in an arithmetic
// progression, compared against their stationary-phase main terms:
//
// (A)  4 sum_{l = a (4)} h(l/L) J_l(x)
//        = h(x/L) + i^{1-a} Im( e^{i(x-pi/4)} (L/sqrt(x)) V_h(L^2/(2x)) )
//          + (x/(6L^3)) h'''(x/L) + O(x/L^4 + x^2/L^6),   a = +-1,
//
// (B)  2 sum_{l odd} h(l/L) i^{l+1} J_l(x)
//        = -Im( e^{i(x-pi/4)} (L/sqrt(x)) V_h(L^2/(2x)) ) + O(same).
//
// The left-hand sums are finite since h is supported in [a, b] (orders
// l in [aL, bL]).  These reports are the numerical laboratory for the
// weight-aspect summation over k.
#pragma once

#include "odl/window.hpp"

namespace odl {

struct BesselSeriesReport {
    double lhs = 0;        // truncated (exact, finite) Bessel series
    double main_term = 0;  // h(x/L)
    double imag_term = 0;  // signed V_h oscillatory term
    double correction = 0; // (x/(6 L^3)) h'''(x/L)
    double rhs = 0;        // sum of the terms above
    double residual = 0;   // |lhs - rhs|
};

// Variant (A); a must be +1 or -1 (order class l = a mod 4).
BesselSeriesReport bessel_series_check(const SmoothWindow& h, int a, double L,
                                       double x);

// Variant (B): odd orders with the i^{l+1} twist.
BesselSeriesReport bessel_series_check_odd(const SmoothWindow& h, double L,
                                           double x);

}  // namespace odl
