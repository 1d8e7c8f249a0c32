#include "odl/besselseries.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "odl/bessel.hpp"

namespace odl {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Signed oscillatory term Im( e^{i(x-pi/4)} (L/sqrt(x)) V_h(L^2/(2x)) ).
// Far beyond the window's decay scale V_h is numerically zero; skipping the
// oscillatory quadrature there avoids chasing cancellation over ~xi cycles.
double vh_term(const SmoothWindow& h, double L, double x) {
    double xi = L * L / (2.0 * x);
    if (xi > h.vh_cutoff(1e-15)) return 0.0;
    std::complex<double> phase(std::cos(x - kPi / 4.0), std::sin(x - kPi / 4.0));
    std::complex<double> v = h.vh(xi);
    return (phase * v).imag() * L / std::sqrt(x);
}

}  // namespace

BesselSeriesReport bessel_series_check(const SmoothWindow& h, int a, double L,
                                       double x) {
    if (a != 1 && a != -1) throw std::invalid_argument("order class must be +1 or -1");
    if (L < 10.0 || x < 0.0) throw std::invalid_argument("need L >= 10 and x >= 0");

    BesselSeriesReport rep;
    int lmax = static_cast<int>(std::ceil(h.b() * L)) + 1;
    int r = (a == 1) ? 1 : 3;  // residue of l mod 4

    if (x > 0.0) {
        std::vector<double> j = bessel_j_array(lmax, x);
        double s = 0.0;
        for (int l = (r == 1 ? 1 : 3); l <= lmax; l += 4) {
            double w = h(l / L);
            if (w != 0.0) s += w * j[l];
        }
        rep.lhs = 4.0 * s;
        rep.main_term = h(x / L);
        double sgn = (a == 1) ? 1.0 : -1.0;  // i^{1-a} for a = +-1
        rep.imag_term = sgn * vh_term(h, L, x);
        rep.correction = x / (6.0 * L * L * L) * h.deriv3(x / L);
    }
    rep.rhs = rep.main_term + rep.imag_term + rep.correction;
    rep.residual = std::abs(rep.lhs - rep.rhs);
    return rep;
}

BesselSeriesReport bessel_series_check_odd(const SmoothWindow& h, double L,
                                           double x) {
    if (L < 10.0 || x < 0.0) throw std::invalid_argument("need L >= 10 and x >= 0");

    BesselSeriesReport rep;
    int lmax = static_cast<int>(std::ceil(h.b() * L)) + 1;

    if (x > 0.0) {
        std::vector<double> j = bessel_j_array(lmax, x);
        double s = 0.0;
        for (int l = 1; l <= lmax; l += 2) {
            double w = h(l / L);
            if (w == 0.0) continue;
            // i^{l+1} is real for odd l: +1 when l = 3 (mod 4), -1 when
            // l = 1 (mod 4).
            s += (l % 4 == 3 ? 1.0 : -1.0) * w * j[l];
        }
        rep.lhs = 2.0 * s;
        rep.imag_term = -vh_term(h, L, x);
    }
    rep.rhs = rep.imag_term;
    rep.residual = std::abs(rep.lhs - rep.rhs);
    return rep;
}

}  // namespace odl
