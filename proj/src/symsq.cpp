#include "odl/symsq.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "odl/cgamma.hpp"

namespace odl {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Gaussian damper exp(A w^2) on the shifted contour: small A tightens the
// effective coefficient cutoff (tail ~ exp(-log^2(n/scale)/(4A))).
constexpr double kA = 1.0 / 16.0;
constexpr double kContour = 2.0;  // Re w on the shifted line

// log of the archimedean factor pi^{-3s/2} Gamma((s+1)/2) Gamma((s+k-1)/2)
// Gamma((s+k)/2) at complex s.
std::complex<double> log_gamma_factor(std::complex<double> s, int k) {
    return -1.5 * s * std::log(kPi) + log_gamma(0.5 * (s + 1.0)) +
           log_gamma(0.5 * (s + (double)(k - 1))) + log_gamma(0.5 * (s + (double)k));
}

// (1/2 pi i) int gamma(j+w) (n/N)^{-w} e^{A w^2} dw / w on Re w = c,
// normalized by gamma(1).  Trapezoid in t = Im w; the integrand is entire in
// the strip so the rule converges geometrically.
double damped_mellin(int j, double y, int k, double log_gamma1) {
    const double T = 30.0, h = 0.125;
    const double logy = std::log(y);
    std::complex<double> acc = 0.0;
    const int nsteps = (int)(2 * T / h + 0.5);
    for (int i = 0; i <= nsteps; ++i) {
        double t = -T + i * h;
        std::complex<double> w(kContour, t);
        std::complex<double> lg = log_gamma_factor(w + (double)j, k) - log_gamma1 -
                                  w * logy + kA * w * w;
        std::complex<double> val = std::exp(lg) / w;
        acc += (i == 0 || i == nsteps) ? 0.5 * val : val;
    }
    // dw = i dt, so (1/2 pi i) int ... dw = (1/2 pi) int ... dt
    return (acc * h).real() / (2.0 * kPi);
}

double gamma_scale(int k) {
    // exp of d/ds log gamma-factor at s = 1: effective length of the sum.
    double d = -1.5 * std::log(kPi) +
               0.5 * (digamma(std::complex<double>(1.0, 0.0)).real() +
                      digamma(std::complex<double>(0.5 * k, 0.0)).real() +
                      digamma(std::complex<double>(0.5 * (k + 1), 0.0)).real());
    return std::exp(d);
}

}  // namespace

std::uint64_t sym_sq_L1_cutoff(int k, std::uint64_t level) {
    double scale = (double)level * gamma_scale(k);
    return (std::uint64_t)std::ceil(scale * std::exp(4.5)) + 16;
}

double sym_sq_L1(const HeckeEigenform& f) {
    std::uint64_t N = f.level;
    std::uint64_t cutoff = sym_sq_L1_cutoff(f.k, N);
    if (f.pmax < cutoff)
        throw std::invalid_argument("sym_sq_L1: eigenvalue table below the required cutoff");

    // b_n = sum_{m^2 j = n, (m, N) = 1} lambda(j^2)
    std::vector<long double> b(cutoff + 1, 0.0L);
    for (std::uint64_t m = 1; m * m <= cutoff; ++m) {
        if (N > 1 && m % N == 0) continue;
        for (std::uint64_t j = 1; m * m * j <= cutoff; ++j) b[m * m * j] += f.lambda(j * j);
    }

    double log_gamma1 = log_gamma_factor(std::complex<double>(1.0, 0.0), f.k).real();
    long double total = 0.0L;
    for (std::uint64_t n = 1; n <= cutoff; ++n) {
        if (b[n] == 0.0L) continue;
        double y = (double)n / (double)N;
        double g1 = damped_mellin(1, y, f.k, log_gamma1);
        double g0 = damped_mellin(0, y, f.k, log_gamma1);
        // Lambda(1) = N sum (b_n/n) G1(n/N) + sum b_n G0(n/N) and
        // L(1) = Lambda(1)/(N gamma(1)), so the dual-sum term carries 1/N.
        total += b[n] * ((long double)g1 / (long double)n + (long double)g0 / (long double)N);
    }
    return (double)total;
}

double harmonic_series_value(const HeckeEigenform& f) {
    double zeta2 = kPi * kPi / 6.0;
    if (f.level > 1) zeta2 *= 1.0 - 1.0 / ((double)f.level * (double)f.level);
    return sym_sq_L1(f) / zeta2;
}

}  // namespace odl
