#include "odl/density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "odl/arith.hpp"
#include "odl/bessel.hpp"
#include "odl/petersson.hpp"
#include "odl/quad.hpp"

namespace odl {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

double sinc(double t) {
    if (std::fabs(t) < 1e-8) return 1.0 - t * t / 6.0;
    return std::sin(t) / t;
}

// Compensated accumulator for long prime sums.
struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// int_U^inf cos(w x + phase) / x^p dx by repeated integration by parts;
// three terms leave an error below p(p+1)(p+2)/(w^3 U^{p+3}).
double oscillatory_tail(double w, double phase, int p, double U, int depth = 3) {
    if (depth == 0) return 0.0;
    // d/dx sin(wx+phase)/w = cos(wx+phase)
    double boundary = -std::sin(w * U + phase) / (w * std::pow(U, p));
    return boundary + (p / w) * oscillatory_tail(w, phase - kPi / 2.0, p + 1, U, depth - 1);
}

double tail_sin(double w, int p, double U) {
    if (w == 0.0) return 0.0;
    if (w < 0.0) return -tail_sin(-w, p, U);
    return oscillatory_tail(w, -kPi / 2.0, p, U);
}

double tail_cos(double w, int p, double U) {
    if (w == 0.0) throw std::invalid_argument("non-oscillatory tail");
    if (w < 0.0) return tail_cos(-w, p, U);
    return oscillatory_tail(w, 0.0, p, U);
}

}  // namespace

double symmetry_atom(SymmetryClass g) {
    switch (g) {
        case SymmetryClass::SOeven: return 0.0;
        case SymmetryClass::SOodd: return 1.0;
        case SymmetryClass::O: return 0.5;
        case SymmetryClass::Sp: return 0.0;
    }
    throw std::invalid_argument("unknown symmetry class");
}

double symmetry_density(SymmetryClass g, double x) {
    switch (g) {
        case SymmetryClass::SOeven: return 1.0 + sinc(kTwoPi * x);
        case SymmetryClass::SOodd: return 1.0 - sinc(kTwoPi * x);
        case SymmetryClass::O: return 1.0;
        case SymmetryClass::Sp: return 1.0 - sinc(kTwoPi * x);
    }
    throw std::invalid_argument("unknown symmetry class");
}

double symmetry_fourier_m(SymmetryClass g, double xi) {
    if (std::fabs(xi) >= 2.0)
        throw std::invalid_argument("Fourier kernel m(xi) is only known for |xi| < 2");
    const bool inside = std::fabs(xi) <= 1.0;
    switch (g) {
        case SymmetryClass::SOeven: return inside ? 0.5 : 0.0;
        case SymmetryClass::SOodd: return inside ? 0.5 : 1.0;
        case SymmetryClass::O: return 0.5;
        case SymmetryClass::Sp: return inside ? -0.5 : 0.0;
    }
    throw std::invalid_argument("unknown symmetry class");
}

namespace {

// int_{-c}^{c} phihat(xi) dxi for the triangular phihat (closed form).
double triangle_mass(const TestFunction& phi, double c) {
    const double r = phi.support_radius();
    if (c >= r) return phi.at_zero();
    return (1.0 / r) * (2.0 * c - c * c / r);
}

}  // namespace

double predict_integral(SymmetryClass g, const TestFunction& phi) {
    const double h0 = phi.hat(0.0);
    const double inner = triangle_mass(phi, 1.0);  // int_{|xi|<=1} phihat
    const double all = phi.at_zero();              // int_R phihat = phi(0)
    switch (g) {
        case SymmetryClass::SOeven: return h0 + 0.5 * inner;
        case SymmetryClass::SOodd: return h0 + all - 0.5 * inner;
        case SymmetryClass::O: return h0 + 0.5 * all;
        case SymmetryClass::Sp: return h0 - 0.5 * inner;
    }
    throw std::invalid_argument("unknown symmetry class");
}

double predict_integral_space(SymmetryClass g, const TestFunction& phi) {
    const double sign = (g == SymmetryClass::SOeven)  ? 1.0
                        : (g == SymmetryClass::O)     ? 0.0
                                                      : -1.0;
    const double U = 400.0;
    QuadResult q = integrate(
        [&](double x) { return phi(x) * symmetry_density(g, x); }, 0.0, U, 1e-12, 52);

    // Analytic tail: phi(x) w(x) = (2/b^2) [ (1 - cos bx)/x^2
    //   + (sign/a) ( sin(ax)/x^3 - (sin((a+b)x) + sin((a-b)x))/(2 x^3) ) ]
    // with a = 2 pi, b = 4 pi nu.
    const double a = kTwoPi;
    const double b = 2.0 * kTwoPi * phi.nu;
    double tail = 1.0 / U - tail_cos(b, 2, U);
    if (sign != 0.0) {
        tail += (sign / a) * (tail_sin(a, 3, U) - 0.5 * tail_sin(a + b, 3, U) -
                              0.5 * tail_sin(a - b, 3, U));
    }
    tail *= 2.0 / (b * b);

    return symmetry_atom(g) * phi.at_zero() + 2.0 * (q.value + tail);
}

double digamma_arch_term(int k, const TestFunction& phi, double scale) {
    if (k < 2) throw std::invalid_argument("weight must be at least 2");
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    const double m = (k + 1) / 2.0;
    const double s = scale;
    const double h0 = phi.hat(0.0);
    const double rs = phi.support_radius() * s;  // phihat(xi/s) vanishes beyond

    // (1/2pi) int (2 Re psi(m + i r) - log 2pi) phi(r s / 2pi) dr.  Binet's
    // formula  psi(z) = log z - 1/(2z) - 2 int_0^inf t/((t^2+z^2)(e^{2pi t}-1)) dt
    // converts each piece into a Laplace transform against phihat:
    //   log-term:  2 log(m) phihat(0) + 2 int e^{-m xi} (phihat(0)-phihat(xi/s))/xi
    //   1/(2z):   -int e^{-m xi} phihat(xi/s)
    //   integral: -4 int e^{-m xi} phihat(xi/s) ( (1/4) coth(xi/2) - 1/(2 xi) ).
    const double xi_end = std::max(rs, 60.0 / m) + 1.0;

    auto g_log = [&](double xi) {
        if (xi <= 0.0) return h0 / rs;  // triangular phihat: exact limit
        return std::exp(-m * xi) * (h0 - phi.hat(xi / s)) / xi;
    };
    auto g_half = [&](double xi) { return std::exp(-m * xi) * phi.hat(xi / s); };
    auto g_binet = [&](double xi) {
        if (xi <= 0.0) return 0.0;
        double kernel;  // (1/4) coth(xi/2) - 1/(2 xi)
        if (xi < 1e-3)
            kernel = xi / 24.0 - xi * xi * xi / 1440.0;
        else
            kernel = 0.25 / std::tanh(xi / 2.0) - 0.5 / xi;
        return std::exp(-m * xi) * phi.hat(xi / s) * kernel;
    };

    // Split at the kink of phihat.
    double i_log = 0.0, i_half = 0.0, i_binet = 0.0;
    const double split = std::min(rs, xi_end);
    i_log += integrate(g_log, 0.0, split, 1e-14, 52).value;
    i_half += integrate(g_half, 0.0, split, 1e-14, 52).value;
    i_binet += integrate(g_binet, 0.0, split, 1e-14, 52).value;
    if (xi_end > split) i_log += integrate(g_log, split, xi_end, 1e-14, 52).value;

    return ((2.0 * std::log(m) - std::log(kTwoPi)) * h0 + 2.0 * i_log - i_half -
            4.0 * i_binet) /
           s;
}

DensityTerms density_single_terms(const HeckeEigenform& f, const TestFunction& phi,
                                  double scale) {
    const double s = scale;
    const double r = phi.support_radius();
    DensityTerms out;
    out.arch = digamma_arch_term(f.k, phi, s);
    if (f.level > 1) out.arch += std::log(static_cast<double>(f.level)) * phi.hat(0.0) / s;

    const double logpmax = r * s;
    const auto pmax_needed =
        static_cast<std::uint64_t>(std::floor(std::exp(std::min(logpmax, 50.0)))) + 1;
    if (pmax_needed >= 2 && f.pmax < pmax_needed && logpmax >= std::log(2.0))
        throw std::invalid_argument("eigenvalue table does not cover the support of phihat");

    Kahan diag, lam_p, lam_p2, higher;
    for (std::uint32_t p : primes_up_to(pmax_needed)) {
        const double lp = std::log(static_cast<double>(p));
        const bool at_level = (f.level > 1 && p == f.level);
        for (int nu = 1; nu * lp < logpmax; ++nu) {
            const double weight =
                (2.0 / s) * lp * std::pow(static_cast<double>(p), -0.5 * nu) *
                phi.hat(nu * lp / s);
            if (weight == 0.0) continue;
            if (at_level) {
                // Degree-one Euler factor: alpha^nu = lambda(level)^nu.
                const double c = static_cast<double>(
                    f.lambda(static_cast<std::uint64_t>(std::pow(double(p), nu))));
                if (nu == 1)
                    lam_p.add(-weight * c);
                else if (nu == 2)
                    lam_p2.add(-weight * c);
                else
                    higher.add(-weight * c);
                continue;
            }
            if (nu == 1) {
                lam_p.add(-weight * static_cast<double>(f.lambda(p)));
            } else if (nu == 2) {
                // lambda(p^2) - 1: the -1 is the diagonal piece.
                lam_p2.add(-weight *
                           static_cast<double>(f.lambda(std::uint64_t(p) * p)));
                diag.add(weight);
            } else {
                std::uint64_t pn = 1, pn2 = 1;
                for (int i = 0; i < nu; ++i) pn *= p;
                for (int i = 0; i < nu - 2; ++i) pn2 *= p;
                higher.add(-weight * static_cast<double>(f.lambda(pn) - f.lambda(pn2)));
            }
        }
    }
    out.diag = diag.s;
    out.lam_p = lam_p.s;
    out.lam_p2 = lam_p2.s;
    out.higher = higher.s;
    return out;
}

double density_single(const HeckeEigenform& f, const TestFunction& phi, double scale) {
    return density_single_terms(f, phi, scale).total();
}

DensityTerms density_single_sym2(const HeckeEigenform& f, const TestFunction& phi,
                                 double scale) {
    const double logK = scale / 2.0;
    if (!(logK > 0.0)) throw std::invalid_argument("scale must be positive");
    const double r = phi.support_radius();
    DensityTerms out;
    out.arch = phi.integral();

    // lambda(p^2) enters at argument log p / (2 log K): primes up to K^{2r}.
    const double logp_sq = std::min(2.0 * r * logK, 40.0);
    const double logp_lin = std::min(r * logK, 40.0);
    const auto pmax_needed =
        static_cast<std::uint64_t>(std::floor(std::exp(std::max(logp_sq, logp_lin)))) + 1;
    if (f.pmax < pmax_needed)
        throw std::invalid_argument("eigenvalue table does not cover the support of phihat");

    Kahan diag, quad_term, quartic;
    for (std::uint32_t p : primes_up_to(pmax_needed)) {
        if (f.level > 1 && p == f.level) continue;
        const double lp = std::log(static_cast<double>(p));
        const double pd = static_cast<double>(p);
        if (lp < logp_lin) {
            const double h1 = phi.hat(lp / logK);
            diag.add(-(lp / pd) * h1 / logK);
            if (h1 != 0.0) {
                const std::uint64_t p2 = std::uint64_t(p) * p;
                const double l2 = static_cast<double>(f.lambda(p2));
                const double l4 = static_cast<double>(f.lambda(p2 * p2));
                quartic.add(-(lp / pd) * (l4 - l2) * h1 / logK);
            }
        }
        if (lp < logp_sq) {
            const double h2 = phi.hat(lp / (2.0 * logK));
            if (h2 != 0.0) {
                const double l2 = static_cast<double>(f.lambda(std::uint64_t(p) * p));
                quad_term.add(-(lp / std::sqrt(pd)) * l2 * h2 / logK);
            }
        }
    }
    out.diag = diag.s;
    out.lam_p = quad_term.s;
    out.lam_p2 = quartic.s;
    return out;
}

namespace {

// Per-weight harmonic mass (2 pi^2/(k-1)) sum_f 1/L(1, sym^2 f) through the
// trace formula at (1,1): 1 + 2 pi i^k sum_c S(1,1;c)/c J_{k-1}(4 pi / c).
// At c = 64 the Bessel tail is far below double precision for k >= 12.
std::vector<double> per_weight_mass(int klo, int khi) {
    constexpr std::uint64_t cmax = 64;
    std::vector<double> kval(cmax + 1, 0.0);
    std::vector<std::vector<double>> jtab(cmax + 1);
    for (std::uint64_t c = 1; c <= cmax; ++c) {
        kval[c] = kloosterman(1, 1, c);
        if (kval[c] != 0.0) jtab[c] = bessel_j_array(khi, 4.0 * kPi / c);
    }
    std::vector<double> mass(khi + 1, 0.0);
    for (int k = klo; k <= khi; k += 2) {
        double csum = 0.0;
        for (std::uint64_t c = 1; c <= cmax; ++c)
            if (kval[c] != 0.0) csum += kval[c] / static_cast<double>(c) * jtab[c][k - 1];
        double sign = (k % 4 == 0) ? 1.0 : -1.0;
        mass[k] = 1.0 + 2.0 * kPi * sign * csum;
    }
    return mass;
}

}  // namespace

FamilyDensityReport family_average(const SmoothWindow& h, double K, int parity,
                                   const TestFunction& phi) {
    if (parity != 0 && parity != 1 && parity != -1)
        throw std::invalid_argument("parity must be 0 or +-1");
    FamilyDensityReport rep;
    rep.K = K;
    rep.parity = parity;
    rep.symmetry = (parity == 0)   ? SymmetryClass::O
                   : (parity == 1) ? SymmetryClass::SOeven
                                   : SymmetryClass::SOodd;
    rep.prediction = predict_integral(rep.symmetry, phi);

    const double s = 2.0 * std::log(K);  // zeros rescaled by log K^2
    const double r = phi.support_radius();
    const double logpmax = std::min(r * s, 40.0);

    int klo = static_cast<int>(std::floor(h.a() * K + 1));
    int khi = static_cast<int>(std::ceil(h.b() * K + 1));
    if (klo < 12) klo = 12;
    if (klo % 2) ++klo;

    // Harmonic mass of the family, weight by weight.
    const std::vector<double> gmass = per_weight_mass(klo, khi);
    Kahan mass;
    for (int k = klo; k <= khi; k += 2) {
        if (parity == +1 && k % 4 != 0) continue;
        if (parity == -1 && k % 4 != 2) continue;
        const double w = h((k - 1) / K);
        if (w == 0.0) continue;
        mass.add(w * gmass[k]);
    }
    rep.mass = mass.s;
    // Bucket I carries the limiting value int phi of the archimedean term;
    // its finite-size digamma corrections belong to the unmodeled 1/log K
    // error of the decomposition.
    rep.terms.arch = phi.integral() * rep.mass;

    // Prime buckets through harmonic averages of lambda(p^nu) computed on
    // the geometric side of the trace formula.
    const auto primes = primes_up_to(
        static_cast<std::uint64_t>(std::floor(std::exp(logpmax))) + 1);
    auto avg_lambda = [&](std::uint64_t mth) {
        return average_AK(h, K, parity, {{1, mth, 1.0}});
    };

    // diag bucket is family-independent; +(2/s)(log p/p) phihat(2 log p / s).
    Kahan diag;
    for (std::uint32_t p : primes) {
        const double lp = std::log(static_cast<double>(p));
        if (2.0 * lp >= logpmax) break;
        diag.add((2.0 / s) * (lp / p) * phi.hat(2.0 * lp / s));
    }
    rep.terms.diag = diag.s * rep.mass;

    // lambda(p) bucket: parallel over primes, deterministic recombination.
    std::vector<double> contrib(primes.size(), 0.0);
    {
        const unsigned nthreads = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= primes.size()) return;
                const std::uint32_t p = primes[i];
                const double lp = std::log(static_cast<double>(p));
                if (lp >= logpmax) continue;
                const double w = phi.hat(lp / s);
                if (w == 0.0) continue;
                contrib[i] = -(2.0 / s) * lp / std::sqrt(static_cast<double>(p)) * w *
                             avg_lambda(p);
            }
        };
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    Kahan lam_p;
    for (double v : contrib) lam_p.add(v);
    rep.terms.lam_p = lam_p.s;

    // lambda(p^2) and higher prime powers (few primes; sequential).
    Kahan lam_p2, higher;
    for (std::uint32_t p : primes) {
        const double lp = std::log(static_cast<double>(p));
        if (2.0 * lp >= logpmax) break;
        const int nu_max = static_cast<int>(std::floor(logpmax / lp));
        // Harmonic averages of lambda(p^j) for all needed powers.
        std::vector<double> avg(nu_max + 1, 0.0);
        avg[0] = rep.mass;
        std::uint64_t pj = 1;
        for (int j = 1; j <= nu_max; ++j) {
            pj *= p;
            avg[j] = avg_lambda(pj);
        }
        for (int nu = 2; nu * lp < logpmax; ++nu) {
            const double weight = (2.0 / s) * lp *
                                  std::pow(static_cast<double>(p), -0.5 * nu) *
                                  phi.hat(nu * lp / s);
            if (weight == 0.0) continue;
            if (nu == 2)
                lam_p2.add(-weight * avg[2]);  // diag bucket holds the +1 part
            else
                higher.add(-weight * (avg[nu] - avg[nu - 2]));
        }
    }
    rep.terms.lam_p2 = lam_p2.s;
    rep.terms.higher = higher.s;

    rep.statistic = rep.terms.total() / rep.mass;
    return rep;
}

FamilyDensityReport family_average_sym2(const SmoothWindow& h, double K,
                                        const TestFunction& phi, std::uint64_t pmax) {
    FamilyDensityReport rep;
    rep.K = K;
    rep.parity = 0;
    rep.symmetry = SymmetryClass::Sp;
    rep.prediction = predict_integral(SymmetryClass::Sp, phi);

    const double scale = 2.0 * std::log(K);
    int klo = static_cast<int>(std::floor(h.a() * K + 1));
    int khi = static_cast<int>(std::ceil(h.b() * K + 1));
    if (klo < 12) klo = 12;
    if (klo % 2) ++klo;

    Kahan mass, total, arch, diag, lam_p, lam_p2;
    for (int k = klo; k <= khi; k += 2) {
        const double w = h((k - 1) / K) * 12.0 / (k - 1);
        if (w == 0.0) continue;
        for (const HeckeEigenform& f : eigenforms_for_weight(k, pmax)) {
            const DensityTerms t = density_single_sym2(f, phi, scale);
            mass.add(w);
            total.add(w * t.total());
            arch.add(w * t.arch);
            diag.add(w * t.diag);
            lam_p.add(w * t.lam_p);
            lam_p2.add(w * t.lam_p2);
        }
    }
    rep.mass = mass.s;
    rep.terms.arch = arch.s;
    rep.terms.diag = diag.s;
    rep.terms.lam_p = lam_p.s;
    rep.terms.lam_p2 = lam_p2.s;
    rep.statistic = total.s / mass.s;
    return rep;
}

double corollary_bound(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("nu must be positive");
    return 0.5 + 0.5 / nu;
}

ExpSumTrace hyp4_sum(std::uint64_t a, std::uint64_t c, std::uint64_t X, bool weighted) {
    if (c == 0 || std::gcd(a, c) != 1)
        throw std::invalid_argument("residue class must be coprime to the modulus");
    ExpSumTrace out;
    out.a = a;
    out.c = c;
    out.weighted = weighted;

    const double ratio = std::pow(10.0, 1.0 / 16.0);
    double next = 10.0;
    Kahan re, im;
    for (std::uint32_t p : primes_up_to(X)) {
        while (static_cast<double>(p) > next) {
            out.X.push_back(next);
            out.re_sum.push_back(re.s);
            out.im_sum.push_back(im.s);
            out.abs_sum.push_back(std::hypot(re.s, im.s));
            next *= ratio;
        }
        if (c > 1 && p % c != a % c) continue;
        const double ph = kTwoPi * 2.0 * std::sqrt(static_cast<double>(p)) /
                          static_cast<double>(c);
        const double w = weighted ? std::log(static_cast<double>(p)) : 1.0;
        re.add(w * std::cos(ph));
        im.add(w * std::sin(ph));
    }
    out.X.push_back(static_cast<double>(X));
    out.re_sum.push_back(re.s);
    out.im_sum.push_back(im.s);
    out.abs_sum.push_back(std::hypot(re.s, im.s));

    PrimePhaseSeries series{out.X, out.abs_sum};
    const double xmin = std::max(1e3, static_cast<double>(X) / 100.0);
    const PowerFit fit = fit_growth_exponent(series, xmin);
    out.exponent = fit.exponent;
    out.sigma = fit.sigma;
    return out;
}

}  // namespace odl
