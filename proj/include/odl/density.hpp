// One-level density statistics for low-lying zeros: archimedean terms,
// prime-power sums, symmetry-type kernels W(G), and family averages.
#pragma once

#include <cstdint>
#include <vector>

#include "odl/modforms.hpp"
#include "odl/testfun.hpp"
#include "odl/window.hpp"

namespace odl {

// Random-matrix symmetry types.  Each kernel has the form
//   W(G) = atom * delta_0 + w(x) dx,
// with Fourier transform  What(G) = delta_0(xi) + m(xi)  on |xi| < 2.
enum class SymmetryClass { SOeven, SOodd, O, Sp };

// Mass of the point measure at x = 0.
double symmetry_atom(SymmetryClass g);
// Smooth density w(x) (the part of W(G) absolutely continuous in x).
double symmetry_density(SymmetryClass g, double x);
// Fourier-side kernel m(xi), valid for |xi| < 2.
double symmetry_fourier_m(SymmetryClass g, double xi);

// integral phi(x) W(G)(x) dx, evaluated on the Fourier side:
//   phihat(0) + integral phihat(xi) m(xi) dxi   (closed form for the
// triangular phihat of the squared-sinc family).
double predict_integral(SymmetryClass g, const TestFunction& phi);

// The same integral evaluated directly in x: atom * phi(0) plus adaptive
// quadrature of phi * w on [0, U] with analytic oscillatory tails.
// Independent of the Fourier route; the two agree to ~1e-10.
double predict_integral_space(SymmetryClass g, const TestFunction& phi);

// Archimedean term of the zero-counting formula at weight k and zero
// rescaling factor `scale` (= log of the analytic conductor):
//   (1/2 pi) int (2 Re psi((k+1)/2 + i r) - log 2 pi) phi(r scale / 2 pi) dr,
// evaluated through the Binet integral representation of psi, which turns
// the slowly convergent r-integral into rapidly convergent Laplace-type
// integrals against phihat.
double digamma_arch_term(int k, const TestFunction& phi, double scale);

// Additive decomposition of the zero-counting statistic.  total() is the
// exact sum of the buckets (no hidden remainders).
struct DensityTerms {
    double arch = 0.0;    // gamma-factor and conductor contribution
    double diag = 0.0;    // +sum_p (log p / p) phihat(2 log p / s) piece
    double lam_p = 0.0;   // -sum_p lambda(p) piece
    double lam_p2 = 0.0;  // -sum_p lambda(p^2) piece
    double higher = 0.0;  // prime powers p^nu, nu >= 3
    double total() const { return arch + diag + lam_p + lam_p2 + higher; }
};

// Zero-counting statistic sum_gamma phi(gamma * scale / 2 pi) for a single
// eigenform, via the explicit formula with all prime powers inside the
// support of phihat included exactly.  For level > 1 the degree-one Euler
// factor at the level prime and the extra log(level) conductor term are
// included.  Throws if f.pmax is below e^{scale * support_radius}.
DensityTerms density_single_terms(const HeckeEigenform& f, const TestFunction& phi,
                                  double scale);
double density_single(const HeckeEigenform& f, const TestFunction& phi, double scale);

// Zero-counting statistic for the symmetric-square L-function, scale =
// 2 log K.  Buckets: arch = integral of phi; diag carries the sign-flipped
// -sum (log p/p) phihat(log p / log K); lam_p carries the lambda(p^2) sum;
// lam_p2 carries the (lambda(p^4) - lambda(p^2)) sum; higher is unused.
DensityTerms density_single_sym2(const HeckeEigenform& f, const TestFunction& phi,
                                 double scale);

struct FamilyDensityReport {
    double K = 0.0;
    int parity = 0;                               // 0 = all, +1, -1
    SymmetryClass symmetry = SymmetryClass::O;
    DensityTerms terms;                           // harmonic-weighted bucket sums
    double mass = 0.0;                            // harmonic count of the family
    double statistic = 0.0;                       // terms.total() / mass
    double prediction = 0.0;                      // integral phi W(G)
};

// Harmonic-weighted family average of the zero-counting statistic over
// even weights k ~ K (window h), zeros rescaled by log K^2, itemized in
// the standard bucket decomposition: the arch bucket carries the limiting
// value (int phi) * mass, diag the +sum (log p/p) piece, and the lambda
// buckets the harmonic averages of lambda(p^nu) evaluated through the
// trace-formula geometric side (no eigenvalue tables needed).  The
// finite-size digamma corrections are part of the decomposition's
// unmodeled 1/log K error.  parity 0 -> O, +1 -> SOeven, -1 -> SOodd.
// Cost grows like K^{2 r} for phihat support radius r; r <= 1 is cheap.
FamilyDensityReport family_average(const SmoothWindow& h, double K, int parity,
                                   const TestFunction& phi);

// Natural-weight family average of the symmetric-square statistic
// (spectral route over eigenforms; feasible for modest K).  pmax bounds
// the Hecke eigenvalue tables and must cover the support of phihat.
FamilyDensityReport family_average_sym2(const SmoothWindow& h, double K,
                                        const TestFunction& phi, std::uint64_t pmax);

// Support threshold below which averaged positivity of the statistic
// forces a positive proportion of non-vanishing: 1/2 + 1/(2 nu).
double corollary_bound(double nu);

// Partial sums of the exponential sum  sum_{p <= X, p = a (c)} e(2 sqrt p / c)
// on a geometric grid, optionally weighted by log p, with a power-law fit
// of |S(X)| over the top two decades (X >= 1e3).
struct ExpSumTrace {
    std::uint64_t a = 0, c = 1;
    bool weighted = false;
    std::vector<double> X;
    std::vector<double> re_sum, im_sum, abs_sum;
    double exponent = 0.0;  // fitted growth exponent of |S(X)|
    double sigma = 0.0;     // standard error of the fit
};
ExpSumTrace hyp4_sum(std::uint64_t a, std::uint64_t c, std::uint64_t X, bool weighted);

}  // namespace odl
