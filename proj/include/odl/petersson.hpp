// Petersson trace formula in the weight and level aspects, with the
// harmonic averaging operators built on the geometric (Kloosterman/Bessel)
// side.
//
// Level 1, weight k (spectral sum over the Hecke eigenbasis of weight k):
//   (2 pi^2/(k-1)) sum_f lambda_f(m) lambda_f(n) / L(1, sym^2 f)
//     = delta(m,n) + 2 pi i^k sum_c S(m,n;c)/c J_{k-1}(4 pi sqrt(mn)/c).
//
// Prime level N, weight 2 (harmonic average over the newform basis):
//   (12/(N - 1/N)) sum_f omega_f lambda_f(m) lambda_f(n)
//     = delta(m,n) - 2 pi sum_{c = 0 (N)} S(m,n;c)/c J_1(4 pi sqrt(mn)/c),
// with omega_f = (sum_t lambda_f(t^2)/t)^{-1} the harmonic weight.
#pragma once

#include <cstdint>
#include <vector>

#include "odl/window.hpp"

namespace odl {

struct PeterssonReport {
    int k = 0;
    std::uint64_t m = 0, n = 0;
    double lhs = 0;         // spectral side
    double rhs = 0;         // delta term + truncated Kloosterman/Bessel sum
    double tail_bound = 0;  // rigorous bound on the dropped c > cmax tail
    double residual = 0;    // |lhs - rhs|
    std::uint64_t cmax = 0;
};

// Both sides at level 1.  cmax = 0 picks the smallest truncation whose
// rigorous tail bound (Weil bound times the small-argument Bessel bound
// |J_{k-1}(x)| <= min(1, (x/2)^{k-1}/(k-1)!)) is below 1e-10.  The
// spectral side evaluates L(1, sym^2) by the smoothed (exponentially
// damped) Dirichlet-series route, accurate to ~1e-13, so the residual is
// dominated by the geometric tail.  Throws if cmax is given but its tail
// bound exceeds 1e-6 (truncation too small).
PeterssonReport petersson_level1(int k, std::uint64_t m, std::uint64_t n,
                                 std::uint64_t cmax = 0);

struct KernelValue {
    double value = 0;     // delta(m,n) - 2 pi sum_{c <= cmax} ...
    double tail_rms = 0;  // root-mean-square model of the dropped tail
    std::uint64_t cmax = 0;
};

// Harmonic-average kernel at prime level N (see header comment).  The sum
// runs over c = N, 2N, ..., up to cmax (cmax must be a positive multiple
// of N).  The terms decay only like c^{-3/2} here (weight 2, J_1), so a
// rigorous Weil-based tail bound is vacuous at usable truncations; the
// reported tail_rms treats the dropped Kloosterman phases as square-root
// cancelling, which sweep tests validate empirically.
KernelValue petersson_kernel_levelN(std::uint64_t N, std::uint64_t m,
                                    std::uint64_t n, std::uint64_t cmax);

// One term of a payload that is a linear combination of lambda(m)lambda(n).
struct PairPayload {
    std::uint64_t m = 1, n = 1;
    double coeff = 1.0;
};

// Harmonic weight-aspect average
//   sum_{k even} h((k-1)/K) (2 pi^2/(k-1)) sum_f X_f / L(1, sym^2 f)
// for X_f = sum_j coeff_j lambda_f(m_j) lambda_f(n_j), evaluated through
// the geometric side of the trace formula (exact also for weights whose
// cusp space is trivial, where both sides vanish).  parity selects the
// sign i^k of the functional equation: 0 for all even k, +1 for
// k = 0 (mod 4), -1 for k = 2 (mod 4).
double average_AK(const SmoothWindow& h, double K, int parity,
                  const std::vector<PairPayload>& payload);

struct LevelAverage {
    double value = 0;
    double tail_rms = 0;  // accumulated kernel tail model
};

// Level-aspect harmonic average S[lambda(m)] at prime level N, where
//   S[X] = ((N - 1/N)/12) sum_f omega_f X_f
// and the harmonic weight omega_f is expanded through the truncated
// series omega_f^{-1} ~ sum_{t <= N^{delta0}} lambda_f(t^2)/t, turning the
// average into a finite combination of kernel values.  parity 0 gives S,
// parity +1/-1 the projections S^{+-} onto functional-equation sign
// eps_f = lambda_f(N) sqrt(N) via (1 +- eps_f)/2.  Requires gcd(m, N) = 1.
LevelAverage average_S_levelN(std::uint64_t N, int parity, std::uint64_t m,
                              double delta0, std::uint64_t cmax);

}  // namespace odl
