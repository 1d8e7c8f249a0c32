// Elementary arithmetic: sieves, multiplicative functions, Kloosterman-type
// exponential sums and their closed forms, and prime exponential-sum
// experiments.
#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace odl {

// All primes <= n, by sieve of Eratosthenes.
std::vector<uint32_t> primes_up_to(uint64_t n);

// Prime factorization n = prod p^e, p ascending. Requires n >= 1.
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);

uint64_t gcd_u64(uint64_t a, uint64_t b);
uint64_t tau_divisors(uint64_t n);   // number of divisors
uint64_t euler_phi(uint64_t n);
int mobius(uint64_t n);              // 0 if not squarefree

// Inverse of a mod m for gcd(a,m)=1, in [0,m).
uint64_t mod_inverse(uint64_t a, uint64_t m);

// Kloosterman sum S(m,n;c) = sum_{x xbar = 1 (c)} e((m x + n xbar)/c).
// Real by the x <-> -x pairing; computed as a cosine sum.
//
// kloosterman_enum is the direct O(c) definition (the oracle);
// kloosterman factors c into prime powers and uses twisted
// multiplicativity S(m,n;rs) = S(m sbar, n sbar; r) S(m rbar, n rbar; s).
double kloosterman_enum(uint64_t m, uint64_t n, uint64_t c);
double kloosterman(uint64_t m, uint64_t n, uint64_t c);

// Batched prime-power evaluation: S(m, n_j; q) for shared modulus q = p^e.
// Shares the unit/inverse enumeration across the n_j.
std::vector<double> kloosterman_batch(uint64_t m, const std::vector<uint64_t>& ns,
                                      uint64_t q);

// Weil bound (m,n,c)^{1/2} tau(c) c^{1/2}.
double weil_bound(uint64_t m, uint64_t n, uint64_t c);

// Twisted average S_n(c) = sum*_{a (c)} S(n^2, a^2; c) e(2na/c).
// twisted_sum_enum: O(c^2) double sum from the definition (oracle).
// twisted_sum_closed: multiplicative closed form,
//   p not dividing n: S_n(p) = 1, S_n(p^r) = 0 for odd r > 1,
//                     S_n(p^r) = phi(p^r) p^{r/2} for even r > 1;
//   p | n:            S_n(p) = -phi(p), S_n(p^r) = 0 for r > 1.
double twisted_sum_enum(uint64_t n, uint64_t c);
double twisted_sum_closed(uint64_t n, uint64_t c);

// Level factorization S(N n^2, p; l N) = mu(N) S(n^2, Nbar p; l) for
// squarefree N, (l, N) = 1 and (p, N) = 1. Returns the right-hand side
// evaluated by enumeration; tests compare against the left-hand side.
double level_factor_rhs(uint64_t N, uint64_t n, uint64_t p, uint64_t l);

// Exponential sum over primes:  sum_{p <= X, p = a (mod c)} e(2 sqrt(p)/c).
// Returns partial sums |S(X_i)| on a geometric grid of X_i up to X.
struct PrimePhaseSeries {
  std::vector<double> X;       // grid abscissae
  std::vector<double> abs_sum; // |sum_{p <= X_i}| values
};
PrimePhaseSeries hyp4_series(uint64_t a, uint64_t c, uint64_t X,
                             const std::vector<uint32_t>& primes,
                             int grid_per_decade = 16);

// Least-squares fit of log|S| vs log X on points with X >= xmin.
// Returns slope (growth exponent) and its standard error.
struct PowerFit {
  double exponent = 0.0;
  double sigma = 0.0;
  int npoints = 0;
};
PowerFit fit_growth_exponent(const PrimePhaseSeries& s, double xmin);

}  // namespace odl
