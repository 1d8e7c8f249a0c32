#include "odl/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace odl {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::vector<uint32_t> primes_up_to(uint64_t n) {
  std::vector<uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (uint64_t i = 2; i * i <= n; ++i)
    if (!comp[i])
      for (uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  for (uint64_t i = 2; i <= n; ++i)
    if (!comp[i]) out.push_back(static_cast<uint32_t>(i));
  return out;
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  std::vector<std::pair<uint64_t, int>> pe;
  for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      pe.emplace_back(p, e);
    }
  }
  if (n > 1) pe.emplace_back(n, 1);
  return pe;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

uint64_t tau_divisors(uint64_t n) {
  uint64_t t = 1;
  for (auto& [p, e] : factorize(n)) t *= static_cast<uint64_t>(e + 1);
  return t;
}

uint64_t euler_phi(uint64_t n) {
  uint64_t r = n;
  for (auto& [p, e] : factorize(n)) r -= r / p;
  return r;
}

int mobius(uint64_t n) {
  int m = 1;
  for (auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

uint64_t mod_inverse(uint64_t a, uint64_t m) {
  int64_t t = 0, newt = 1;
  int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
  while (newr != 0) {
    int64_t q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (r != 1) throw std::invalid_argument("mod_inverse: not invertible");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

double kloosterman_enum(uint64_t m, uint64_t n, uint64_t c) {
  if (c == 1) return 1.0;
  const uint64_t mr = m % c, nr = n % c;
  double s = 0.0;
  for (uint64_t x = 1; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    uint64_t xi = mod_inverse(x, c);
    uint64_t idx = (mr * x + nr * xi) % c;
    s += std::cos(kTwoPi * static_cast<double>(idx) / static_cast<double>(c));
  }
  return s;
}

namespace {

// All modular inverses of units mod prime p via the O(p) recurrence.
std::vector<uint32_t> inverse_table_prime(uint32_t p) {
  std::vector<uint32_t> inv(p, 0);
  if (p >= 2) inv[1] = 1;
  for (uint32_t i = 2; i < p; ++i)
    inv[i] = static_cast<uint32_t>(
        p - static_cast<uint64_t>(p / i) * inv[p % i] % p);
  return inv;
}

// S(m, n_j; q) for prime power q = p^e.  Enumerates units once, lifting
// inverses from mod p by Newton iteration, and pairs x with q-x so only
// cosine evaluations on half the range are needed.
void kloosterman_ppow_batch(uint64_t m, const std::vector<uint64_t>& ns,
                            uint64_t p, int e, uint64_t q, double* out) {
  const size_t nn = ns.size();
  for (size_t j = 0; j < nn; ++j) out[j] = 0.0;
  if (q == 1) {
    for (size_t j = 0; j < nn; ++j) out[j] = 1.0;
    return;
  }
  const double w = kTwoPi / static_cast<double>(q);
  std::vector<uint32_t> invp = inverse_table_prime(static_cast<uint32_t>(p));
  const uint64_t mr = m % q;
  std::vector<uint64_t> nr(nn);
  for (size_t j = 0; j < nn; ++j) nr[j] = ns[j] % q;

  // Units pair off as {x, q-x} with conjugate summands, so only x < q/2 is
  // enumerated (q = 2 is handled by the caller).
  const uint64_t half = q / 2;
  for (uint64_t x = 1; x <= half; ++x) {
    if (x % p == 0) continue;
    // lift inverse of x from mod p to mod q by Newton iteration
    uint64_t y = invp[x % p];
    uint64_t mod = p;
    while (mod < q) {
      mod = (mod > q / mod) ? q : mod * mod;
      __uint128_t t = static_cast<__uint128_t>(x) * y % mod;
      uint64_t two_minus = (2 + mod - static_cast<uint64_t>(t)) % mod;
      y = static_cast<uint64_t>(static_cast<__uint128_t>(y) * two_minus % mod);
    }
    const uint64_t mx = mr * x % q;
    for (size_t j = 0; j < nn; ++j) {
      uint64_t idx = (mx + nr[j] * y) % q;
      out[j] += 2.0 * std::cos(w * static_cast<double>(idx));
    }
  }
}

}  // namespace

std::vector<double> kloosterman_batch(uint64_t m, const std::vector<uint64_t>& ns,
                                      uint64_t q) {
  auto pe = factorize(q);
  if (q > 1 && pe.size() != 1)
    throw std::invalid_argument("kloosterman_batch: modulus must be a prime power");
  std::vector<double> out(ns.size(), 0.0);
  if (q == 1) {
    for (auto& v : out) v = 1.0;
    return out;
  }
  if (q == 2) {
    // single unit x = 1: e((m + n)/2)
    for (size_t j = 0; j < ns.size(); ++j)
      out[j] = ((m + ns[j]) % 2 == 0) ? 1.0 : -1.0;
    return out;
  }
  kloosterman_ppow_batch(m, ns, pe[0].first, pe[0].second, q, out.data());
  return out;
}

double kloosterman(uint64_t m, uint64_t n, uint64_t c) {
  if (c == 1) return 1.0;
  auto pe = factorize(c);
  double prod = 1.0;
  for (auto& [p, e] : pe) {
    uint64_t q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    uint64_t cof = c / q;                     // coprime cofactor
    uint64_t cbar = mod_inverse(cof % q, q);  // inverse of cofactor mod q
    uint64_t mm = (m % q) * cbar % q;
    uint64_t nn = (n % q) * cbar % q;
    std::vector<uint64_t> one{nn};
    prod *= kloosterman_batch(mm, one, q)[0];
    if (prod == 0.0) break;
  }
  return prod;
}

double weil_bound(uint64_t m, uint64_t n, uint64_t c) {
  uint64_t g = std::gcd(std::gcd(m, n), c);
  return std::sqrt(static_cast<double>(g)) *
         static_cast<double>(tau_divisors(c)) *
         std::sqrt(static_cast<double>(c));
}

double twisted_sum_enum(uint64_t n, uint64_t c) {
  if (c == 1) return 1.0;
  // sum*_{a} sum*_{x} e((n^2 x + a^2 xbar + 2 n a)/c), real part
  const uint64_t n2 = (n % c) * (n % c) % c;
  const double w = kTwoPi / static_cast<double>(c);
  double s = 0.0;
  for (uint64_t a = 0; a < c; ++a) {
    if (std::gcd(a, c) != 1) continue;
    uint64_t a2 = a * a % c;
    uint64_t na2 = 2 * n % c * a % c;
    for (uint64_t x = 1; x < c; ++x) {
      if (std::gcd(x, c) != 1) continue;
      uint64_t xi = mod_inverse(x, c);
      uint64_t idx = (n2 * x + a2 * xi + na2) % c;
      s += std::cos(w * static_cast<double>(idx));
    }
  }
  return s;
}

double twisted_sum_closed(uint64_t n, uint64_t c) {
  double prod = 1.0;
  for (auto& [p, r] : factorize(c)) {
    double f;
    if (n % p != 0) {
      if (r == 1) {
        f = 1.0;
      } else if (r % 2 == 1) {
        f = 0.0;
      } else {
        uint64_t q = 1;
        for (int i = 0; i < r; ++i) q *= p;
        f = static_cast<double>(euler_phi(q)) *
            std::pow(static_cast<double>(p), r / 2.0);
      }
    } else {
      f = (r == 1) ? -static_cast<double>(p - 1) : 0.0;
    }
    prod *= f;
    if (prod == 0.0) break;
  }
  return prod;
}

double level_factor_rhs(uint64_t N, uint64_t n, uint64_t p, uint64_t l) {
  if (mobius(N) == 0) throw std::invalid_argument("level_factor_rhs: N not squarefree");
  if (std::gcd(l, N) != 1) throw std::invalid_argument("level_factor_rhs: (l,N) != 1");
  double mu = static_cast<double>(mobius(N));
  if (l == 1) return mu;
  uint64_t Nbar = mod_inverse(N % l, l);
  return mu * kloosterman(n % l * (n % l) % l, Nbar * (p % l) % l, l);
}

PrimePhaseSeries hyp4_series(uint64_t a, uint64_t c, uint64_t X,
                             const std::vector<uint32_t>& primes,
                             int grid_per_decade) {
  PrimePhaseSeries out;
  const double ratio = std::pow(10.0, 1.0 / grid_per_decade);
  double next = 10.0;
  double re = 0.0, im = 0.0;
  const double w = kTwoPi * 2.0 / static_cast<double>(c);
  for (uint32_t p : primes) {
    if (p > X) break;
    while (static_cast<double>(p) > next) {
      out.X.push_back(next);
      out.abs_sum.push_back(std::hypot(re, im));
      next *= ratio;
    }
    if (c > 1 && p % c != a % c) continue;
    double ph = w * std::sqrt(static_cast<double>(p));
    re += std::cos(ph);
    im += std::sin(ph);
  }
  out.X.push_back(static_cast<double>(X));
  out.abs_sum.push_back(std::hypot(re, im));
  return out;
}

PowerFit fit_growth_exponent(const PrimePhaseSeries& s, double xmin) {
  PowerFit fit;
  std::vector<double> lx, ly;
  for (size_t i = 0; i < s.X.size(); ++i) {
    if (s.X[i] >= xmin && s.abs_sum[i] > 0.0) {
      lx.push_back(std::log(s.X[i]));
      ly.push_back(std::log(s.abs_sum[i]));
    }
  }
  const int n = static_cast<int>(lx.size());
  fit.npoints = n;
  if (n < 3) return fit;
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) { mx += lx[i]; my += ly[i]; }
  mx /= n; my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.exponent = sxy / sxx;
  double ss = 0;
  for (int i = 0; i < n; ++i) {
    double r = ly[i] - my - fit.exponent * (lx[i] - mx);
    ss += r * r;
  }
  fit.sigma = std::sqrt(ss / (n - 2) / sxx);
  return fit;
}

}  // namespace odl
