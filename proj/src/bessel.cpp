#include "odl/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace odl {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// J_0(x), J_1(x) for x >= 40 by Hankel asymptotic series with the phase
// x - (nu/2 + 1/4) pi reduced modulo 2 pi in long double.
void j01_asymptotic(double x, double* j0, double* j1) {
  const double inv8x = 1.0 / (8.0 * x);
  for (int nu = 0; nu <= 1; ++nu) {
    const double mu = 4.0 * nu * nu;
    // t_j = prod_{i<=j} (mu - (2i-1)^2) / (j! (8x)^j);
    // P = t_0 - t_2 + t_4 - ..., Q = t_1 - t_3 + t_5 - ...
    double P = 1.0, Q = 0.0;
    double t = 1.0, prev = 1e300;
    for (int j = 0; j < 60; ++j) {
      double num = mu - (2.0 * j + 1.0) * (2.0 * j + 1.0);
      t *= num * inv8x / (j + 1.0);   // now t = t_{j+1}
      double a = std::fabs(t);
      if (a >= prev || a < 1e-19) break;
      prev = a;
      int idx = j + 1;
      double signed_t = ((idx / 2) % 2 == 0) ? t : -t;
      if (idx % 2 == 1) Q += signed_t; else P += signed_t;
    }
    long double chi = std::fmod(static_cast<long double>(x), kTwoPiL) -
                      (0.5L * nu + 0.25L) * 3.141592653589793238462643383279503L;
    double c = static_cast<double>(std::cos(chi));
    double s = static_cast<double>(std::sin(chi));
    double amp = std::sqrt(2.0 / (3.141592653589793 * x));
    double val = amp * (P * c - Q * s);
    if (nu == 0) *j0 = val; else *j1 = val;
  }
}

std::vector<double> forward_from_j01(int nmax, double x) {
  std::vector<double> out(nmax + 1);
  double j0, j1;
  j01_asymptotic(x, &j0, &j1);
  out[0] = j0;
  if (nmax >= 1) out[1] = j1;
  for (int n = 1; n < nmax; ++n)
    out[n + 1] = (2.0 * n / x) * out[n] - out[n - 1];
  return out;
}

std::vector<double> miller_backward(int nmax, double x) {
  // start order: comfortably past the Airy turning region
  double m = std::max(static_cast<double>(nmax), x);
  int n0 = static_cast<int>(m + 14.0 * std::cbrt(m + 1.0) + 24.0);
  if (n0 % 2 == 1) ++n0;  // even start keeps the normalization sum aligned

  const double renorm = 1e-280, big = 1e280;
  std::vector<double> raw(n0 + 1, 0.0);
  std::vector<int> cnt(n0 + 1, 0);
  double jp = 0.0;        // J~_{n+1}
  double jc = 1e-300;     // J~_{n}
  int c = 0;
  raw[n0] = jc;
  cnt[n0] = 0;
  for (int n = n0; n >= 1; --n) {
    double jm = (2.0 * n / x) * jc - jp;
    jp = jc;
    jc = jm;
    if (std::fabs(jc) > big) {
      jc *= renorm;
      jp *= renorm;
      ++c;
    }
    raw[n - 1] = jc;
    cnt[n - 1] = c;
  }
  // normalization: J_0 + 2 sum_{k>=1} J_{2k} = 1
  const int cmax = c;
  long double s = 0.0L;
  for (int n = 0; n <= n0; n += 2) {
    int d = cmax - cnt[n];
    if (d > 1) continue;  // factor <= 1e-280: negligible
    long double v = raw[n];
    if (d == 1) v *= static_cast<long double>(renorm);
    s += (n == 0) ? v : 2.0L * v;
  }
  std::vector<double> out(nmax + 1, 0.0);
  for (int n = 0; n <= nmax && n <= n0; ++n) {
    int d = cmax - cnt[n];
    if (d > 1) { out[n] = 0.0; continue; }
    long double v = raw[n];
    if (d == 1) v *= static_cast<long double>(renorm);
    out[n] = static_cast<double>(v / s);
  }
  return out;
}

}  // namespace

std::vector<double> bessel_j_array(int nmax, double x) {
  if (nmax < 0 || x < 0.0 || !std::isfinite(x))
    throw std::invalid_argument("bessel_j_array: need nmax >= 0, x >= 0");
  if (x == 0.0) {
    std::vector<double> out(nmax + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  const double guard = 12.0 * std::cbrt(x) + 20.0;
  if (x >= 40.0 && static_cast<double>(nmax) <= x - guard)
    return forward_from_j01(nmax, x);
  return miller_backward(nmax, x);
}

double bessel_j(int n, double x) {
  if (n < 0) {
    double v = bessel_j(-n, x);
    return ((-n) % 2 == 0) ? v : -v;
  }
  return bessel_j_array(n, x)[n];
}

double bessel_j_log_bound(int n, double x) {
  return n * std::log(x / 2.0) - std::lgamma(n + 1.0);
}

}  // namespace odl
