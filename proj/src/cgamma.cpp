#include "odl/cgamma.hpp"

#include <cmath>

namespace odl {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;

// Lanczos coefficients (g = 607/128, n = 15); gives ~1e-14 relative accuracy.
const double kLanczosG = 607.0 / 128.0;
const double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

std::complex<double> log_gamma_core(std::complex<double> z) {
  // valid for Re z > 0; z shifted internally
  std::complex<double> x = kLanczos[0];
  for (int k = 1; k < 15; ++k) x += kLanczos[k] / (z + static_cast<double>(k - 1));
  std::complex<double> t = z + (kLanczosG - 0.5);
  return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() >= 0.5) return log_gamma_core(z);
  // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
  std::complex<double> lg = std::log(kPi) - std::log(std::sin(kPi * z)) -
                            log_gamma_core(1.0 - z);
  return lg;
}

std::complex<double> digamma(std::complex<double> z) {
  if (z.real() < 0.5) {
    // psi(z) = psi(1-z) - pi cot(pi z)
    return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  }
  std::complex<double> acc{0.0, 0.0};
  while (z.real() < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // asymptotic expansion
  std::complex<double> inv = 1.0 / z, inv2 = inv * inv;
  std::complex<double> s = std::log(z) - 0.5 * inv;
  // Bernoulli B_{2n}/(2n): 1/12, 1/120, 1/252, 1/240, 1/132, 691/32760, 1/12
  const double b[7] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                       1.0 / 132, -691.0 / 32760, 1.0 / 12};
  std::complex<double> p = inv2;
  for (int k = 0; k < 7; ++k) {
    s -= b[k] * p;
    p *= inv2;
  }
  return acc + s;
}

}  // namespace odl
