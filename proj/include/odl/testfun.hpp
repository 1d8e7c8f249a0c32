// Even Schwartz-class test functions with compactly supported Fourier
// transform: the squared-sinc family
//   phi(x) = (sin(2 pi nu x) / (2 pi nu x))^2,
//   phihat(xi) = (1/(2 nu)) max(0, 1 - |xi|/(2 nu)).
// Convention: phihat(xi) = \int phi(x) e^{-2 pi i x xi} dx.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace odl {

struct TestFunction {
  double nu = 1.0;

  double operator()(double x) const {
    const double t = 2.0 * M_PI * nu * x;
    if (std::fabs(t) < 1e-6) {
      const double t2 = t * t;
      return 1.0 - t2 / 3.0 + 2.0 * t2 * t2 / 45.0;
    }
    const double s = std::sin(t) / t;
    return s * s;
  }

  double hat(double xi) const {
    const double r = 2.0 * nu;
    const double m = 1.0 - std::fabs(xi) / r;
    return (m > 0.0) ? m / r : 0.0;
  }

  double support_radius() const { return 2.0 * nu; }  // supp(phihat) = [-2nu, 2nu]
  double integral() const { return 1.0 / (2.0 * nu); }  // = phihat(0)
  double at_zero() const { return 1.0; }
};

// Parse "sinc2:<nu>", e.g. "sinc2:0.5".
inline TestFunction parse_test_function(const std::string& s) {
  const std::string pfx = "sinc2:";
  if (s.rfind(pfx, 0) != 0)
    throw std::invalid_argument("test function grammar: sinc2:<nu>");
  TestFunction f;
  f.nu = std::stod(s.substr(pfx.size()));
  if (!(f.nu > 0.0)) throw std::invalid_argument("nu must be positive");
  return f;
}

}  // namespace odl
