// Adaptive Gauss-Kronrod (G7,K15) quadrature for real and complex integrands.
#pragma once

#include <complex>
#include <functional>

namespace odl {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // accumulated error estimate
  int evaluations = 0;
};

// Integrate f over [a,b] to absolute tolerance tol (adaptive bisection).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-12, int max_depth = 50);

struct QuadResultC {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  int evaluations = 0;
};

QuadResultC integrate_c(const std::function<std::complex<double>(double)>& f,
                        double a, double b, double tol = 1e-12,
                        int max_depth = 50);

}  // namespace odl
