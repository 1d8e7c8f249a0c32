// Smooth compactly supported averaging window h on [1/2, 2] and the
// oscillatory transform
//   V_h(xi) = (2 pi)^{-1/2} \int_0^infty h(sqrt u) u^{-1/2} e^{i xi u} du,
// together with the plane-integral identities used for off-diagonal analysis.
#pragma once

#include <complex>
#include <vector>

namespace odl {

class SmoothWindow {
 public:
  // h(t) = exp(-1/(1-u^2)) with u the affine map [a,b] -> [-1,1]; 0 outside.
  explicit SmoothWindow(double a = 0.5, double b = 2.0);

  double a() const { return a_; }
  double b() const { return b_; }

  double operator()(double t) const;
  double deriv3(double t) const;  // h'''(t), analytic chain rule

  double hhat0() const;  // \int h(t) dt  (Fourier transform at 0)

  // V_h by adaptive quadrature over the compact u-support.
  std::complex<double> vh(double xi) const;

  // Integration-by-parts envelope: a decreasing bound for |V_h(xi)|.
  double vh_envelope(double xi) const;

  // Smallest xi (from a dyadic scan of |V_h|) beyond which |V_h| < tol.
  // The true decay is sub-exponential, far faster than the polynomial
  // envelope, so integration cutoffs use this.
  double vh_cutoff(double tol) const;

 private:
  double a_, b_;
  mutable double hhat0_ = -1.0;
  mutable std::vector<double> ibp_const_;  // |V_h| <= ibp_const_[j]/xi^j
  mutable std::vector<std::pair<double, double>> cutoff_memo_;
};

// Uniform-grid cache of V_h on [0, ximax] with cubic interpolation; falls
// back to direct quadrature outside the grid.
class VhCache {
 public:
  // npoints = 0 picks a grid spacing meeting a 1e-9 interpolation budget.
  explicit VhCache(const SmoothWindow& h, double ximax, int npoints = 0);
  std::complex<double> operator()(double xi) const;

 private:
  const SmoothWindow& h_;
  double ximax_, dx_;
  std::vector<std::complex<double>> grid_;
};

// Both routes of the identity
//   \int V_h(beta x^2) e(xs) dx
//     = (1+i)/(2 sqrt(beta)) \int_0^infty h(sqrt u) e^{-i pi^2 s^2/(beta u)} du/u.
struct PlaneIntegral {
  std::complex<double> direct;      // left-hand side by quadrature in x
  std::complex<double> closed;      // right-hand side over the h-support
  std::complex<double> b_route;     // beta^{-1/2} B(s/sqrt(beta))
};
PlaneIntegral vh_plane_integral(const SmoothWindow& h, double beta, double s);

// B(v) = \int V_h(y^2) e(yv) dy.
std::complex<double> vh_b_function(const SmoothWindow& h, double v);

}  // namespace odl
