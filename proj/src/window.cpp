#include "odl/window.hpp"

#include <cmath>
#include <stdexcept>

#include "odl/quad.hpp"

namespace odl {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

SmoothWindow::SmoothWindow(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0 && b > a)) throw std::invalid_argument("SmoothWindow: need 0 < a < b");
}

double SmoothWindow::operator()(double t) const {
  const double u = (2.0 * t - (a_ + b_)) / (b_ - a_);
  if (std::fabs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double SmoothWindow::deriv3(double t) const {
  const double du = 2.0 / (b_ - a_);
  const double u = (2.0 * t - (a_ + b_)) / (b_ - a_);
  if (std::fabs(u) >= 1.0) return 0.0;
  const double w = 1.0 / (1.0 - u * u);
  const double g1 = -2.0 * u * w * w;
  const double g2 = -2.0 * w * w - 8.0 * u * u * w * w * w;
  const double g3 = -24.0 * u * w * w * w - 48.0 * u * u * u * w * w * w * w;
  const double h = std::exp(-w);
  return du * du * du * (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) * h;
}

double SmoothWindow::hhat0() const {
  if (hhat0_ < 0.0) {
    auto f = [this](double t) { return (*this)(t); };
    hhat0_ = integrate(f, a_, b_, 1e-14).value;
  }
  return hhat0_;
}

std::complex<double> SmoothWindow::vh(double xi) const {
  // integrand g(u) = h(sqrt u)/sqrt(u) on [a^2, b^2]
  const double lo = a_ * a_, hi = b_ * b_;
  auto f = [this, xi](double u) -> std::complex<double> {
    double hv = (*this)(std::sqrt(u));
    if (hv == 0.0) return {0.0, 0.0};
    double g = hv / std::sqrt(u);
    return std::complex<double>(g * std::cos(xi * u), g * std::sin(xi * u));
  };
  // resolve the oscillation: tolerance scales panels automatically, but the
  // max depth must allow ~|xi| periods over the support.
  double tol = 1e-13;
  auto r = integrate_c(f, lo, hi, tol, 60);
  return r.value / std::sqrt(kTwoPi);
}

double SmoothWindow::vh_envelope(double xi) const {
  if (ibp_const_.empty()) {
    // C_j = (2 pi)^{-1/2} \int |d^j/du^j (h(sqrt u)/ sqrt u)| du by central
    // finite differences (the integrand is smooth and compactly supported).
    const double lo = a_ * a_, hi = b_ * b_;
    auto g = [this](double u) {
      if (u <= 0.0) return 0.0;
      double hv = (*this)(std::sqrt(u));
      return (hv == 0.0) ? 0.0 : hv / std::sqrt(u);
    };
    const double step = 1e-3;
    for (int j = 0; j <= 4; ++j) {
      auto dj = [&](double u) {
        switch (j) {
          case 0: return std::fabs(g(u));
          case 1: return std::fabs((g(u + step) - g(u - step)) / (2 * step));
          case 2: return std::fabs((g(u + step) - 2 * g(u) + g(u - step)) /
                                   (step * step));
          case 3: return std::fabs((g(u + 2 * step) - 2 * g(u + step) +
                                    2 * g(u - step) - g(u - 2 * step)) /
                                   (2 * step * step * step));
          default: return std::fabs((g(u + 2 * step) - 4 * g(u + step) + 6 * g(u) -
                                     4 * g(u - step) + g(u - 2 * step)) /
                                    (step * step * step * step));
        }
      };
      // Fixed Simpson rule: the finite-difference integrand carries
      // cancellation noise that defeats adaptive error estimates, and a
      // modest-accuracy value suffices for an envelope constant.
      const int ns = 16384;
      double hstep = (hi - lo) / ns, acc = 0.0;
      for (int i = 0; i <= ns; ++i) {
        double w = (i == 0 || i == ns) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * dj(lo + i * hstep);
      }
      ibp_const_.push_back(1.05 * acc * hstep / 3.0 / std::sqrt(kTwoPi));
    }
  }
  double best = ibp_const_[0];
  if (xi > 1.0) {
    double p = 1.0;
    for (int j = 1; j <= 4; ++j) {
      p *= xi;
      best = std::min(best, ibp_const_[j] / p);
    }
  }
  return best;
}

double SmoothWindow::vh_cutoff(double tol) const {
  for (auto& [t, c] : cutoff_memo_)
    if (t == tol) return c;
  double xi = 8.0;
  while (xi < 1e6) {
    // |V_h| oscillates; require several consecutive scan points below tol
    bool small = true;
    for (double t : {1.0, 1.17, 1.37, 1.61}) {
      if (std::abs(vh(xi * t)) >= tol) { small = false; break; }
    }
    if (small) break;
    xi *= 1.5;
  }
  xi *= 1.61;
  cutoff_memo_.emplace_back(tol, xi);
  return xi;
}

VhCache::VhCache(const SmoothWindow& h, double ximax, int npoints)
    : h_(h), ximax_(ximax) {
  if (npoints == 0) npoints = (int)std::ceil(ximax / 0.004) + 1;  // ~3e-10 cubic error
  if (npoints < 4) npoints = 4;
  dx_ = ximax / (npoints - 1);
  grid_.resize(npoints);
  for (int i = 0; i < npoints; ++i) grid_[i] = h_.vh(i * dx_);
}

std::complex<double> VhCache::operator()(double xi) const {
  double axi = std::fabs(xi);
  if (axi > ximax_) return h_.vh(xi);
  double t = axi / dx_;
  int i = static_cast<int>(t);
  if (i < 1) i = 1;
  if (i > static_cast<int>(grid_.size()) - 3) i = static_cast<int>(grid_.size()) - 3;
  double x = t - i;
  // Catmull-Rom cubic through grid_[i-1..i+2]
  auto p0 = grid_[i - 1], p1 = grid_[i], p2 = grid_[i + 1], p3 = grid_[i + 2];
  std::complex<double> v =
      p1 + 0.5 * x * (p2 - p0 +
                      x * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                           x * (3.0 * (p1 - p2) + p3 - p0)));
  if (xi < 0.0) return std::conj(v);
  return v;
}

std::complex<double> vh_b_function(const SmoothWindow& h, double v) {
  // B(v) = \int V_h(y^2) e(yv) dy; V_h(y^2) decays sub-exponentially in y^2.
  double ymax = std::sqrt(h.vh_cutoff(1e-13));
  auto f = [&](double y) -> std::complex<double> {
    std::complex<double> vv = h.vh(y * y);
    double ph = kTwoPi * y * v;
    return vv * std::complex<double>(std::cos(ph), std::sin(ph));
  };
  auto r = integrate_c(f, -ymax, ymax, 1e-11, 56);
  return r.value;
}

PlaneIntegral vh_plane_integral(const SmoothWindow& h, double beta, double s) {
  if (!(beta > 0.0)) throw std::invalid_argument("vh_plane_integral: beta > 0");
  PlaneIntegral out;

  double xmax = std::sqrt(h.vh_cutoff(1e-13) / beta);
  auto f = [&](double x) -> std::complex<double> {
    std::complex<double> vv = h.vh(beta * x * x);
    double ph = kTwoPi * x * s;
    return vv * std::complex<double>(std::cos(ph), std::sin(ph));
  };
  out.direct = integrate_c(f, -xmax, xmax, 1e-11, 56).value;

  const double lo = h.a() * h.a(), hi = h.b() * h.b();
  auto g = [&](double u) -> std::complex<double> {
    double hv = h(std::sqrt(u));
    if (hv == 0.0) return {0.0, 0.0};
    double ph = -kPi * kPi * s * s / (beta * u);
    return hv / u * std::complex<double>(std::cos(ph), std::sin(ph));
  };
  out.closed = std::complex<double>(1.0, 1.0) / (2.0 * std::sqrt(beta)) *
               integrate_c(g, lo, hi, 1e-13).value;

  out.b_route = vh_b_function(h, s / std::sqrt(beta)) / std::sqrt(beta);
  return out;
}

}  // namespace odl
