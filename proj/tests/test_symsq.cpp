#include <cmath>

#include "doctest.h"
#include "odl/arith.hpp"
#include "odl/bessel.hpp"
#include "odl/modforms.hpp"
#include "odl/symsq.hpp"

using namespace odl;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Harmonic-average identity at m = n = 1: the all-forms spectral sum equals
// the delta term plus the Kloosterman/Bessel tail.  Gives an independent
// handle on the L-values through separately tested components.
double geometric_side(int k, uint64_t cmax) {
  double s = 0.0;
  for (uint64_t c = 1; c <= cmax; ++c)
    s += kloosterman_enum(1, 1, c) / (double)c * bessel_j(k - 1, 4.0 * kPi / c);
  double ik = (k % 4 == 0) ? 1.0 : -1.0;
  return 1.0 + 2.0 * kPi * ik * s;
}
}  // namespace

TEST_CASE("symmetric square L-value against a frozen high-precision reference") {
  // independent evaluation: mpmath, 30 digits, damped-contour route with its
  // own series arithmetic
  const double reference = 0.63179294572788527874197732253;
  auto forms = eigenforms_for_weight(12, sym_sq_L1_cutoff(12, 1));
  double v = sym_sq_L1(forms[0]);
  CHECK(v == doctest::Approx(reference).epsilon(1e-11));
}

TEST_CASE("symmetric square L-values close the harmonic-average identity") {
  for (int k : {12, 16, 20, 24, 28}) {
    auto forms = eigenforms_for_weight(k, sym_sq_L1_cutoff(k, 1));
    double spectral = 0.0;
    for (auto& f : forms) spectral += 1.0 / sym_sq_L1(f);
    spectral *= 2.0 * kPi * kPi / (k - 1);
    double geometric = geometric_side(k, 400);
    CHECK(spectral == doctest::Approx(geometric).epsilon(1e-9));
  }
}

TEST_CASE("plain truncation stabilizes near the functional-equation value") {
  auto forms = eigenforms_for_weight(12, 16000);
  double v = sym_sq_L1(forms[0]);
  double t = (double)sym_sq_truncation(forms[0], 16000).value;
  CHECK(std::fabs(t - v) < 0.02);
}

TEST_CASE("harmonic series value for the level-11 form") {
  auto f = eta_product_level11(std::max<uint64_t>(sym_sq_L1_cutoff(2, 11), 4000));
  double d1 = harmonic_series_value(f);
  CHECK(d1 > 0.0);

  // partial sums of sum_n lambda(n^2)/n drift around the limit within a
  // square-root envelope
  long double partial = 0.0L;
  for (uint64_t n = 1; n <= 4000; ++n) partial += f.lambda(n * n) / (long double)n;
  CHECK(std::fabs((double)partial - d1) < 0.1);
}

TEST_CASE("cutoff sizing and precondition checks") {
  CHECK(sym_sq_L1_cutoff(12, 1) >= 64);
  CHECK(sym_sq_L1_cutoff(40, 1) > sym_sq_L1_cutoff(12, 1));
  CHECK(sym_sq_L1_cutoff(2, 11) > sym_sq_L1_cutoff(2, 1));
  auto forms = eigenforms_for_weight(12, 20);
  CHECK_THROWS(sym_sq_L1(forms[0]));
}
