// Complex log-gamma and digamma.
#pragma once

#include <complex>

namespace odl {

// Principal branch of log Gamma(z), Re z > 0 required for our uses
// (reflection handled for Re z <= 0).
std::complex<double> log_gamma(std::complex<double> z);

// Digamma psi(z) = Gamma'(z)/Gamma(z).
std::complex<double> digamma(std::complex<double> z);

}  // namespace odl
