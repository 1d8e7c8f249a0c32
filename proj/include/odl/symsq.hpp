#pragma once
// Symmetric-square L-values at s = 1 through a smoothed (Gaussian-damped)
// approximate functional equation, accurate to ~1e-10 with coefficient
// support only a small multiple of the analytic conductor scale.

#include <cstdint>

#include "odl/modforms.hpp"

namespace odl {

// L(1, sym^2 f) for a Hecke eigenform of even weight k >= 12 (level 1) or
// the prime-level weight-2 fixture (conductor level^2).  Requires f.pmax to
// cover the coefficient range the conductor demands (throws otherwise).
double sym_sq_L1(const HeckeEigenform& f);

// Coefficient cutoff the evaluator will use for a given weight/level, so
// callers can build eigenforms with a sufficient prime table.
std::uint64_t sym_sq_L1_cutoff(int k, std::uint64_t level);

// Harmonic-weight series D(1) = sum_n lambda(n^2)/n evaluated through the
// functional equation: D(1) = L(1, sym^2) / zeta^(level)(2), where the zeta
// factor omits primes dividing the level.
double harmonic_series_value(const HeckeEigenform& f);

}  // namespace odl
