// Bessel functions of the first kind, integer order, double precision.
//
// Two regimes:
//  - backward (Miller) recurrence with series normalization when the order
//    is comparable to or exceeds the argument;
//  - Hankel asymptotics for J_0, J_1 plus stable forward recurrence when the
//    argument safely exceeds the largest requested order.
// The Hankel phase is reduced in extended precision so large arguments keep
// near-full relative accuracy against the oscillation envelope.
#pragma once

#include <vector>

namespace odl {

// J_n(x) for n >= 0, x >= 0.
double bessel_j(int n, double x);

// {J_0(x), ..., J_nmax(x)} in a single pass.
std::vector<double> bessel_j_array(int nmax, double x);

// Rigorous small-argument bound |J_n(x)| <= (x/2)^n / n!  (log form to avoid
// overflow; returns log of the bound).
double bessel_j_log_bound(int n, double x);

}  // namespace odl
