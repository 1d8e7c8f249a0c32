// Optimal test functions for the one-level density bounds: a Nystrom solver
// for the Fredholm equation (I + K)f0 = 1 with the piecewise-constant
// symmetry kernels, the printed trigonometric solutions, the Rayleigh
// functional, and the nonvanishing-proportion arithmetic built on alpha.
#pragma once

#include <vector>

#include "odl/density.hpp"

namespace odl {

// Minimization domain: even test functions whose transform is supported in
// [-half_support, half_support]; the kernel is m(x - y) with m the Fourier
// companion of the symmetry density (1/2, 1 - 1/2, -1/2 on |xi| <= 1 for
// SOeven / SOodd / Sp, constantly 1/2 for O).
struct FredholmProblem {
    SymmetryClass symmetry = SymmetryClass::SOeven;
    int grid = 256;              // number of panels; nodes = grid + 1
    double half_support = 1.0;   // solve on [-half_support, half_support]
};

struct FredholmSolution {
    std::vector<double> x;    // collocation nodes
    std::vector<double> f0;   // solved minimizer samples
    double A = 0.0;           // <1, f0>
    double alpha = 0.0;       // 1 / A, the extremal density value
    double residual = 0.0;    // sup-norm of the discrete (I + K)f0 - 1
};

// Composite trapezoid Nystrom discretization with the kernel jumps
// |x - y| = 1 landing on grid nodes (required of `grid`; the solver
// rejects misaligned grids).  Throws std::runtime_error if the discrete
// operator is numerically singular, which indicates a bug since the
// smallest eigenvalue of K exceeds -1 for these kernels.
FredholmSolution solve_fredholm(const FredholmProblem& problem);

struct AlphaEstimate {
    double alpha = 0.0;               // Richardson-extrapolated value
    double order = 0.0;               // empirical convergence order
    std::vector<int> grids;           // panel counts used
    std::vector<double> grid_alphas;  // raw alpha per grid
};

// Grid-refinement sweep (64, 128, 256, 512 panels) with Richardson
// extrapolation of the leading quadratic error term.
AlphaEstimate extremal_alpha(SymmetryClass symmetry, double half_support = 1.0);

// Exact extremal constants where a closed form exists: (3 + cot(1/4))/8 for
// SOeven, (5 + cot(1/4))/8 for SOodd, and 1 for O (constant kernel).
// Throws std::invalid_argument for Sp.
double reference_alpha(SymmetryClass symmetry);

// Printed trigonometric minimizer on [0, 1] (even extension solves the
// integral equation on [-1, 1]); defined for SOeven and SOodd only.
double closed_form_f0(SymmetryClass symmetry, double x);

// R(g) = <(I + K)g, g> / <g, 1>^2 for g sampled on the problem's nodes;
// bounded below by alpha, with equality at the minimizer.  Throws
// std::invalid_argument when <g, 1> is numerically zero.
double rayleigh_quotient(const FredholmProblem& problem,
                         const std::vector<double>& g);

struct NonvanishingResult {
    SymmetryClass symmetry = SymmetryClass::SOeven;
    double alpha = 0.0;
    double order_bound = 0.0;  // limsup of the averaged vanishing order
    double proportion = 0.0;   // nonvanishing (SOeven, Sp) or simple-zero
                               // (SOodd) proportion lower bound
};

// Turns a density bound alpha into the order / proportion chain:
// SOeven -> nonvanishing proportion >= 1 - alpha/2; SOodd -> simple-zero
// proportion >= 1 - (alpha - 1)/2; Sp -> nonvanishing >= 1 - alpha/2.
NonvanishingResult nonvanishing_pipeline(SymmetryClass symmetry, double alpha);

// Average vanishing-order bound over the full (parity-mixed) family from
// the two parity bounds: (alpha_even + alpha_odd) / 2.
double combined_order_bound(double alpha_even, double alpha_odd);

}  // namespace odl
