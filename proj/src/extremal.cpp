#include "odl/extremal.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

namespace odl {

namespace {

// Piecewise-constant kernel profile on [-2, 2]; evaluated only away from
// the jumps at |xi| = 1 (panel midpoints), so the convention there is moot.
double kernel_m(SymmetryClass symmetry, double xi) {
    const bool inner = std::abs(xi) < 1.0;
    switch (symmetry) {
        case SymmetryClass::SOeven: return inner ? 0.5 : 0.0;
        case SymmetryClass::SOodd:  return inner ? 0.5 : 1.0;
        case SymmetryClass::O:      return 0.5;
        case SymmetryClass::Sp:     return inner ? -0.5 : 0.0;
    }
    throw std::invalid_argument("unknown symmetry class");
}

// The discrete operator entry C[i][j] approximating the y-integral against
// the hat weight at node j: the trapezoid rule assembled panel by panel,
// with the kernel read at panel midpoints so its jumps never get sampled.
// C equals a symmetric kernel-value matrix times the trapezoid weights, so
// only the boundary weights break literal symmetry.
Eigen::MatrixXd kernel_matrix(const FredholmProblem& p) {
    const int n = p.grid;
    const double h = p.half_support;
    const double dx = 2.0 * h / n;
    Eigen::MatrixXd c(n + 1, n + 1);
    c.setZero();
    for (int i = 0; i <= n; ++i) {
        const double xi = -h + dx * i;
        for (int panel = 0; panel < n; ++panel) {
            const double ymid = -h + dx * (panel + 0.5);
            const double v = kernel_m(p.symmetry, xi - ymid) * dx * 0.5;
            c(i, panel) += v;
            c(i, panel + 1) += v;
        }
    }
    return c;
}

void validate_problem(const FredholmProblem& p) {
    if (p.grid < 2 || p.grid % 2 != 0)
        throw std::invalid_argument("grid must be a positive even panel count");
    if (!(p.half_support > 0.0) || p.half_support > 1.0 + 1e-12)
        throw std::invalid_argument("half_support must lie in (0, 1]");
    // Jumps of the kernel at |x - y| = 1 occur inside the domain iff the
    // support is wider than 1/2; they must then land on grid nodes or the
    // composite rule degrades to first order.
    if (2.0 * p.half_support > 1.0) {
        const double steps = p.grid / (2.0 * p.half_support);
        if (std::abs(steps - std::round(steps)) > 1e-9)
            throw std::invalid_argument(
                "grid spacing must divide the kernel jump offset 1");
    }
}

std::vector<double> trapezoid_weights(int n, double dx) {
    std::vector<double> w(n + 1, dx);
    w.front() = w.back() = 0.5 * dx;
    return w;
}

}  // namespace

FredholmSolution solve_fredholm(const FredholmProblem& problem) {
    validate_problem(problem);
    const int n = problem.grid;
    const double h = problem.half_support;
    const double dx = 2.0 * h / n;

    Eigen::MatrixXd a = kernel_matrix(problem);
    a += Eigen::MatrixXd::Identity(n + 1, n + 1);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    if (!(lu.rcond() > 1e-12))
        throw std::runtime_error("discretized operator is numerically singular");
    Eigen::VectorXd f = lu.solve(Eigen::VectorXd::Ones(n + 1));

    FredholmSolution sol;
    sol.x.resize(n + 1);
    sol.f0.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        sol.x[i] = -h + dx * i;
        sol.f0[i] = f(i);
    }
    sol.residual = (a * f - Eigen::VectorXd::Ones(n + 1)).lpNorm<Eigen::Infinity>();

    const auto w = trapezoid_weights(n, dx);
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) acc += w[i] * f(i);
    sol.A = acc;
    if (!(sol.A > 0.0))
        throw std::runtime_error("minimizer has nonpositive mean");
    sol.alpha = 1.0 / sol.A;
    return sol;
}

AlphaEstimate extremal_alpha(SymmetryClass symmetry, double half_support) {
    AlphaEstimate est;
    est.grids = {64, 128, 256, 512};
    for (int n : est.grids) {
        FredholmProblem p;
        p.symmetry = symmetry;
        p.grid = n;
        p.half_support = half_support;
        est.grid_alphas.push_back(solve_fredholm(p).alpha);
    }
    const auto& a = est.grid_alphas;
    const double d1 = a[1] - a[0];
    const double d2 = a[2] - a[1];
    est.order = (d2 != 0.0 && d1 / d2 > 0.0) ? std::log2(d1 / d2) : 16.0;
    est.alpha = (4.0 * a[3] - a[2]) / 3.0;
    return est;
}

double reference_alpha(SymmetryClass symmetry) {
    const double cot_quarter = std::cos(0.25) / std::sin(0.25);
    switch (symmetry) {
        case SymmetryClass::SOeven: return (3.0 + cot_quarter) / 8.0;
        case SymmetryClass::SOodd:  return (5.0 + cot_quarter) / 8.0;
        case SymmetryClass::O:      return 1.0;
        default:
            throw std::invalid_argument("no closed-form alpha for this class");
    }
}

double closed_form_f0(SymmetryClass symmetry, double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("closed_form_f0 requires 0 <= x <= 1");
    const double pi = 3.141592653589793238462643383279502884;
    switch (symmetry) {
        case SymmetryClass::SOeven:
            return std::cos(0.5 * x - 0.25 * (pi + 1.0)) /
                   (std::sqrt(2.0) * std::sin(0.25) + std::sin(0.25 * (pi + 1.0)));
        case SymmetryClass::SOodd:
            return std::cos(0.5 * x + 0.25 * (pi - 1.0)) /
                   (3.0 * std::sin(0.25 * (pi + 1.0)) -
                    2.0 * std::sin(0.25 * (pi - 1.0)));
        default:
            throw std::invalid_argument("no closed-form minimizer for this class");
    }
}

double rayleigh_quotient(const FredholmProblem& problem,
                         const std::vector<double>& g) {
    validate_problem(problem);
    const int n = problem.grid;
    if (g.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("g must be sampled on the problem's nodes");
    const double dx = 2.0 * problem.half_support / n;
    const auto w = trapezoid_weights(n, dx);

    Eigen::VectorXd gv(n + 1);
    for (int i = 0; i <= n; ++i) gv(i) = g[i];
    Eigen::VectorXd kg = kernel_matrix(problem) * gv;

    double num = 0.0, lin = 0.0;
    for (int i = 0; i <= n; ++i) {
        num += w[i] * gv(i) * (gv(i) + kg(i));
        lin += w[i] * gv(i);
    }
    if (std::abs(lin) < 1e-12)
        throw std::invalid_argument("g is orthogonal to the linear constraint");
    return num / (lin * lin);
}

NonvanishingResult nonvanishing_pipeline(SymmetryClass symmetry, double alpha) {
    NonvanishingResult r;
    r.symmetry = symmetry;
    r.alpha = alpha;
    r.order_bound = alpha;
    switch (symmetry) {
        case SymmetryClass::SOeven:
        case SymmetryClass::Sp:
            // Vanishing orders come in steps of 2, so the mass of order >= 2
            // forms costs at least 2 each: proportion vanishing < alpha / 2.
            r.proportion = 1.0 - alpha / 2.0;
            break;
        case SymmetryClass::SOodd:
            // Every order is odd and >= 1; orders >= 3 cost 3 each, so their
            // excess over the guaranteed 1 is bounded by (alpha - 1) / 2.
            r.proportion = 1.0 - (alpha - 1.0) / 2.0;
            break;
        default:
            throw std::invalid_argument(
                "no proportion chain for the parity-mixed class");
    }
    return r;
}

double combined_order_bound(double alpha_even, double alpha_odd) {
    return 0.5 * (alpha_even + alpha_odd);
}

}  // namespace odl
