#pragma once
// Spaces of holomorphic cusp forms for the full modular group: dimension,
// echelonized integral basis, Hecke operators, numerically extracted
// eigenforms with Deligne-normalized eigenvalues, symmetric-square Dirichlet
// truncations, and the weight-2 level-11 eta-product newform.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "odl/qseries.hpp"

namespace odl {

// Dimension of the space of cusp forms of even weight k >= 4 for the full
// modular group.  Rejects odd k and k = 2.
int dim_cusp(int k);

// Echelonized basis: basis[i] (i = 0..d-1) has q-expansion starting q^{i+1}
// and coefficient delta_{i+1,j} at q^j for j <= d.
struct CuspSpace {
    int k = 0;
    int dim = 0;
    std::size_t nmax = 0;           // coefficients known for q^0..q^{nmax}
    std::vector<QSeries> basis;     // each of precision nmax+1
};

CuspSpace victor_miller_basis(int k, std::size_t nmax);

// Matrix of the n-th Hecke operator in the echelon basis (classical
// unnormalized action), exact integers.  Requires nmax >= n*dim.
// Entry (i,j): coefficient of basis[i] in T_n basis[j].
std::vector<std::vector<mpz_class>> hecke_matrix(const CuspSpace& space, std::uint64_t n);

class HeckeEigenform {
  public:
    int k = 0;
    std::uint64_t level = 1;
    int sign = 0;                    // functional-equation sign
    std::uint64_t pmax = 0;          // lambda(p) tabulated for primes p <= pmax

    // Deligne-normalized eigenvalue lambda(n) = a(n)/n^{(k-1)/2}, computed
    // from tabulated prime data by multiplicativity and the p-power
    // recurrence.  n must have all prime factors <= pmax.
    long double lambda(std::uint64_t n) const;

    // Unnormalized a(n) as long double (for trace cross-checks), n <= pmax.
    long double a_unnormalized(std::uint64_t n) const;

    std::map<std::uint64_t, long double> lambda_p;   // prime -> lambda(p)
};

// Diagonalizes T_2 (falling back to T_3, then T_5, on eigenvalue collision)
// and propagates eigenvectors through the q-expansions.  pmax is the largest
// prime for which lambda(p) is wanted; the space must satisfy
// space.nmax >= pmax.  Throws std::runtime_error on collisions for all three
// operators or on insufficient precision.
std::vector<HeckeEigenform> eigenforms(const CuspSpace& space, std::uint64_t pmax);

// Convenience: build the space and extract eigenforms in one step.
std::vector<HeckeEigenform> eigenforms_for_weight(int k, std::uint64_t pmax);

struct SymSqData {
    long double value = 0;   // sum_{m^2 n <= X} lambda(n^2) / (m^2 n)
    std::uint64_t cutoff = 0;
};

// Plain Dirichlet truncation of the harmonic-weight series
// sum_{m^2 n <= X} lambda(n^2)/(m^2 n); requires f.pmax >= X.
SymSqData sym_sq_truncation(const HeckeEigenform& f, std::uint64_t X);

// The weight-2 level-11 newform q prod (1-q^n)^2 (1-q^{11n})^2 with
// lambda(n) = a(n)/sqrt(n); sign from -mu(N) lambda(N) sqrt(N).
HeckeEigenform eta_product_level11(std::uint64_t pmax);

// Persistent cache: one file per weight holding a versioned header
// {format version, k, nmax} and the exact integer coefficient rows of the
// echelon basis in decimal text.  Reads the file when it covers the request,
// recomputes and rewrites it otherwise.
CuspSpace victor_miller_basis_cached(int k, std::size_t nmax, const std::string& cache_dir);

}  // namespace odl
