// Haar-random matrices from the classical compact groups and empirical
// one-level eigenphase densities for comparison with the W(G) kernels.
#pragma once

#include <cstdint>
#include <vector>

#include "odl/density.hpp"

namespace odl {

enum class MatrixGroup { SOEven, SOOdd, USp };

// Symmetry class targeted by each group's scaled eigenphase density.
SymmetryClass group_symmetry(MatrixGroup g);

struct EnsembleSample {
    MatrixGroup group = MatrixGroup::SOEven;
    int N = 0;          // SO(2N), SO(2N+1), USp(2N)
    int dim = 0;        // matrix dimension
    int count = 0;
    std::uint64_t seed = 0;
    // Nontrivial eigenphases theta in (0, pi) per sample (one representative
    // per conjugate pair; the forced +1 of SO(2N+1) is excluded).
    std::vector<std::vector<double>> phases;
    double max_residual = 0.0;       // worst unitarity/orthogonality defect
    bool forced_one_all = false;     // SO(2N+1): +1 found in every sample
    double mean_entry_sq = 0.0;      // mean |Q_{00}|^2 over samples
    double stderr_entry_sq = 0.0;    // its standard error
};

// Haar sampling via modified Gram-Schmidt of Gaussian raw matrices (real
// for the orthogonal groups, quaternionic for USp), which fixes the unique
// QR representative with positive diagonal.  Deterministic under fixed
// seed and independent of thread count (per-sample derived seeds).
EnsembleSample sample_group(MatrixGroup g, int N, int count, std::uint64_t seed,
                            int threads = 0);

struct EmpiricalDensity {
    std::vector<double> edges;      // bin edges, size bins+1
    std::vector<double> density;    // normalized counts per bin
    std::vector<double> stderr_;    // Poisson standard error per bin
    std::vector<double> predicted;  // mean of W(G) over the bin (smooth part)
};

// Histogram of scaled eigenphases x = theta * dim / (2 pi) on [0, cutoff];
// requires cutoff <= N/4 to stay in the scaling window.
EmpiricalDensity empirical_one_level(const EnsembleSample& sample, double binwidth,
                                     double cutoff);

}  // namespace odl
