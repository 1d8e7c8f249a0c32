#include "odl/rmt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>

#include "odl/quad.hpp"

namespace odl {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// splitmix64: seed whitening for per-sample generators.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xoshiro-style generator built from splitmix64 stream; explicit and
// platform-independent (no library distribution objects involved).
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() {  // in (0, 1)
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }
    // Box-Muller pair; callers draw one at a time.
    bool have_spare = false;
    double spare = 0.0;
    double gauss() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare = r * std::sin(kTwoPi * u2);
        have_spare = true;
        return r * std::cos(kTwoPi * u2);
    }
};

// Modified Gram-Schmidt with one re-orthogonalization pass; positive
// normalization picks the unique QR representative, so Gaussian input
// yields Haar measure on O(n).
void mgs_real(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.cols());
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i) a.col(j) -= a.col(i).dot(a.col(j)) * a.col(i);
        a.col(j) /= a.col(j).norm();
    }
}

// Quaternion entries q = x + y j stored as two complex matrices (X, Y).
// Multiplication: (a + b j)(c + d j) = (ac - b conj(d)) + (ad + b conj(c)) j.
struct QuatVecOps {
    // <u, v> = sum_i conj(u_i) v_i, quaternion valued: returns (s, t).
    static void dot(const Eigen::VectorXcd& ux, const Eigen::VectorXcd& uy,
                    const Eigen::VectorXcd& vx, const Eigen::VectorXcd& vy,
                    std::complex<double>& s, std::complex<double>& t) {
        // conj(a + b j) = conj(a) - b j
        // (conj(a) - b j)(c + d j) = (conj(a) c + b conj(d)) + (conj(a) d - b conj(c)) j
        s = (ux.conjugate().array() * vx.array()).sum() +
            (uy.array() * vy.conjugate().array()).sum();
        t = (ux.conjugate().array() * vy.array()).sum() -
            (uy.array() * vx.conjugate().array()).sum();
    }
};

EnsembleSample sample_orthogonal(MatrixGroup g, int N, int count, std::uint64_t seed,
                                 int threads) {
    const int n = (g == MatrixGroup::SOOdd) ? 2 * N + 1 : 2 * N;
    EnsembleSample out;
    out.group = g;
    out.N = N;
    out.dim = n;
    out.count = count;
    out.seed = seed;
    out.phases.resize(count);

    std::vector<double> residuals(count, 0.0), entry_sq(count, 0.0);
    std::vector<char> has_one(count, 0);

    const unsigned nthreads =
        threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<int> next{0};
    auto worker = [&]() {
        Eigen::MatrixXd m(n, n);
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= count) return;
            Rng rng(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(idx) + 1));
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) m(i, j) = rng.gauss();
            mgs_real(m);
            // Condition Haar(O(n)) onto SO(n): flip the last column on the
            // det = -1 coset.
            if (m.determinant() < 0.0) m.col(n - 1) *= -1.0;
            residuals[idx] =
                (m.transpose() * m - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
            entry_sq[idx] = m(0, 0) * m(0, 0);

            Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
            std::vector<double> ph;
            ph.reserve(N);
            int one_index = -1;
            double best = 1e9;
            for (int i = 0; i < n; ++i) {
                const std::complex<double> ev = es.eigenvalues()[i];
                const double d = std::abs(ev - 1.0);
                if (d < best) {
                    best = d;
                    one_index = i;
                }
            }
            for (int i = 0; i < n; ++i) {
                const std::complex<double> ev = es.eigenvalues()[i];
                if (g == MatrixGroup::SOOdd && i == one_index) continue;
                if (ev.imag() > 0.0)
                    ph.push_back(std::atan2(ev.imag(), ev.real()));
                else if (ev.imag() == 0.0 && ev.real() < 0.0 && i % 2 == 0)
                    ph.push_back(kPi);  // rare exact -1 pair: one representative
            }
            if (g == MatrixGroup::SOOdd && best < 1e-8) has_one[idx] = 1;
            std::sort(ph.begin(), ph.end());
            out.phases[idx] = std::move(ph);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    out.max_residual = *std::max_element(residuals.begin(), residuals.end());
    out.forced_one_all =
        (g != MatrixGroup::SOOdd) ||
        std::all_of(has_one.begin(), has_one.end(), [](char c) { return c != 0; });
    double mean = 0.0, var = 0.0;
    for (double v : entry_sq) mean += v;
    mean /= count;
    for (double v : entry_sq) var += (v - mean) * (v - mean);
    out.mean_entry_sq = mean;
    out.stderr_entry_sq = std::sqrt(var / std::max(1, count - 1) / count);
    return out;
}

EnsembleSample sample_symplectic(int N, int count, std::uint64_t seed, int threads) {
    EnsembleSample out;
    out.group = MatrixGroup::USp;
    out.N = N;
    out.dim = 2 * N;
    out.count = count;
    out.seed = seed;
    out.phases.resize(count);

    std::vector<double> residuals(count, 0.0), entry_sq(count, 0.0);

    const unsigned nthreads =
        threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<int> next{0};
    auto worker = [&]() {
        Eigen::MatrixXcd X(N, N), Y(N, N);
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= count) return;
            Rng rng(splitmix64(seed ^ 0x5ca1ab1edeadbeefULL) ^
                    splitmix64(static_cast<std::uint64_t>(idx) + 1));
            for (int j = 0; j < N; ++j)
                for (int i = 0; i < N; ++i) {
                    X(i, j) = std::complex<double>(rng.gauss(), rng.gauss());
                    Y(i, j) = std::complex<double>(rng.gauss(), rng.gauss());
                }
            // Quaternionic modified Gram-Schmidt (entries q = x + y j),
            // positive real normalization -> Haar on USp(2N).
            for (int j = 0; j < N; ++j) {
                for (int pass = 0; pass < 2; ++pass)
                    for (int i = 0; i < j; ++i) {
                        std::complex<double> s, t;
                        QuatVecOps::dot(X.col(i), Y.col(i), X.col(j), Y.col(j), s, t);
                        // col_j -= col_i * (s + t j):
                        // (x + y j)(s + t j) = (x s - y conj(t)) + (x t + y conj(s)) j
                        Eigen::VectorXcd nx =
                            X.col(i) * s - Y.col(i) * std::conj(t);
                        Eigen::VectorXcd ny =
                            X.col(i) * t + Y.col(i) * std::conj(s);
                        X.col(j) -= nx;
                        Y.col(j) -= ny;
                    }
                const double nrm =
                    std::sqrt(X.col(j).squaredNorm() + Y.col(j).squaredNorm());
                X.col(j) /= nrm;
                Y.col(j) /= nrm;
            }
            // Complex representation U = [[X, Y], [-conj(Y), conj(X)]].
            Eigen::MatrixXcd u(2 * N, 2 * N);
            u.topLeftCorner(N, N) = X;
            u.topRightCorner(N, N) = Y;
            u.bottomLeftCorner(N, N) = -Y.conjugate();
            u.bottomRightCorner(N, N) = X.conjugate();
            residuals[idx] = (u.adjoint() * u - Eigen::MatrixXcd::Identity(2 * N, 2 * N))
                                 .cwiseAbs()
                                 .maxCoeff();
            entry_sq[idx] = std::norm(u(0, 0));

            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u,
                                                           /*computeEigenvectors=*/false);
            std::vector<double> ph;
            ph.reserve(N);
            for (int i = 0; i < 2 * N; ++i) {
                const std::complex<double> ev = es.eigenvalues()[i];
                if (ev.imag() > 0.0) ph.push_back(std::atan2(ev.imag(), ev.real()));
            }
            std::sort(ph.begin(), ph.end());
            out.phases[idx] = std::move(ph);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    out.max_residual = *std::max_element(residuals.begin(), residuals.end());
    out.forced_one_all = true;
    double mean = 0.0, var = 0.0;
    for (double v : entry_sq) mean += v;
    mean /= count;
    for (double v : entry_sq) var += (v - mean) * (v - mean);
    out.mean_entry_sq = mean;
    out.stderr_entry_sq = std::sqrt(var / std::max(1, count - 1) / count);
    return out;
}

}  // namespace

SymmetryClass group_symmetry(MatrixGroup g) {
    switch (g) {
        case MatrixGroup::SOEven: return SymmetryClass::SOeven;
        case MatrixGroup::SOOdd: return SymmetryClass::SOodd;
        case MatrixGroup::USp: return SymmetryClass::Sp;
    }
    throw std::invalid_argument("unknown matrix group");
}

EnsembleSample sample_group(MatrixGroup g, int N, int count, std::uint64_t seed,
                            int threads) {
    if (N < 2) throw std::invalid_argument("N must be at least 2");
    if (count < 1) throw std::invalid_argument("sample count must be positive");
    if (g == MatrixGroup::USp) return sample_symplectic(N, count, seed, threads);
    return sample_orthogonal(g, N, count, seed, threads);
}

EmpiricalDensity empirical_one_level(const EnsembleSample& sample, double binwidth,
                                     double cutoff) {
    if (!(binwidth > 0.0) || !(cutoff > binwidth))
        throw std::invalid_argument("bad histogram geometry");
    if (cutoff > sample.N / 4.0)
        throw std::invalid_argument("cutoff outside the scaling window");
    const int bins = static_cast<int>(std::round(cutoff / binwidth));
    EmpiricalDensity out;
    out.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) out.edges[i] = i * binwidth;
    std::vector<double> counts(bins, 0.0);
    const double scale = sample.dim / kTwoPi;
    for (const auto& ph : sample.phases)
        for (double theta : ph) {
            const double x = theta * scale;
            if (x >= cutoff) break;  // phases are sorted
            counts[static_cast<int>(x / binwidth)] += 1.0;
        }
    out.density.resize(bins);
    out.stderr_.resize(bins);
    out.predicted.resize(bins);
    const SymmetryClass cls = group_symmetry(sample.group);
    for (int i = 0; i < bins; ++i) {
        out.density[i] = counts[i] / (sample.count * binwidth);
        out.stderr_[i] = std::sqrt(std::max(counts[i], 1.0)) / (sample.count * binwidth);
        out.predicted[i] = integrate([&](double x) { return symmetry_density(cls, x); },
                                     out.edges[i], out.edges[i + 1], 1e-12)
                               .value /
                           binwidth;
    }
    return out;
}

}  // namespace odl
