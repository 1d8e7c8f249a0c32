#include "odl/modforms.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "odl/arith.hpp"

namespace odl {

namespace {

using MatrixZ = std::vector<std::vector<mpz_class>>;

constexpr int kMpfBits = 256;

long double mpf_to_ld(const mpf_class& x) {
    double d1 = x.get_d();
    mpf_class r = x - d1;
    double d2 = r.get_d();
    return (long double)d1 + (long double)d2;
}

}  // namespace

int dim_cusp(int k) {
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("dim_cusp: weight must be even and at least 4");
    if (k == 4 || k == 6 || k == 8 || k == 10 || k == 14) return 0;
    return (k % 12 == 2) ? k / 12 - 1 : k / 12;
}

CuspSpace victor_miller_basis(int k, std::size_t nmax) {
    if (k < 12 || k % 2 != 0)
        throw std::invalid_argument("victor_miller_basis: weight must be even and at least 12");
    int d = dim_cusp(k);
    if (nmax < (std::size_t)d)
        throw std::invalid_argument("victor_miller_basis: nmax below dimension");
    std::size_t prec = nmax + 1;

    QSeries e4 = eisenstein_e4(prec);
    QSeries e6 = eisenstein_e6(prec);
    QSeries delta = discriminant_form(prec);

    CuspSpace sp;
    sp.k = k;
    sp.dim = d;
    sp.nmax = nmax;
    sp.basis.reserve(d);

    QSeries dpow = delta;
    for (int i = 1; i <= d; ++i) {
        int m = k - 12 * i;
        int a, b;
        if (m % 4 == 0) {
            a = m / 4;
            b = 0;
        } else {
            if (m < 6) throw std::logic_error("victor_miller_basis: unreachable weight split");
            a = (m - 6) / 4;
            b = 1;
        }
        QSeries g = qs_mul(dpow, qs_pow(e4, (unsigned)a, prec));
        if (b) g = qs_mul(g, e6);
        sp.basis.push_back(std::move(g));
        if (i < d) dpow = qs_mul(dpow, delta);
    }

    // Echelonize: basis[i-1] starts at q^i with unit leading coefficient.
    for (int i = d; i >= 1; --i)
        for (int j = i + 1; j <= d; ++j) {
            mpz_class c = sp.basis[i - 1][(std::size_t)j];
            if (c == 0) continue;
            mpz_class t;
            for (std::size_t m = 0; m < prec; ++m) {
                t = c * sp.basis[j - 1][m];
                sp.basis[i - 1][m] -= t;
            }
        }
    return sp;
}

MatrixZ hecke_matrix(const CuspSpace& space, std::uint64_t n) {
    int d = space.dim;
    if (space.nmax < (std::size_t)d * n)
        throw std::invalid_argument("hecke_matrix: coefficient precision too small");
    MatrixZ M(d, std::vector<mpz_class>(d));
    mpz_class pw, t;
    for (int i = 1; i <= d; ++i) {
        std::uint64_t g = std::gcd((std::uint64_t)i, n);
        for (std::uint64_t e = 1; e <= g; ++e) {
            if (g % e != 0) continue;
            mpz_ui_pow_ui(pw.get_mpz_t(), e, (unsigned)(space.k - 1));
            std::uint64_t idx = (std::uint64_t)i / e * (n / e);
            for (int j = 1; j <= d; ++j) {
                t = pw * space.basis[j - 1][idx];
                M[i - 1][j - 1] += t;
            }
        }
    }
    return M;
}

namespace {

using MatrixF = std::vector<std::vector<mpf_class>>;

// Solve (A - lambda I) w = v with partial pivoting, in GMP floats.
std::vector<mpf_class> shifted_solve(const MatrixF& A, const mpf_class& lambda,
                                     const std::vector<mpf_class>& v) {
    int d = (int)v.size();
    std::vector<std::vector<mpf_class>> m(d, std::vector<mpf_class>(d + 1, mpf_class(0, kMpfBits)));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m[i][j] = A[i][j];
        m[i][i] -= lambda;
        m[i][d] = v[i];
    }
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (abs(m[r][col]) > abs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        if (m[col][col] == 0) m[col][col] = mpf_class(1e-200, kMpfBits);
        for (int r = col + 1; r < d; ++r) {
            mpf_class f = m[r][col] / m[col][col];
            for (int j = col; j <= d; ++j) m[r][j] -= f * m[col][j];
        }
    }
    std::vector<mpf_class> w(d, mpf_class(0, kMpfBits));
    for (int r = d - 1; r >= 0; --r) {
        mpf_class s = m[r][d];
        for (int j = r + 1; j < d; ++j) s -= m[r][j] * w[j];
        w[r] = s / m[r][r];
    }
    return w;
}

struct RefinedPair {
    mpf_class lambda{0, kMpfBits};  // eigenvalue on the balanced (normalized) scale
    std::vector<mpf_class> w;       // eigenvector in the balanced frame, w[0] = 1
};

// Inverse iteration with Rayleigh-quotient updates starting from a long
// double estimate; residual checked against 1e-20 * ||A||_inf.
RefinedPair refine_eigenpair(const MatrixF& A, long double lam0,
                             const std::vector<long double>& w0) {
    int d = (int)w0.size();
    RefinedPair out;
    out.lambda = mpf_class((double)lam0, kMpfBits);
    out.lambda += (double)(lam0 - (long double)(double)lam0);
    out.w.assign(d, mpf_class(0, kMpfBits));
    for (int i = 0; i < d; ++i) out.w[i] = (double)w0[i];

    if (d == 1) {
        out.lambda = A[0][0];
        out.w[0] = 1;
        return out;
    }
    for (int it = 0; it < 4; ++it) {
        std::vector<mpf_class> w = shifted_solve(A, out.lambda, out.w);
        mpf_class mx(0, kMpfBits);
        for (auto& x : w)
            if (abs(x) > mx) mx = abs(x);
        for (auto& x : w) x /= mx;
        // Rayleigh quotient (w, Aw)/(w, w)
        mpf_class num(0, kMpfBits), den(0, kMpfBits);
        for (int i = 0; i < d; ++i) {
            mpf_class Aw(0, kMpfBits);
            for (int j = 0; j < d; ++j) Aw += A[i][j] * w[j];
            num += w[i] * Aw;
            den += w[i] * w[i];
        }
        out.lambda = num / den;
        out.w = std::move(w);
    }
    // Normalize to w[0] = 1 (first coefficient of the q-expansion).
    mpf_class lead = out.w[0];
    if (lead == 0) throw std::runtime_error("eigenvector with vanishing first coefficient");
    for (auto& x : out.w) x /= lead;

    // Residual check ||Aw - lambda w||_inf <= 1e-20 ||A||_inf ||w||_inf.
    mpf_class anorm(0, kMpfBits), wnorm(0, kMpfBits), res(0, kMpfBits);
    for (int i = 0; i < d; ++i) {
        mpf_class row(0, kMpfBits);
        for (int j = 0; j < d; ++j) row += abs(A[i][j]);
        if (row > anorm) anorm = row;
        if (abs(out.w[i]) > wnorm) wnorm = abs(out.w[i]);
    }
    for (int i = 0; i < d; ++i) {
        mpf_class r(0, kMpfBits);
        for (int j = 0; j < d; ++j) r += A[i][j] * out.w[j];
        r -= out.lambda * out.w[i];
        if (abs(r) > res) res = abs(r);
    }
    if (res > anorm * wnorm * 1e-20)
        throw std::runtime_error("eigenpair refinement failed the residual bound");
    return out;
}

}  // namespace

std::vector<HeckeEigenform> eigenforms(const CuspSpace& space, std::uint64_t pmax) {
    int d = space.dim;
    int k = space.k;
    if (space.nmax < pmax) throw std::invalid_argument("eigenforms: nmax below pmax");
    std::vector<HeckeEigenform> out;
    if (d == 0) return out;

    // Deligne-scale diagonal i^{(k-1)/2}: the echelon-basis Hecke matrix has
    // entry magnitudes spanning many orders, and the eigensolver needs the
    // balanced (conjugated) matrix B = D^{-1} M D / n^{(k-1)/2} to resolve
    // the spectrum; B's eigenvalues are the normalized lambda(n).
    std::vector<mpf_class> diag(d, mpf_class(0, kMpfBits));
    for (int i = 1; i <= d; ++i) {
        mpz_class pz;
        mpz_ui_pow_ui(pz.get_mpz_t(), i, (unsigned)((k - 2) / 2));
        mpf_class sq(0, kMpfBits);
        mpf_sqrt_ui(sq.get_mpf_t(), i);
        diag[i - 1] = mpf_class(pz, kMpfBits) * sq;
    }

    // Find a Hecke operator with separated spectrum.
    const std::uint64_t candidates[] = {2, 3, 5};
    MatrixF B(d, std::vector<mpf_class>(d, mpf_class(0, kMpfBits)));
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> Bld(d, d);
    Eigen::EigenSolver<Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>> solver;
    bool separated = false;
    for (std::uint64_t n : candidates) {
        if (space.nmax < (std::size_t)d * n)
            throw std::invalid_argument("eigenforms: precision too small for Hecke matrices");
        MatrixZ M = hecke_matrix(space, n);
        mpz_class nz;
        mpz_ui_pow_ui(nz.get_mpz_t(), (unsigned long)n, (unsigned)((k - 2) / 2));
        mpf_class nsq(0, kMpfBits);
        mpf_sqrt_ui(nsq.get_mpf_t(), (unsigned long)n);
        mpf_class nscale = mpf_class(nz, kMpfBits) * nsq;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                B[i][j] = mpf_class(M[i][j], kMpfBits) * diag[j] / (diag[i] * nscale);
                Bld(i, j) = mpf_to_ld(B[i][j]);
            }
        solver.compute(Bld, /*computeEigenvectors=*/true);
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            if (fabsl(solver.eigenvalues()[i].imag()) > 1e-9) ok = false;
            for (int j = i + 1; j < d && ok; ++j)
                if (fabsl(solver.eigenvalues()[i].real() - solver.eigenvalues()[j].real()) < 1e-8)
                    ok = false;
        }
        if (ok) {
            separated = true;
            break;
        }
    }
    if (!separated)
        throw std::runtime_error("eigenforms: eigenvalue collision for T2, T3 and T5");

    std::vector<uint32_t> primes = primes_up_to(pmax);
    for (int e = 0; e < d; ++e) {
        std::vector<long double> w0(d);
        for (int i = 0; i < d; ++i) w0[i] = solver.eigenvectors().col(e)[i].real();
        RefinedPair rp = refine_eigenpair(B, solver.eigenvalues()[e].real(), w0);

        HeckeEigenform f;
        f.k = k;
        f.level = 1;
        f.sign = (k % 4 == 0) ? +1 : -1;
        f.pmax = pmax;
        for (uint32_t p : primes) {
            // a(p) = sum_i v_i basis_i[p] with v_i = diag_i w_i (w[0] = 1 so
            // a(1) = 1); then Deligne-normalize by p^{(k-1)/2}.
            mpf_class ap(0, kMpfBits);
            for (int i = 0; i < d; ++i)
                ap += diag[i] * rp.w[i] * mpf_class(space.basis[i][p], kMpfBits);
            mpz_class pz;
            mpz_ui_pow_ui(pz.get_mpz_t(), p, (unsigned)((k - 2) / 2));
            mpf_class sq(0, kMpfBits);
            mpf_sqrt_ui(sq.get_mpf_t(), p);
            f.lambda_p[p] = mpf_to_ld(ap / (mpf_class(pz, kMpfBits) * sq));
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<HeckeEigenform> eigenforms_for_weight(int k, std::uint64_t pmax) {
    int d = dim_cusp(k);
    std::size_t nmax = std::max<std::size_t>(pmax, (std::size_t)d * 5 + 1);
    return eigenforms(victor_miller_basis(k, nmax), pmax);
}

long double HeckeEigenform::lambda(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("lambda: index must be positive");
    long double out = 1.0L;
    for (auto [p, e] : factorize(n)) {
        auto it = lambda_p.find(p);
        if (it == lambda_p.end())
            throw std::out_of_range("lambda: prime exceeds tabulated range");
        long double lp = it->second;
        if (level > 1 && p == level) {
            // At a prime dividing the level the coefficients are purely
            // multiplicative: lambda(p^e) = lambda(p)^e.
            out *= powl(lp, (long double)e);
            continue;
        }
        long double prev = 1.0L, cur = lp;
        for (int j = 1; j < e; ++j) {
            long double nxt = lp * cur - prev;
            prev = cur;
            cur = nxt;
        }
        out *= (e == 0) ? 1.0L : cur;
    }
    return out;
}

long double HeckeEigenform::a_unnormalized(std::uint64_t n) const {
    return lambda(n) * expl(0.5L * (k - 1) * logl((long double)n));
}

SymSqData sym_sq_truncation(const HeckeEigenform& f, std::uint64_t X) {
    if (X < 1) throw std::invalid_argument("sym_sq_truncation: cutoff must be at least 1");
    if (X > f.pmax && X > 1)
        throw std::out_of_range("sym_sq_truncation: cutoff exceeds eigenvalue range");
    long double total = 0.0L;
    for (std::uint64_t m = 1; m * m <= X; ++m) {
        std::uint64_t nmax = X / (m * m);
        long double inner = 0.0L;
        for (std::uint64_t n = 1; n <= nmax; ++n) inner += f.lambda(n * n) / (long double)n;
        total += inner / (long double)(m * m);
    }
    return SymSqData{total, X};
}

HeckeEigenform eta_product_level11(std::uint64_t pmax) {
    if (pmax < 11) pmax = 11;
    QSeries s = eta_square_level11(pmax + 1);
    HeckeEigenform f;
    f.k = 2;
    f.level = 11;
    f.pmax = pmax;
    for (uint32_t p : primes_up_to(pmax)) {
        long double ap = s[p].get_d();
        f.lambda_p[p] = ap / sqrtl((long double)p);
    }
    // sign = -mu(N) lambda(N) sqrt(N) = a_N for N = 11.
    long double eps = -(long double)mobius(11) * f.lambda_p.at(11) * sqrtl(11.0L);
    f.sign = (eps > 0) ? +1 : -1;
    return f;
}

CuspSpace victor_miller_basis_cached(int k, std::size_t nmax, const std::string& cache_dir) {
    std::string path = cache_dir + "/basis_weight_" + std::to_string(k) + ".txt";
    {
        std::ifstream in(path);
        if (in) {
            std::string tag;
            int ver = 0, kk = 0, d = 0;
            std::size_t nm = 0;
            in >> tag >> ver >> kk >> nm >> d;
            if (in && tag == "cuspbasis" && ver == 1 && kk == k && nm >= nmax) {
                CuspSpace sp;
                sp.k = k;
                sp.dim = d;
                sp.nmax = nmax;
                sp.basis.assign(d, QSeries(nmax + 1));
                bool ok = true;
                mpz_class z;
                for (int i = 0; i < d && ok; ++i)
                    for (std::size_t j = 0; j <= nm && ok; ++j) {
                        if (!(in >> z)) ok = false;
                        else if (j <= nmax) sp.basis[i][j] = z;
                    }
                if (ok) return sp;
            }
        }
    }
    CuspSpace sp = victor_miller_basis(k, nmax);
    std::ofstream out(path);
    if (out) {
        out << "cuspbasis 1 " << k << ' ' << nmax << ' ' << sp.dim << '\n';
        for (int i = 0; i < sp.dim; ++i) {
            for (std::size_t j = 0; j <= nmax; ++j) out << sp.basis[i][j] << (j == nmax ? '\n' : ' ');
        }
    }
    return sp;
}

}  // namespace odl
