#include "odl/petersson.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "odl/arith.hpp"
#include "odl/bessel.hpp"
#include "odl/modforms.hpp"
#include "odl/symsq.hpp"

namespace odl {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Compensated (Kahan) accumulator; the c-sums mix magnitudes badly enough
// that plain accumulation loses digits near the 1e-10 tail targets.
struct Kahan {
    double s = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// Rigorous bound on sum_{c > C} 2 pi |S(m,n;c)|/c |J_{k-1}(4 pi sqrt(mn)/c)|
// from |S(m,n;c)| <= (m,n,c)^{1/2} tau(c) c^{1/2}, tau(c) < 2 sqrt(c) and
// |J_{k-1}(x)| <= (x/2)^{k-1}/(k-1)!  (valid termwise here since the
// Bessel argument is below the alternating-series threshold for c > C):
//   <= 4 pi sqrt(gcd(m,n)) (2 pi sqrt(mn))^{k-1} / (k-1)!
//        * C^{-(k-2)} / (k-2).
double geometric_tail_bound(int k, std::uint64_t m, std::uint64_t n,
                            std::uint64_t C) {
    double g = static_cast<double>(std::gcd(m, n));
    double logmn = 0.5 * (std::log(static_cast<double>(m)) +
                          std::log(static_cast<double>(n)));
    double logt = std::log(4.0 * kPi) + 0.5 * std::log(g) +
                  (k - 1) * (std::log(2.0 * kPi) + logmn) - std::lgamma(k) -
                  (k - 2) * std::log(static_cast<double>(C)) -
                  std::log(static_cast<double>(k - 2));
    return std::exp(logt);
}

// sum_{c <= cmax} S(m,n;c)/c * J_{k-1}(4 pi sqrt(mn)/c), compensated.
double kloosterman_bessel_sum(int k, std::uint64_t m, std::uint64_t n,
                              std::uint64_t cmax) {
    double x0 = 4.0 * kPi * std::sqrt(static_cast<double>(m) *
                                      static_cast<double>(n));
    Kahan acc;
    for (std::uint64_t c = 1; c <= cmax; ++c) {
        double s = kloosterman(m, n, c);
        if (s == 0.0) continue;
        acc.add(s / static_cast<double>(c) * bessel_j(k - 1, x0 / c));
    }
    return acc.s;
}

// Eigenforms of full level together with the smoothed L(1, sym^2) values,
// cached per weight (the Hecke diagonalization dominates the cost).
struct WeightData {
    std::vector<HeckeEigenform> forms;
    std::vector<double> l1;
    std::uint64_t pmax = 0;
};

const WeightData& weight_data(int k, std::uint64_t pmax_needed) {
    static std::map<int, WeightData> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    WeightData& wd = cache[k];
    if (wd.pmax < pmax_needed || wd.forms.empty()) {
        wd.forms = eigenforms_for_weight(k, pmax_needed);
        wd.pmax = pmax_needed;
        wd.l1.clear();
        for (const auto& f : wd.forms) wd.l1.push_back(sym_sq_L1(f));
    }
    return wd;
}

// Root-mean-square model of the dropped level-N kernel tail: terms
// 2 pi S(m,n;c)/c J_1(4 pi sqrt(mn)/c) with |S| modelled as sqrt(c) and
// J_1(x) ~ x/2, summed in quadrature over c > cmax, c = 0 (mod N).
double kernel_tail_rms(std::uint64_t N, std::uint64_t m, std::uint64_t n,
                       std::uint64_t cmax) {
    double mn = static_cast<double>(m) * static_cast<double>(n);
    return 4.0 * kPi * kPi * std::sqrt(mn) /
           (static_cast<double>(cmax) * std::sqrt(2.0 * static_cast<double>(N)));
}

}  // namespace

PeterssonReport petersson_level1(int k, std::uint64_t m, std::uint64_t n,
                                 std::uint64_t cmax) {
    if (k < 12 || k % 2 != 0) throw std::invalid_argument("weight must be even, >= 12");
    if (m == 0 || n == 0) throw std::invalid_argument("indices must be positive");

    double x0 = 4.0 * kPi * std::sqrt(static_cast<double>(m) *
                                      static_cast<double>(n));
    // Smallest truncation keeping the per-term Bessel bound monotone.
    std::uint64_t cmin = static_cast<std::uint64_t>(std::ceil(x0 / 2.0)) + 2;
    if (cmax == 0) {
        cmax = std::max<std::uint64_t>(cmin, 16);
        while (geometric_tail_bound(k, m, n, cmax) >= 1e-10) cmax *= 2;
    } else if (cmax < cmin || geometric_tail_bound(k, m, n, cmax) > 1e-6) {
        throw std::invalid_argument("geometric truncation too small");
    }

    PeterssonReport rep;
    rep.k = k;
    rep.m = m;
    rep.n = n;
    rep.cmax = cmax;
    rep.tail_bound = geometric_tail_bound(k, m, n, cmax);

    double sign = (k % 4 == 0) ? 1.0 : -1.0;  // i^k for even k
    rep.rhs = (m == n ? 1.0 : 0.0) +
              2.0 * kPi * sign * kloosterman_bessel_sum(k, m, n, cmax);

    std::uint64_t pmax = std::max({sym_sq_L1_cutoff(k, 1), m, n});
    const WeightData& wd = weight_data(k, pmax);
    Kahan lhs;
    for (std::size_t i = 0; i < wd.forms.size(); ++i) {
        double lm = static_cast<double>(wd.forms[i].lambda(m));
        double ln = static_cast<double>(wd.forms[i].lambda(n));
        lhs.add(lm * ln / wd.l1[i]);
    }
    rep.lhs = 2.0 * kPi * kPi / (k - 1) * lhs.s;
    rep.residual = std::abs(rep.lhs - rep.rhs);
    return rep;
}

KernelValue petersson_kernel_levelN(std::uint64_t N, std::uint64_t m,
                                    std::uint64_t n, std::uint64_t cmax) {
    if (N < 2 || cmax < N || cmax % N != 0)
        throw std::invalid_argument("cmax must be a positive multiple of N");
    double x0 = 4.0 * kPi * std::sqrt(static_cast<double>(m) *
                                      static_cast<double>(n));
    Kahan acc;
    for (std::uint64_t c = N; c <= cmax; c += N) {
        double s = kloosterman(m, n, c);
        if (s == 0.0) continue;
        acc.add(s / static_cast<double>(c) * bessel_j(1, x0 / c));
    }
    KernelValue kv;
    kv.cmax = cmax;
    kv.value = (m == n ? 1.0 : 0.0) - 2.0 * kPi * acc.s;
    kv.tail_rms = kernel_tail_rms(N, m, n, cmax);
    return kv;
}

double average_AK(const SmoothWindow& h, double K, int parity,
                  const std::vector<PairPayload>& payload) {
    if (K <= 4.0) throw std::invalid_argument("window size too small");
    // Even weights whose rescaled index lands in the support of h.
    int klo = static_cast<int>(std::floor(h.a() * K + 1));
    int khi = static_cast<int>(std::ceil(h.b() * K + 1));
    if (klo < 12) klo = 12;  // h vanishes there anyway for K >= 24
    if (klo % 2) ++klo;

    // Sign classes are accumulated separately so the parity decomposition
    // A = A^+ + A^- holds bit-for-bit against separate parity runs.
    Kahan plus, minus;
    for (const PairPayload& term : payload) {
        if (term.coeff == 0.0) continue;
        double x0 = 4.0 * kPi * std::sqrt(static_cast<double>(term.m) *
                                          static_cast<double>(term.n));
        // One truncation for the whole k-window, certified at the smallest
        // weight (the bound only improves as k grows).
        std::uint64_t cmax =
            std::max<std::uint64_t>(static_cast<std::uint64_t>(std::ceil(x0 / 2.0)) + 2, 16);
        while (geometric_tail_bound(klo, term.m, term.n, cmax) >= 1e-12) cmax *= 2;
        // For c beyond x0/rho every order in the window satisfies
        // J_l(x) <= (e x / 2 l)^l <= 10^{-22}, so those moduli are dropped.
        {
            double l = klo - 1;
            double rho = (2.0 * l / M_E) * std::pow(10.0, -22.0 / l);
            double ccap = std::floor(x0 / rho);
            if (ccap < static_cast<double>(cmax))
                cmax = ccap < 1.0 ? 0 : static_cast<std::uint64_t>(ccap);
        }
        double delta = (term.m == term.n) ? 1.0 : 0.0;
        if (cmax == 0) {
            for (int k = klo; k <= khi; k += 2) {
                if (parity == +1 && k % 4 != 0) continue;
                if (parity == -1 && k % 4 != 2) continue;
                double contrib = term.coeff * h((k - 1) / K) * delta;
                if (k % 4 == 0)
                    plus.add(contrib);
                else
                    minus.add(contrib);
            }
            continue;
        }

        // Kloosterman values and Bessel arrays are shared across weights.
        std::vector<double> kval(cmax + 1, 0.0);
        std::vector<std::vector<double>> jtab(cmax + 1);
        for (std::uint64_t c = 1; c <= cmax; ++c) {
            kval[c] = kloosterman(term.m, term.n, c);
            if (kval[c] != 0.0) jtab[c] = bessel_j_array(khi, x0 / c);
        }

        for (int k = klo; k <= khi; k += 2) {
            if (parity == +1 && k % 4 != 0) continue;
            if (parity == -1 && k % 4 != 2) continue;
            double w = h((k - 1) / K);
            if (w == 0.0) continue;
            double sign = (k % 4 == 0) ? 1.0 : -1.0;
            Kahan csum;
            for (std::uint64_t c = 1; c <= cmax; ++c) {
                if (kval[c] == 0.0) continue;
                csum.add(kval[c] / static_cast<double>(c) * jtab[c][k - 1]);
            }
            double contrib = term.coeff * w * (delta + 2.0 * kPi * sign * csum.s);
            if (k % 4 == 0)
                plus.add(contrib);
            else
                minus.add(contrib);
        }
    }
    if (parity == +1) return plus.s;
    if (parity == -1) return minus.s;
    return plus.s + minus.s;
}

LevelAverage average_S_levelN(std::uint64_t N, int parity, std::uint64_t m,
                              double delta0, std::uint64_t cmax) {
    if (std::gcd(m, N) != 1)
        throw std::invalid_argument("payload index must be coprime to the level");
    if (delta0 <= 0.0 || delta0 >= 1.0)
        throw std::invalid_argument("harmonic-weight truncation exponent out of range");
    std::uint64_t T = static_cast<std::uint64_t>(
        std::floor(std::pow(static_cast<double>(N), delta0)));
    if (T < 1) T = 1;

    double front = (static_cast<double>(N) - 1.0 / static_cast<double>(N)) / 12.0;

    // S applied to a plain eigenvalue payload lambda(a): expand the harmonic
    // weight into sum_{t <= T} lambda(t^2)/t and reduce to kernel values.
    auto S_of = [&](std::uint64_t a) {
        Kahan v;
        double var = 0.0;
        for (std::uint64_t t = 1; t <= T; ++t) {
            KernelValue kv = petersson_kernel_levelN(N, a, t * t, cmax);
            v.add(kv.value / static_cast<double>(t));
            double r = kv.tail_rms / static_cast<double>(t);
            var += r * r;
        }
        return std::pair<double, double>(front * v.s, front * std::sqrt(var));
    };

    auto [s_plain, rms_plain] = S_of(m);
    LevelAverage out;
    if (parity == 0) {
        out.value = s_plain;
        out.tail_rms = rms_plain;
        return out;
    }
    // Sign projector (1 +- eps_f)/2 with eps_f = lambda_f(N) sqrt(N) at
    // prime level, so eps_f lambda(m) = sqrt(N) lambda(N m) for (m, N) = 1.
    auto [s_sign, rms_sign] = S_of(N * m);
    double sgn = (parity > 0) ? 1.0 : -1.0;
    out.value = 0.5 * (s_plain + sgn * std::sqrt(static_cast<double>(N)) * s_sign);
    out.tail_rms = 0.5 * std::hypot(rms_plain, std::sqrt(static_cast<double>(N)) * rms_sign);
    return out;
}

}  // namespace odl
