// Command-line front end: dispatches to the library modules and serializes
// reports as CSV (header row, locale-free decimal text) or JSON.  Every
// report opens with a format-version header that embeds the full config.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "odl/arith.hpp"
#include "odl/besselseries.hpp"
#include "odl/density.hpp"
#include "odl/extremal.hpp"
#include "odl/modforms.hpp"
#include "odl/petersson.hpp"
#include "odl/rmt.hpp"
#include "odl/testfun.hpp"
#include "odl/window.hpp"

namespace {

constexpr int kFormatVersion = 1;

struct Args {
    std::string subcommand;
    std::map<std::string, std::string> kv;
    std::string raw;  // full command line, echoed into headers

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const {
        auto it = kv.find(key);
        if (it != kv.end()) return it->second;
        if (!fallback.empty()) return fallback;
        throw std::invalid_argument("missing required flag --" + key);
    }
    long long get_int(const std::string& key, long long fallback,
                      bool required = false) const {
        if (!has(key)) {
            if (required) throw std::invalid_argument("missing required flag --" + key);
            return fallback;
        }
        std::size_t pos = 0;
        const std::string& s = kv.at(key);
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("flag --" + key + " is not an integer");
        return v;
    }
    double get_double(const std::string& key, double fallback,
                      bool required = false) const {
        if (!has(key)) {
            if (required) throw std::invalid_argument("missing required flag --" + key);
            return fallback;
        }
        std::size_t pos = 0;
        const std::string& s = kv.at(key);
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("flag --" + key + " is not a number");
        return v;
    }
};

Args parse_args(int argc, char** argv) {
    Args a;
    std::ostringstream raw;
    for (int i = 0; i < argc; ++i) raw << (i ? " " : "") << argv[i];
    a.raw = raw.str();
    if (argc < 2) throw std::invalid_argument("usage: odl <subcommand> [--flag value ...]");
    a.subcommand = argv[1];
    for (int i = 2; i < argc; ++i) {
        std::string f = argv[i];
        if (f.rfind("--", 0) != 0)
            throw std::invalid_argument("malformed flag '" + f + "' (expected --name)");
        f = f.substr(2);
        std::string v = "true";
        if (i + 1 < argc && std::string(argv[i + 1]).rfind("--", 0) != 0) v = argv[++i];
        a.kv[f] = v;
    }
    return a;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') { out += '\\'; out += c; }
        else out += c;
    }
    return out;
}

// Flat report: ordered key -> numeric text (or quoted string), rendered as
// either one CSV record or one JSON object.
class Report {
  public:
    explicit Report(const Args& args) : args_(args) {
        json_ = args.get("format", "csv") == "json";
        if (!json_ && args.get("format", "csv") != "csv")
            throw std::invalid_argument("flag --format must be csv or json");
    }
    bool json() const { return json_; }

    void add(const std::string& key, double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        row_.emplace_back(key, buf);
    }
    void add(const std::string& key, long long v) {
        row_.emplace_back(key, std::to_string(v));
    }
    void add_str(const std::string& key, const std::string& v) {
        row_.emplace_back(key, "\"" + json_escape(v) + "\"");
        strings_.push_back(row_.size() - 1);
    }
    void endrow() { rows_.push_back(row_); row_.clear(); strings_.clear(); }

    void print() const {
        if (json_) {
            std::printf("{\"version\":%d,\"config\":\"%s\",\"rows\":[", kFormatVersion,
                        json_escape(args_.raw).c_str());
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                std::printf("%s{", r ? "," : "");
                for (std::size_t i = 0; i < rows_[r].size(); ++i)
                    std::printf("%s\"%s\":%s", i ? "," : "", rows_[r][i].first.c_str(),
                                rows_[r][i].second.c_str());
                std::printf("}");
            }
            std::printf("]}\n");
        } else {
            std::printf("# odl-report version=%d config=%s\n", kFormatVersion,
                        args_.raw.c_str());
            if (rows_.empty()) return;
            for (std::size_t i = 0; i < rows_[0].size(); ++i)
                std::printf("%s%s", i ? "," : "", rows_[0][i].first.c_str());
            std::printf("\n");
            for (const auto& row : rows_) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    std::string v = row[i].second;
                    if (!v.empty() && v.front() == '"')  // unquote for CSV
                        v = v.substr(1, v.size() - 2);
                    std::printf("%s%s", i ? "," : "", v.c_str());
                }
                std::printf("\n");
            }
        }
    }

  private:
    Args args_;
    bool json_ = false;
    std::vector<std::pair<std::string, std::string>> row_;
    std::vector<std::size_t> strings_;
    std::vector<std::vector<std::pair<std::string, std::string>>> rows_;
};

odl::SymmetryClass parse_class(const std::string& s) {
    if (s == "so-even") return odl::SymmetryClass::SOeven;
    if (s == "so-odd") return odl::SymmetryClass::SOodd;
    if (s == "o") return odl::SymmetryClass::O;
    if (s == "sp") return odl::SymmetryClass::Sp;
    throw std::invalid_argument("flag --class must be so-even, so-odd, o, or sp");
}

std::string cache_dir(const Args& a) {
    if (a.has("cache-dir")) return a.get("cache-dir");
    const char* env = std::getenv("ODL_CACHE_DIR");
    return env ? env : "";
}

void add_terms(Report& rep, const odl::DensityTerms& t) {
    rep.add("arch", t.arch);
    rep.add("diag", t.diag);
    rep.add("lambda_p", t.lam_p);
    rep.add("lambda_p2", t.lam_p2);
    rep.add("higher", t.higher);
    rep.add("total", t.total());
}

int run(const Args& args) {
    Report rep(args);

    if (args.subcommand == "kloosterman") {
        auto m = (std::uint64_t)args.get_int("m", 0, true);
        auto n = (std::uint64_t)args.get_int("n", 0, true);
        std::uint64_t clo = (std::uint64_t)args.get_int("c", 1);
        std::uint64_t chi = (std::uint64_t)args.get_int("cmax", (long long)clo);
        for (std::uint64_t c = clo; c <= chi; ++c) {
            rep.add("c", (long long)c);
            rep.add("value", odl::kloosterman(m, n, c));
            rep.add("weil_bound", odl::weil_bound(m, n, c));
            rep.endrow();
        }
    } else if (args.subcommand == "twisted-sum") {
        auto n = (std::uint64_t)args.get_int("n", 0, true);
        auto c = (std::uint64_t)args.get_int("c", 0, true);
        rep.add("n", (long long)n);
        rep.add("c", (long long)c);
        rep.add("closed_form", odl::twisted_sum_closed(n, c));
        rep.add("enumerated", odl::twisted_sum_enum(n, c));
        rep.endrow();
    } else if (args.subcommand == "bessel-check") {
        odl::SmoothWindow h(args.get_double("wa", 0.5), args.get_double("wb", 2.0));
        double L = args.get_double("L", 0.0, true);
        double x = args.get_double("x", 0.0, true);
        std::string variant = args.get("variant", "even");
        odl::BesselSeriesReport r;
        if (variant == "odd") r = odl::bessel_series_check_odd(h, L, x);
        else if (variant == "plus") r = odl::bessel_series_check(h, 1, L, x);
        else if (variant == "minus") r = odl::bessel_series_check(h, -1, L, x);
        else throw std::invalid_argument("flag --variant must be plus, minus, or odd");
        rep.add("L", L);
        rep.add("x", x);
        rep.add("lhs", r.lhs);
        rep.add("main_term", r.main_term);
        rep.add("imag_term", r.imag_term);
        rep.add("correction", r.correction);
        rep.add("rhs", r.rhs);
        rep.add("residual", r.residual);
        rep.endrow();
    } else if (args.subcommand == "eigen") {
        int k = (int)args.get_int("k", 0, true);
        auto pmax = (std::uint64_t)args.get_int("pmax", 100);
        std::string dir = cache_dir(args);
        odl::CuspSpace space = dir.empty()
                                   ? odl::victor_miller_basis(k, (std::size_t)pmax)
                                   : odl::victor_miller_basis_cached(k, (std::size_t)pmax, dir);
        auto forms = odl::eigenforms(space, pmax);
        auto primes = odl::primes_up_to(pmax);
        for (std::size_t i = 0; i < forms.size(); ++i)
            for (auto p : primes) {
                rep.add("form", (long long)i);
                rep.add("p", (long long)p);
                rep.add("lambda", (double)forms[i].lambda(p));
                rep.endrow();
            }
    } else if (args.subcommand == "petersson-check") {
        int k = (int)args.get_int("k", 0, true);
        auto r = odl::petersson_level1(k, (std::uint64_t)args.get_int("m", 1),
                                       (std::uint64_t)args.get_int("n", 1),
                                       (std::uint64_t)args.get_int("cmax", 0));
        rep.add("k", (long long)k);
        rep.add("m", (long long)r.m);
        rep.add("n", (long long)r.n);
        rep.add("lhs", r.lhs);
        rep.add("rhs", r.rhs);
        rep.add("residual", r.residual);
        rep.add("tail_bound", r.tail_bound);
        rep.add("cmax", (long long)r.cmax);
        rep.endrow();
    } else if (args.subcommand == "petersson-kernel") {
        auto N = (std::uint64_t)args.get_int("N", 0, true);
        auto v = odl::petersson_kernel_levelN(N, (std::uint64_t)args.get_int("m", 1),
                                              (std::uint64_t)args.get_int("n", 1),
                                              (std::uint64_t)args.get_int("cmax", 0, true));
        rep.add("N", (long long)N);
        rep.add("value", v.value);
        rep.add("tail_rms", v.tail_rms);
        rep.add("cmax", (long long)v.cmax);
        rep.endrow();
    } else if (args.subcommand == "density") {
        odl::TestFunction phi = odl::parse_test_function(args.get("phi"));
        std::string aspect = args.get("aspect", "weight");
        if (aspect == "single") {
            int k = (int)args.get_int("k", 0, true);
            double scale = args.get_double("scale", 2.0 * std::log((double)k));
            auto pmax = (std::uint64_t)args.get_int(
                "pmax", (long long)std::ceil(std::exp(scale * phi.support_radius())) + 1);
            auto forms = odl::eigenforms_for_weight(k, pmax);
            for (std::size_t i = 0; i < forms.size(); ++i) {
                auto t = odl::density_single_terms(forms[i], phi, scale);
                rep.add("form", (long long)i);
                add_terms(rep, t);
                rep.endrow();
            }
        } else if (aspect == "weight" || aspect == "sym2") {
            double K = args.get_double("K", 0.0, true);
            odl::SmoothWindow h(args.get_double("wa", 0.5), args.get_double("wb", 2.0));
            odl::FamilyDensityReport r;
            if (aspect == "weight") {
                r = odl::family_average(h, K, (int)args.get_int("parity", 0), phi);
            } else {
                auto pmax = (std::uint64_t)args.get_int(
                    "pmax",
                    (long long)std::ceil(std::pow(K, 2.0 * phi.support_radius())) + 2);
                r = odl::family_average_sym2(h, K, phi, pmax);
            }
            rep.add("K", r.K);
            rep.add("parity", (long long)r.parity);
            add_terms(rep, r.terms);
            rep.add("mass", r.mass);
            rep.add("statistic", r.statistic);
            rep.add("prediction", r.prediction);
            rep.endrow();
        } else {
            throw std::invalid_argument("flag --aspect must be single, weight, or sym2");
        }
    } else if (args.subcommand == "hyp4") {
        auto t = odl::hyp4_sum((std::uint64_t)args.get_int("a", 0, true),
                               (std::uint64_t)args.get_int("c", 0, true),
                               (std::uint64_t)args.get_int("X", 0, true),
                               args.has("weighted"));
        for (std::size_t i = 0; i < t.X.size(); ++i) {
            rep.add("X", t.X[i]);
            rep.add("re", t.re_sum[i]);
            rep.add("im", t.im_sum[i]);
            rep.add("abs", t.abs_sum[i]);
            rep.add("exponent", t.exponent);
            rep.add("sigma", t.sigma);
            rep.endrow();
        }
    } else if (args.subcommand == "predict") {
        auto cls = parse_class(args.get("class"));
        odl::TestFunction phi = odl::parse_test_function(args.get("phi"));
        rep.add("fourier_side", odl::predict_integral(cls, phi));
        rep.add("space_side", odl::predict_integral_space(cls, phi));
        rep.endrow();
    } else if (args.subcommand == "rmt") {
        std::string g = args.get("group");
        odl::MatrixGroup mg;
        if (g == "so-even") mg = odl::MatrixGroup::SOEven;
        else if (g == "so-odd") mg = odl::MatrixGroup::SOOdd;
        else if (g == "usp") mg = odl::MatrixGroup::USp;
        else throw std::invalid_argument("flag --group must be so-even, so-odd, or usp");
        auto sample = odl::sample_group(mg, (int)args.get_int("N", 0, true),
                                        (int)args.get_int("samples", 0, true),
                                        (std::uint64_t)args.get_int("seed", 1),
                                        (int)args.get_int("threads", 1));
        auto hist = odl::empirical_one_level(sample, args.get_double("binwidth", 0.1),
                                             args.get_double("cutoff", 3.0));
        for (std::size_t i = 0; i + 1 < hist.edges.size(); ++i) {
            rep.add("bin_lo", hist.edges[i]);
            rep.add("bin_hi", hist.edges[i + 1]);
            rep.add("empirical", hist.density[i]);
            rep.add("predicted", hist.predicted[i]);
            rep.add("stderr", hist.stderr_[i]);
            rep.endrow();
        }
    } else if (args.subcommand == "extremal") {
        auto cls = parse_class(args.get("class"));
        double half = args.get_double("half-support", 1.0);
        odl::FredholmProblem p;
        p.symmetry = cls;
        p.grid = (int)args.get_int("grid", 256);
        p.half_support = half;
        auto sol = odl::solve_fredholm(p);
        auto est = odl::extremal_alpha(cls, half);
        rep.add("grid", (long long)p.grid);
        rep.add("alpha_grid", sol.alpha);
        rep.add("alpha_extrapolated", est.alpha);
        rep.add("convergence_order", est.order);
        rep.add("residual", sol.residual);
        if (cls != odl::SymmetryClass::Sp && half == 1.0)
            rep.add("alpha_reference", odl::reference_alpha(cls));
        rep.endrow();
    } else if (args.subcommand == "nonvanishing") {
        auto cls = parse_class(args.get("class"));
        std::string mode = args.get("alpha", "auto");
        double alpha;
        if (mode == "auto") {
            alpha = cls == odl::SymmetryClass::Sp
                        ? odl::extremal_alpha(cls, 2.0 / 3.0).alpha
                        : odl::extremal_alpha(cls).alpha;
        } else if (mode == "flat") {
            alpha = cls == odl::SymmetryClass::SOeven ? 7.0 / 8.0
                    : cls == odl::SymmetryClass::SOodd ? 9.0 / 8.0
                    : cls == odl::SymmetryClass::Sp    ? 9.0 / 32.0
                                                       : 1.0;
        } else {
            alpha = args.get_double("alpha", 0.0, true);
        }
        auto r = odl::nonvanishing_pipeline(cls, alpha);
        rep.add_str("class", args.get("class"));
        rep.add("alpha", r.alpha);
        rep.add("order_bound", r.order_bound);
        rep.add("proportion", r.proportion);
        rep.endrow();
    } else {
        throw std::invalid_argument("unknown subcommand '" + args.subcommand + "'");
    }

    rep.print();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(parse_args(argc, argv));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "{\"error\":\"%s\"}\n", json_escape(e.what()).c_str());
        return 2;
    }
}
