// One PASS/FAIL line per acceptance criterion.
//
// Exit status is the number of failing criteria outside the known list
// below. Known failures still print FAIL; if one of them starts passing the
// run fails too, so the list cannot go stale silently.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>

#include "matpress/affinity.hpp"
#include "matpress/cli.hpp"
#include "matpress/jsr.hpp"
#include "support.hpp"

using namespace matpress;

namespace {

// 10b: the n <= 4 separation asks for a lower bound the inequalities cannot
// give (L_n = log 2 - log 32 / n for this measure).
const std::set<std::string> known_unattainable = {"10b"};

int unexpected = 0;

template <class F>
void criterion(const std::string& id, const std::string& title, F&& body) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool known = known_unattainable.count(id) > 0;
    std::printf("%s criterion %-3s %s | %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", id.c_str(), title.c_str(),
                detail.c_str(), secs, known ? (ok ? " [listed as unattainable but passed]" : " [known unattainable]") : "");
    std::fflush(stdout);
    if (ok == known) ++unexpected;
}

std::string fmt(const char* f, double a) {
    char b[128];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

std::string bracket(const PressureBracket& b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%.10g, %.10g] %s n=%zu", b.lower, b.upper, to_string(b.status), b.n_used);
    return buf;
}

FiniteMatrixMeasure copies(std::size_t n, const Matrix& a) {
    return FiniteMatrixMeasure::counting(std::vector<Matrix>(n, a));
}

}  // namespace

int main() {
    const auto diag = oracle::diag_pair();
    const auto moran = copies(3, Matrix::scalar(2, 0.5));

    criterion("1", "diagonal closed form, norm pressure", [&](std::string& out) {
        const double target = std::log(5.0 / 6.0);
        // closed form cross-checked by brute force
        bool brute_ok = true;
        for (std::size_t n = 1; n <= 6; ++n) {
            const double s = oracle::word_sum(diag, n, [](const Matrix& m) { return oracle::norm(m); });
            double a = 0, b = 0;
            for (const auto& at : diag.atoms()) {
                a += at.matrix(0, 0);
                b += at.matrix(1, 1);
            }
            // max_j c_j^n <= S_n <= 2 max_j c_j^n for the column sums c_j
            brute_ok &= std::log(s) / n <= std::log(std::max(a, b)) + std::log(2.0) / n + 1e-12 &&
                        std::log(s) / n >= target - 1e-12 && std::abs(upper_M(diag, 1.0, n) - std::log(s) / n) <= 1e-12;
        }
        const auto b = estimate_M(diag, 1.0, 0.75);
        bool all_n = true;
        for (std::size_t n = 1; n <= 8; ++n)
            all_n &= lower_M(diag, 1.0, n) <= target && target <= upper_M(diag, 1.0, n);
        out = bracket(b) + ", log(5/6) in [L_n,U_n] for n<=8: " + (all_n ? "yes" : "no") +
              ", brute force agrees: " + (brute_ok ? "yes" : "no");
        return b.status == BracketStatus::certified && b.contains(target) && b.width() < 0.75 && all_n && brute_ok;
    });

    criterion("2", "scalar exactness", [&](std::string& out) {
        const auto mu = FiniteMatrixMeasure::counting({Matrix::scalar(2, 0.5)});
        bool ok = true;
        double worst = 0;
        for (double s : {0.5, 1.0, 2.0}) {
            const double m = s * std::log(0.5);
            const double du = std::abs(upper_M(mu, s, 1) - m);
            const double dl = std::abs(lower_M(mu, s, 1) - (m - log_norm_constant(2, s)));
            const auto b = estimate_M(mu, s, 0.5);
            worst = std::max({worst, du, dl});
            ok &= du <= 1e-12 && dl <= 1e-12 && b.contains(m) && b.status == BracketStatus::certified;
        }
        out = fmt("max deviation of U_1 and L_1 %.3g", worst);
        return ok;
    });

    criterion("3", "minus infinity detection", [&](std::string& out) {
        const auto mu = FiniteMatrixMeasure::counting({Matrix{{0, 1}, {0, 0}}, Matrix{{0, 3}, {0, 0}}});
        const auto rep = detect_minus_infinity(mu, 1.0);
        const auto b = estimate_M(mu, 1.0, 0.1);
        out = "products " + std::to_string(rep.products) + ", words " + std::to_string(b.words_evaluated) + ", " +
              to_string(b.status);
        return rep.minus_infinity && rep.products == 4 && b.status == BracketStatus::minus_infinity &&
               b.words_evaluated == 4;
    });

    criterion("4", "Gelfand single matrix", [&](std::string& out) {
        const auto mu = FiniteMatrixMeasure::counting({Matrix{{0, 1}, {0.5, 0}}});
        const auto b = estimate_M(mu, 2.0, 0.1);
        out = bracket(b) + ", target -log 2";
        return b.status == BracketStatus::certified && b.contains(-std::log(2.0));
    });

    criterion("5", "lift identity on 200 random matrices", [&](std::string& out) {
        std::mt19937_64 rng(5);
        struct P {
            std::size_t d, k, p, q;
        };
        std::vector<P> params;
        for (std::size_t d = 2; d <= 3; ++d)
            for (std::size_t k = 1; k < d; ++k)
                for (std::size_t q = 1; q <= 3; ++q)
                    for (std::size_t p = 0; p < q; ++p)
                        if (std::gcd(p, q) == 1) params.push_back({d, k, p, q});
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const P& pr = params[static_cast<std::size_t>(i) % params.size()];
            const Matrix a = oracle::random_matrix(rng, pr.d);
            const double s = static_cast<double>(pr.k) + static_cast<double>(pr.p) / static_cast<double>(pr.q);
            const double ph = oracle::phi(a, s);
            const double l = std::pow(operator_norm(lift(a, pr.k, pr.p, pr.q)), 1.0 / static_cast<double>(pr.q));
            worst = std::max(worst, std::abs(l - ph) / (1 + ph));
        }
        out = fmt("worst |lift^(1/q) - phi|/(1+phi) = %.3g", worst);
        return worst <= 1e-8;
    });

    criterion("6", "planar bracket validity on 50 random measures", [&](std::string& out) {
        std::mt19937_64 rng(6);
        double worst = -INFINITY;
        for (int t = 0; t < 50; ++t) {
            std::vector<Matrix> ms = {oracle::random_matrix(rng, 2, -0.9, 0.9), oracle::random_matrix(rng, 2, -0.9, 0.9)};
            const auto mu = FiniteMatrixMeasure::counting(ms);
            for (double s : {0.5, 1.0, 1.5, 2.5}) {
                for (std::size_t m = 1; m <= 3; ++m) {
                    const double u = upper_P(mu, s, m);
                    if (s >= 2.0) {
                        worst = std::max(worst, det_pressure(mu, s) - u);
                        continue;
                    }
                    for (std::size_t n = 1; n <= 3; ++n) worst = std::max(worst, lower_P_2d(mu, s, n) - u);
                }
            }
        }
        out = fmt("max(lower - upper) = %.3g", worst);
        return worst <= 1e-9;
    });

    criterion("7", "similarity pressure", [&](std::string& out) {
        const double target = std::log(3 * std::pow(2.0, -1.5));
        const auto b = estimate_P(moran, 1.5, 0.5);
        out = bracket(b) + fmt(", target %.7f", target);
        return b.status == BracketStatus::certified && b.contains(target);
    });

    AffinityResult moran_single;
    criterion("8", "affinity dimension, Moran", [&](std::string& out) {
        AffinityOptions opts;
        opts.budget.max_words = 100'000'000;
        moran_single = affinity_dimension(moran, 0.7, opts);
        const auto& r = moran_single;
        const double target = std::log(3.0) / std::log(2.0);
        char buf[200];
        std::snprintf(buf, sizeof buf, "[%.10g, %.10g] width %.4g, %s, %zu steps, %llu words", r.interval.lo,
                      r.interval.hi, r.interval.width(), to_string(r.status), r.steps,
                      static_cast<unsigned long long>(r.words_evaluated));
        out = buf;
        return r.status == BracketStatus::certified && r.interval.width() <= 0.7 && r.interval.lo <= target &&
               target <= r.interval.hi;
    });

    criterion("9", "affinity dimension, determinant branch", [&](std::string& out) {
        const auto r = affinity_dimension(copies(4, Matrix::scalar(2, 0.8)), 1e-6);
        const double v = 0.5 * (r.interval.lo + r.interval.hi);
        out = fmt("value %.9f", v) + ", branch " + to_string(r.branch);
        return r.branch == AffinityBranch::determinant && std::abs(v - 6.212567) <= 1e-6;
    });

    const auto proj = FiniteMatrixMeasure::counting({Matrix::identity(2), Matrix::diagonal({1, 0})});
    criterion("10a", "discontinuity verdicts", [&](std::string& out) {
        const auto r = discontinuity_check_2d(proj, 0.1);
        const auto nil = FiniteMatrixMeasure::counting({Matrix::identity(2), Matrix{{0, 1}, {0, 0}}});
        const auto c = discontinuity_check_2d(nil, 0.1);
        out = std::string(to_string(r.verdict)) + " " + bracket(r.full) + " vs " + bracket(r.invertible) +
              "; nilpotent: " + to_string(c.verdict);
        return r.verdict == Continuity::discontinuous_at_1 && c.verdict == Continuity::continuous_at_1 &&
               r.full.contains(std::log(2.0)) && r.invertible.contains(0.0);
    });

    criterion("10b", "discontinuity brackets separated by 0.5 at n <= 4", [&](std::string& out) {
        double lo = -INFINITY, hi = INFINITY;
        const auto inv = restrict_invertible(proj);
        for (std::size_t n = 1; n <= 4; ++n) {
            lo = std::max(lo, lower_P_2d(proj, 1.0, n));
            hi = std::min(hi, upper_P(inv, 1.0, n));
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "best lower for P(mu,1) %.6f, best upper for P(mu0,1) %.6f, gap %.6f", lo, hi,
                      lo - hi);
        out = buf;
        return lo - hi >= 0.5;
    });

    criterion("11", "block-triangular invariance", [&](std::string& out) {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-0.9, 0.9);
        int met = 0;
        for (int t = 0; t < 20; ++t) {
            std::vector<Matrix> tri, dia;
            for (int i = 0; i < 2; ++i) {
                const double a = u(rng), b = u(rng), c = u(rng);
                tri.push_back(Matrix{{a, b}, {0, c}});
                dia.push_back(Matrix{{a, 0}, {0, c}});
            }
            const auto bt = estimate_M(FiniteMatrixMeasure::counting(tri), 1.0, 1.0);
            const auto bd = estimate_M(FiniteMatrixMeasure::counting(dia), 1.0, 1.0);
            met += bt.status == BracketStatus::certified && bd.status == BracketStatus::certified &&
                   std::max(bt.lower, bd.lower) <= std::min(bt.upper, bd.upper);
        }
        out = std::to_string(met) + "/20 pairs intersect";
        return met == 20;
    });

    criterion("12", "JSR and zero temperature", [&](std::string& out) {
        const auto sc = zero_temperature_scan(diag, default_scan_grid(), 1.0);
        bool decreasing = true;
        double prev = INFINITY, last = INFINITY;
        std::string gaps;
        for (const auto& r : sc.rows) {
            const double gap = std::max(std::abs(r.exp_lower - 0.5), std::abs(r.exp_upper - 0.5));
            decreasing &= gap < prev && r.bracket.status == BracketStatus::certified;
            prev = last = gap;
            gaps += fmt(" %.4g", gap);
        }
        out = "jsr " + bracket(sc.jsr) + ", distances" + gaps;
        return sc.jsr.contains(0.5) && last <= 0.01 && decreasing;
    });

    criterion("13", "p-radius", [&](std::string& out) {
        const auto b = p_radius(copies(2, Matrix::scalar(2, 0.3)), 2.0, 0.5);
        out = bracket(b) + fmt(", upper - 0.3 = %.3g", b.upper - 0.3);
        return b.contains(0.3) && std::abs(b.upper - 0.3) <= 1e-9;
    });

    criterion("14", "determinism across worker counts", [&](std::string& out) {
        const auto m1 = estimate_M(diag, 1.0, 0.75);
        cli::JobSpec job;
        job.command = cli::Command::pressure;
        job.s = "1";
        job.eps = 0.75;
        job.workers = 4;
        const auto r1 = cli::run(job, diag);
        cli::JobSpec aff;
        aff.command = cli::Command::affdim;
        aff.eps = 0.7;
        aff.budget.max_words = 100'000'000;
        aff.workers = 4;
        const auto r8 = cli::run(aff, moran);
        const double d = std::max({std::abs(cli::number_value(r1.data["lower"]) - m1.lower),
                                   std::abs(cli::number_value(r1.data["upper"]) - m1.upper),
                                   std::abs(cli::number_value(r8.data["lower"]) - moran_single.interval.lo),
                                   std::abs(cli::number_value(r8.data["upper"]) - moran_single.interval.hi)});
        out = fmt("max endpoint difference %.3g", d);
        return d <= 1e-10;
    });

    std::printf("%d unexpected result(s)\n", unexpected);
    return unexpected;
}
