#include "matpress/affinity.hpp"

#include <algorithm>
#include <cmath>

#include "matpress/error.hpp"

namespace matpress {

namespace {
constexpr double neg_inf = -std::numeric_limits<double>::infinity();
}

const char* to_string(AffinityBranch b) {
    return b == AffinityBranch::determinant ? "determinant" : "trisection";
}

bool check_geq_d(const FiniteMatrixMeasure& mu) {
    if (mu.empty()) return false;
    double total = 0.0;
    for (const Atom& a : mu.atoms()) total += a.weight * std::abs(determinant(a.matrix));
    return total >= 1.0;
}

std::pair<double, double> solve_det_dimension_interval(const FiniteMatrixMeasure& mu, double tol) {
    if (!(tol > 0.0)) invalid_input("tolerance must be positive");
    if (!check_geq_d(mu)) invalid_input("determinant equation has no root >= d for this measure");
    for (const Atom& a : mu.atoms()) {
        if (std::abs(determinant(a.matrix)) >= 1.0) {
            invalid_input("determinant branch needs every |det A_i| < 1");
        }
    }
    const double d = static_cast<double>(mu.dim());
    auto f = [&](double s) { return det_pressure(mu, s); };
    double lo = d, hi = 2.0 * d;
    if (f(lo) == 0.0) return {lo, lo};
    while (f(hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) invalid_input("determinant equation root is not finite");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

double solve_det_dimension(const FiniteMatrixMeasure& mu, double tol) {
    const auto [lo, hi] = solve_det_dimension_interval(mu, tol);
    return 0.5 * (lo + hi);
}

namespace {

// Closest fraction with denominator <= q_cap to `target` inside [lo, hi].
std::optional<Rational> snap(double target, double lo, double hi, std::size_t q_cap) {
    std::optional<Rational> best;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t q = 1; q <= q_cap; ++q) {
        const double qd = static_cast<double>(q);
        for (double pf : {std::floor(target * qd), std::ceil(target * qd)}) {
            const double v = pf / qd;
            if (v < lo || v > hi || pf < 0.0) continue;
            const double err = std::abs(v - target);
            if (err < best_err) {
                best_err = err;
                best = Rational(static_cast<std::int64_t>(pf), static_cast<std::int64_t>(q));
            }
        }
    }
    return best;
}

struct TestPoint {
    double t = 0.0;
    std::optional<LowerRule> rule;
    bool upper_alive = true;
    bool lower_alive = true;
};

}  // namespace

std::optional<TrisectOutcome> trisect_step(Interval cur, WordSumEngine& engine, BudgetMeter& meter,
                                           const AffinityOptions& options) {
    const std::size_t d = engine.measure().dim();
    const double w = cur.width();
    if (!(w > 0.0)) invalid_input("trisection needs a non-degenerate interval");

    std::vector<TestPoint> pts;
    auto add_point = [&](double t, std::optional<Rational> exact) {
        for (const auto& p : pts) {
            if (p.t == t) return;
        }
        TestPoint tp;
        tp.t = t;
        try {
            tp.rule = sv_lower_rule(d, t, exact, options.dim_cap);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::dimension_cap_exceeded) throw;
            tp.lower_alive = false;
        }
        pts.push_back(std::move(tp));
    };
    const double t1 = (2.0 * cur.lo + cur.hi) / 3.0;
    const double t2 = (cur.lo + 2.0 * cur.hi) / 3.0;
    if (d <= 2) {
        add_point(t1, std::nullopt);
        add_point(t2, std::nullopt);
    } else {
        // snapped points stay in the middle half so each side shrinks to <= 3/4
        const double lo = cur.lo + 0.25 * w, hi = cur.hi - 0.25 * w;
        for (double target : {t1, t2}) {
            if (const auto r = snap(target, lo, hi, options.q_cap)) {
                if (r->num > 0) add_point(r->value(), *r);
            }
        }
    }
    if (pts.empty()) return std::nullopt;

    // Tighter outcomes first: P(t1) < 0 and P(t2) > 0 each cut two thirds.
    struct Probe {
        std::size_t point;
        bool upper;
    };
    std::vector<Probe> order;
    if (pts.size() == 2) {
        order = {{0, true}, {1, false}, {1, true}, {0, false}};
    } else {
        order = {{0, true}, {0, false}};
    }

    for (std::size_t n = 1;; ++n) {
        bool any_alive = false;
        for (const Probe& pr : order) {
            TestPoint& tp = pts[pr.point];
            try {
                if (pr.upper && tp.upper_alive) {
                    any_alive = true;
                    const double u = upper_P(engine, tp.t, n, meter);
                    if (u == neg_inf || widen_up(u) < 0.0) return TrisectOutcome{{cur.lo, tp.t}, tp.t, n, true};
                } else if (!pr.upper && tp.lower_alive) {
                    any_alive = true;
                    const double l = lower_bound(engine, *tp.rule, n, meter);
                    if (l != neg_inf && widen_down(l) > 0.0) return TrisectOutcome{{tp.t, cur.hi}, tp.t, n, false};
                }
            } catch (const BudgetExhausted&) {
                (pr.upper ? tp.upper_alive : tp.lower_alive) = false;
            }
        }
        if (!any_alive) return std::nullopt;
    }
}

AffinityResult affinity_dimension(const FiniteMatrixMeasure& mu, double eps, const AffinityOptions& options) {
    if (mu.empty()) invalid_input("affinity dimension needs at least one atom");
    if (!(eps > 0.0)) invalid_input("eps must be positive");
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (!(operator_norm(mu[i].matrix) < 1.0)) {
            invalid_input("atom " + std::to_string(i) + " does not have norm strictly less than one");
        }
    }
    AffinityResult res;
    if (check_geq_d(mu)) {
        const auto [lo, hi] = solve_det_dimension_interval(mu, std::min(eps, 1e-12));
        res.interval = {lo, hi};
        res.branch = AffinityBranch::determinant;
        res.status = BracketStatus::certified;
        return res;
    }

    WordSumEngine engine(mu, options.engine);
    BudgetMeter meter(options.budget);
    res.interval = {0.0, static_cast<double>(mu.dim())};
    while (res.interval.width() > eps) {
        const auto step = trisect_step(res.interval, engine, meter, options);
        if (!step) {
            res.status = BracketStatus::budget_exhausted;
            res.note = "no test fired within the budget on [" + std::to_string(res.interval.lo) + ", " +
                       std::to_string(res.interval.hi) + "]";
            res.words_evaluated = meter.words_used();
            return res;
        }
        res.interval = step->next;
        ++res.steps;
    }
    res.status = BracketStatus::certified;
    res.words_evaluated = meter.words_used();
    return res;
}

}  // namespace matpress
