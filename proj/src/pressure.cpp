#include "matpress/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "matpress/error.hpp"

namespace matpress {

namespace {
constexpr double neg_inf = -std::numeric_limits<double>::infinity();
constexpr double pos_inf = std::numeric_limits<double>::infinity();
}  // namespace

const char* to_string(BracketStatus status) {
    switch (status) {
        case BracketStatus::certified: return "certified";
        case BracketStatus::minus_infinity: return "minus_infinity";
        case BracketStatus::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
}

const char* to_string(LowerBoundSource source) {
    switch (source) {
        case LowerBoundSource::none: return "none";
        case LowerBoundSource::norm_inequality: return "norm-pressure-inequality";
        case LowerBoundSource::planar_inequality: return "planar-singular-value-inequality";
        case LowerBoundSource::lift_inequality: return "exterior-lift-inequality";
        case LowerBoundSource::determinant_formula: return "determinant-branch";
    }
    return "unknown";
}

double PressureBracket::width() const {
    if (lower == upper) return 0.0;
    return upper - lower;
}

double widen_down(double x) {
    if (!std::isfinite(x)) return x;
    return x - endpoint_slack * (1.0 + std::abs(x));
}

double widen_up(double x) {
    if (!std::isfinite(x)) return x;
    return x + endpoint_slack * (1.0 + std::abs(x));
}

double log_norm_constant(std::size_t d, double s) {
    if (d == 0) invalid_input("dimension must be positive");
    if (!(s > 0.0)) invalid_input("exponent must be positive");
    const double ld = std::log(static_cast<double>(d));
    return (2.0 + static_cast<double>(d + 1) * s) * ld + std::max((1.0 - s) * ld, 0.0);
}

double norm_constant(std::size_t d, double s) { return std::exp(log_norm_constant(d, s)); }

double upper_M(WordSumEngine& engine, double s, std::size_t n, BudgetMeter& meter) {
    const LogValue sn = engine.sum(n, Kernel::norm(s), meter);
    return sn.log_magnitude / static_cast<double>(n);
}

double upper_M(const FiniteMatrixMeasure& mu, double s, std::size_t n, const WordBudget& budget) {
    WordSumEngine engine(mu);
    BudgetMeter meter(budget);
    return upper_M(engine, s, n, meter);
}

double lower_M(WordSumEngine& engine, double s, std::size_t n, BudgetMeter& meter) {
    const std::size_t d = engine.measure().dim();
    const Kernel k = Kernel::norm(s);
    const LogValue big = engine.sum(n * d, k, meter);
    if (big.is_zero()) return neg_inf;
    const LogValue small = engine.sum(n, k, meter);
    return (big.log_magnitude - log_norm_constant(d, s) -
            static_cast<double>(d - 1) * small.log_magnitude) /
           static_cast<double>(n);
}

double lower_M(const FiniteMatrixMeasure& mu, double s, std::size_t n, const WordBudget& budget) {
    WordSumEngine engine(mu);
    BudgetMeter meter(budget);
    return lower_M(engine, s, n, meter);
}

ZeroProductReport detect_minus_infinity(const FiniteMatrixMeasure& mu, double s, const WordBudget& budget) {
    if (!(s > 0.0)) invalid_input("exponent must be positive");
    ZeroProductReport rep;
    if (mu.empty()) {
        rep.minus_infinity = true;
        return rep;
    }
    const std::size_t d = mu.dim(), d2 = d * d, N = mu.size();
    BudgetMeter meter(budget);
    meter.charge(std::pow(static_cast<double>(N), static_cast<double>(d)), d);

    // Depth-first over words of length d; prefixes are kept with a separate
    // base-2 exponent so deep products of contractions do not underflow.
    std::vector<double> bufs(d * d2);
    std::vector<std::int64_t> exps(d, 0);
    double best_log = neg_inf;
    const double log_tau = std::log(tau_zero);
    auto rescale = [](std::span<double> m) -> std::int64_t {
        double mx = 0.0;
        for (double x : m) mx = std::max(mx, std::abs(x));
        if (mx == 0.0) return 0;
        int e = 0;
        std::frexp(mx, &e);
        for (double& x : m) x = std::ldexp(x, -e);
        return e;
    };
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        std::span<double> cur(bufs.data() + pos * d2, d2);
        for (std::size_t i = 0; i < N; ++i) {
            const auto a = mu[i].matrix.entries();
            if (pos == 0) {
                std::copy(a.begin(), a.end(), cur.begin());
                exps[0] = rescale(cur);
            } else {
                multiply_into(std::span<const double>(bufs.data() + (pos - 1) * d2, d2), a, cur, d);
                exps[pos] = exps[pos - 1] + rescale(cur);
            }
            if (pos + 1 < d) {
                self(self, pos + 1);
                continue;
            }
            ++rep.products;
            const double n1 = operator_norm(cur, d);
            if (n1 == 0.0) continue;
            const double lg = std::log(n1) + static_cast<double>(exps[pos]) * std::numbers::ln2;
            best_log = std::max(best_log, lg);
        }
    };
    rec(rec, 0);
    rep.max_norm = std::exp(best_log);
    rep.minus_infinity = best_log <= log_tau;
    return rep;
}

double lower_bound(WordSumEngine& engine, const LowerRule& rule, std::size_t n, BudgetMeter& meter) {
    if (rule.exact) return *rule.exact;
    const LogValue big = engine.sum(rule.fold * n, rule.kernel, meter);
    if (big.is_zero()) return neg_inf;
    const LogValue small = engine.sum(n, rule.kernel, meter);
    return (big.log_magnitude - rule.log_constant - static_cast<double>(rule.fold - 1) * small.log_magnitude) /
           static_cast<double>(n);
}

PressureBracket bracket_loop(WordSumEngine& engine, const Kernel& upper_kernel, const LowerRule& rule,
                             double eps, BudgetMeter& meter) {
    if (!(eps > 0.0)) invalid_input("eps must be positive");
    PressureBracket out;
    out.source = rule.source;
    double best_lower = neg_inf, best_upper = pos_inf;
    if (rule.exact) best_lower = *rule.exact;

    std::map<std::size_t, LogValue> upper_sums, lower_sums;
    const bool same_kernel = rule.kernel.kind == upper_kernel.kind && rule.kernel.s == upper_kernel.s;
    auto upper_sum = [&](std::size_t n) {
        auto it = upper_sums.find(n);
        if (it == upper_sums.end()) it = upper_sums.emplace(n, engine.sum(n, upper_kernel, meter)).first;
        return it->second;
    };
    auto lower_sum = [&](std::size_t n) {
        if (same_kernel) return upper_sum(n);
        auto it = lower_sums.find(n);
        if (it == lower_sums.end()) it = lower_sums.emplace(n, engine.sum(n, rule.kernel, meter)).first;
        return it->second;
    };
    auto finish = [&](BracketStatus status) {
        out.status = status;
        out.words_evaluated = meter.words_used();
        if (status == BracketStatus::minus_infinity) {
            out.lower = out.upper = neg_inf;
        } else {
            out.lower = widen_down(best_lower);
            out.upper = widen_up(best_upper);
            // rounding in the exact branch can leave the endpoints crossed by an ulp
            if (out.lower > out.upper) out.lower = out.upper;
        }
        return out;
    };

    for (std::size_t n = 1;; ++n) {
        try {
            const double nd = static_cast<double>(n);
            const LogValue un = upper_sum(n);
            out.n_used = n;
            if (un.is_zero()) return finish(BracketStatus::minus_infinity);
            best_upper = std::min(best_upper, un.log_magnitude / nd);
            if (!rule.exact) {
                const LogValue big = lower_sum(rule.fold * n);
                if (!big.is_zero()) {
                    const LogValue small = lower_sum(n);
                    const double ln = (big.log_magnitude - rule.log_constant -
                                       static_cast<double>(rule.fold - 1) * small.log_magnitude) /
                                      nd;
                    best_lower = std::max(best_lower, ln);
                }
            }
            if (widen_up(best_upper) - widen_down(best_lower) < eps) {
                return finish(BracketStatus::certified);
            }
        } catch (const BudgetExhausted& e) {
            out.note = e.what();
            if (out.n_used == n) out.n_used = n - 1;
            return finish(BracketStatus::budget_exhausted);
        }
    }
}

PressureBracket estimate_M(const FiniteMatrixMeasure& mu, double s, double eps, const EstimateOptions& options) {
    if (!(s > 0.0)) invalid_input("s must be positive");
    if (!(eps > 0.0)) invalid_input("eps must be positive");
    PressureBracket out;
    out.source = LowerBoundSource::norm_inequality;
    if (mu.empty()) {
        out.status = BracketStatus::minus_infinity;
        out.lower = out.upper = neg_inf;
        return out;
    }
    const std::size_t d = mu.dim();
    BudgetMeter meter(options.budget);
    ZeroProductReport zero;
    try {
        zero = detect_minus_infinity(mu, s, options.budget);
    } catch (const BudgetExhausted& e) {
        out.note = e.what();
        return out;
    }
    meter.charge(static_cast<double>(zero.products), d);
    if (zero) {
        out.status = BracketStatus::minus_infinity;
        out.lower = out.upper = neg_inf;
        out.n_used = d;
        out.words_evaluated = zero.products;
        out.note = "all products of length " + std::to_string(d) + " vanish";
        return out;
    }
    WordSumEngine engine(mu, options.engine);
    const Kernel k = Kernel::norm(s);
    LowerRule rule{d, log_norm_constant(d, s), k, LowerBoundSource::norm_inequality, std::nullopt};
    return bracket_loop(engine, k, rule, eps, meter);
}

PressureBracket p_radius(const FiniteMatrixMeasure& mu, double p, double eps, const EstimateOptions& options) {
    if (!(p >= 1.0)) invalid_input("p-radius needs p >= 1");
    if (mu.empty() || !mu.has_unit_weights()) invalid_input("p-radius needs unit-weight atoms");
    PressureBracket b = estimate_M(mu, p, eps, options);
    const double log_n = std::log(static_cast<double>(mu.size()));
    auto map = [&](double x) {
        if (x == neg_inf) return 0.0;
        if (x == pos_inf) return pos_inf;
        return std::exp((x - log_n) / p);
    };
    b.lower = map(b.lower);
    b.upper = map(b.upper);
    return b;
}

}  // namespace matpress
