#include "matpress/svpressure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "matpress/error.hpp"

namespace matpress {

namespace {
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_rational(const std::string& text) {
    throw Error(ErrorKind::parse_error, "cannot parse exponent '" + text + "' as a rational");
}

std::int64_t parse_int(const std::string& text, const std::string& whole) {
    const std::string t = trim(text);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) bad_rational(whole);
    return v;
}
}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d <= 0) invalid_input("rational needs a positive denominator");
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    num = n / (g ? g : 1);
    den = d / (g ? g : 1);
}

std::optional<Rational> Rational::recognise(double x, std::int64_t max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    for (std::int64_t q = 1; q <= max_den; ++q) {
        const double pq = std::round(x * static_cast<double>(q));
        if (std::abs(pq / static_cast<double>(q) - x) <= tol * std::max(1.0, std::abs(x))) {
            return Rational(static_cast<std::int64_t>(pq), q);
        }
    }
    return std::nullopt;
}

Rational Rational::parse(const std::string& text, std::int64_t max_den) {
    const std::string t = trim(text);
    if (t.empty()) bad_rational(text);
    if (const auto plus = t.find('+'); plus != std::string::npos && plus > 0) {
        const std::int64_t whole = parse_int(t.substr(0, plus), text);
        const Rational frac = parse(t.substr(plus + 1), max_den);
        return Rational(whole * frac.den + frac.num, frac.den);
    }
    if (const auto slash = t.find('/'); slash != std::string::npos) {
        const std::int64_t p = parse_int(t.substr(0, slash), text);
        const std::int64_t q = parse_int(t.substr(slash + 1), text);
        if (q <= 0) bad_rational(text);
        return Rational(p, q);
    }
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc{} || ptr != t.data() + t.size()) bad_rational(text);
    const auto r = recognise(x, max_den);
    if (!r) bad_rational(text);
    return *r;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

double log_k_tilde(double s) {
    if (!(s > 0.0)) invalid_input("s must be positive");
    if (s <= 1.0) return (3.0 + 2.0 * s) * std::numbers::ln2;
    if (s < 2.0) return (7.0 - 2.0 * s) * std::numbers::ln2;
    return 0.0;
}

double k_tilde(double s) { return std::exp(log_k_tilde(s)); }

LiftSpec flight_params(std::size_t d, Rational s, std::size_t dim_cap) {
    if (s.num <= 0) invalid_input("s must be positive");
    const std::int64_t k = s.whole();
    const std::int64_t p = s.num - k * s.den;
    const std::int64_t q = s.den;
    if (k <= 0 || static_cast<std::size_t>(k) >= d) {
        invalid_input("lift needs 0 < floor(s) < d (s=" + s.str() + ", d=" + std::to_string(d) + ")");
    }
    LiftSpec spec;
    spec.k = static_cast<std::size_t>(k);
    spec.p = static_cast<std::size_t>(p);
    spec.q = static_cast<std::size_t>(q);
    const double lo = static_cast<double>(binomial(d, spec.k));
    const double hi = static_cast<double>(binomial(d, spec.k + 1));
    const double dp = std::pow(lo, static_cast<double>(q - p)) * std::pow(hi, static_cast<double>(p));
    if (dp > static_cast<double>(dim_cap)) {
        throw Error(ErrorKind::dimension_cap_exceeded,
                    "lift for s=" + s.str() + " in dimension " + std::to_string(d) + " has dimension " +
                        std::to_string(static_cast<long double>(dp)) + " above cap " + std::to_string(dim_cap));
    }
    spec.d_prime = lift_dimension(d, spec.k, spec.p, spec.q);
    const double dpr = static_cast<double>(spec.d_prime);
    const double qd = static_cast<double>(q);
    spec.log_K = (2.0 + (dpr + 1.0) / qd) * std::log(dpr) + ((qd - 1.0) / qd) * std::log(dpr + 1.0);
    spec.K = std::exp(spec.log_K);
    return spec;
}

double upper_P(WordSumEngine& engine, double s, std::size_t n, BudgetMeter& meter) {
    return engine.sum(n, Kernel::phi(s), meter).log_magnitude / static_cast<double>(n);
}

double upper_P(const FiniteMatrixMeasure& mu, double s, std::size_t n, const WordBudget& budget) {
    WordSumEngine engine(mu);
    BudgetMeter meter(budget);
    return upper_P(engine, s, n, meter);
}

namespace {

double folded_lower(WordSumEngine& engine, const Kernel& k, std::size_t fold, double log_constant,
                    std::size_t n, BudgetMeter& meter) {
    const LogValue big = engine.sum(fold * n, k, meter);
    if (big.is_zero()) return neg_inf;
    const LogValue small = engine.sum(n, k, meter);
    return (big.log_magnitude - log_constant - static_cast<double>(fold - 1) * small.log_magnitude) /
           static_cast<double>(n);
}

}  // namespace

double lower_P_2d(WordSumEngine& engine, double s, std::size_t n, BudgetMeter& meter) {
    if (engine.measure().dim() != 2) invalid_input("planar lower bound needs d = 2");
    return folded_lower(engine, Kernel::phi(s), 2, log_k_tilde(s), n, meter);
}

double lower_P_2d(const FiniteMatrixMeasure& mu, double s, std::size_t n, const WordBudget& budget) {
    WordSumEngine engine(mu);
    BudgetMeter meter(budget);
    return lower_P_2d(engine, s, n, meter);
}

double lower_P_lift(WordSumEngine& engine, Rational s, std::size_t n, BudgetMeter& meter, std::size_t dim_cap) {
    const LiftSpec spec = flight_params(engine.measure().dim(), s, dim_cap);
    return folded_lower(engine, Kernel::phi(s.value()), spec.d_prime, spec.log_K, n, meter);
}

double lower_P_lift(const FiniteMatrixMeasure& mu, Rational s, std::size_t n, const WordBudget& budget,
                    std::size_t dim_cap) {
    WordSumEngine engine(mu);
    BudgetMeter meter(budget);
    return lower_P_lift(engine, s, n, meter, dim_cap);
}

double det_pressure(const FiniteMatrixMeasure& mu, double s) {
    const double d = static_cast<double>(mu.dim());
    if (!(s >= d)) invalid_input("determinant formula needs s >= d");
    LogSumAccumulator acc;
    for (const Atom& a : mu.atoms()) {
        const double det = std::abs(determinant(a.matrix));
        if (det == 0.0) continue;
        acc.add(std::log(a.weight) + s / d * std::log(det));
    }
    return acc.result().log_magnitude;
}

LowerRule sv_lower_rule(std::size_t d, double s, std::optional<Rational> exact_s, std::size_t dim_cap) {
    const Kernel k = Kernel::phi(s);
    if (d == 2 && s < 2.0) return {2, log_k_tilde(s), k, LowerBoundSource::planar_inequality, std::nullopt};
    if (s <= 1.0) return {d, log_norm_constant(d, s), k, LowerBoundSource::norm_inequality, std::nullopt};
    if (!exact_s) invalid_input("lift lower bound needs a rational exponent");
    const LiftSpec spec = flight_params(d, *exact_s, dim_cap);
    return {spec.d_prime, spec.log_K, k, LowerBoundSource::lift_inequality, std::nullopt};
}

namespace {

PressureBracket minus_infinity_bracket(LowerBoundSource src) {
    PressureBracket b;
    b.lower = b.upper = neg_inf;
    b.status = BracketStatus::minus_infinity;
    b.source = src;
    return b;
}

PressureBracket exact_det_bracket(const FiniteMatrixMeasure& mu, double s) {
    const double v = det_pressure(mu, s);
    if (v == neg_inf) return minus_infinity_bracket(LowerBoundSource::determinant_formula);
    PressureBracket b;
    b.lower = b.upper = v;
    b.n_used = 1;
    b.status = BracketStatus::certified;
    b.source = LowerBoundSource::determinant_formula;
    return b;
}

// Smallest rational above s with denominator <= q_cap whose lift fits the
// dimension cap; s+ >= d falls back to the exact determinant value at d.
LowerRule sandwich_rule(const FiniteMatrixMeasure& mu, double s, const SvOptions& opt, std::string& note) {
    const std::size_t d = mu.dim();
    std::vector<Rational> cands;
    for (std::size_t q = 1; q <= opt.q_cap; ++q) {
        const auto qq = static_cast<std::int64_t>(q);
        const auto p = static_cast<std::int64_t>(std::floor(s * static_cast<double>(q))) + 1;
        cands.emplace_back(p, qq);
    }
    std::sort(cands.begin(), cands.end(),
              [](const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; });
    for (const Rational& r : cands) {
        if (r.value() >= static_cast<double>(d)) break;
        try {
            LowerRule rule = sv_lower_rule(d, r.value(), r, opt.dim_cap);
            note = "lower bound evaluated at s+ = " + r.str();
            return rule;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::dimension_cap_exceeded) throw;
        }
    }
    note = "lower bound from the determinant value at s+ = " + std::to_string(d);
    LowerRule rule;
    rule.kernel = Kernel::phi(s);
    rule.source = LowerBoundSource::determinant_formula;
    rule.exact = det_pressure(mu, static_cast<double>(d));
    return rule;
}

PressureBracket estimate_P_impl(const FiniteMatrixMeasure& mu, double s, std::optional<Rational> exact,
                                double eps, const SvOptions& opt) {
    if (!(s > 0.0)) invalid_input("s must be positive");
    if (!(eps > 0.0)) invalid_input("eps must be positive");
    const std::size_t d = mu.dim();
    if (mu.empty()) return minus_infinity_bracket(LowerBoundSource::none);
    if (s >= static_cast<double>(d)) return exact_det_bracket(mu, s);

    const Kernel upper = Kernel::phi(s);
    std::string note;
    LowerRule rule;
    if (d == 2 || s <= 1.0 || exact) {
        rule = sv_lower_rule(d, s, exact, opt.dim_cap);
    } else {
        rule = sandwich_rule(mu, s, opt, note);
    }
    WordSumEngine engine(mu, opt.engine);
    BudgetMeter meter(opt.budget);
    PressureBracket b = bracket_loop(engine, upper, rule, eps, meter);
    if (!note.empty()) b.note = b.note.empty() ? note : note + "; " + b.note;
    return b;
}

}  // namespace

PressureBracket estimate_P(const FiniteMatrixMeasure& mu, double s, double eps, const SvOptions& options) {
    std::optional<Rational> exact;
    if (mu.dim() >= 3 && s > 1.0 && s < static_cast<double>(mu.dim())) {
        exact = Rational::recognise(s, static_cast<std::int64_t>(options.q_cap));
    }
    return estimate_P_impl(mu, s, exact, eps, options);
}

PressureBracket estimate_P(const FiniteMatrixMeasure& mu, Rational s, double eps, const SvOptions& options) {
    const double sv = s.value();
    const bool needs_lift = mu.dim() >= 3 && sv > 1.0 && sv < static_cast<double>(mu.dim());
    if (needs_lift && static_cast<std::size_t>(s.den) > options.q_cap) {
        throw Error(ErrorKind::dimension_cap_exceeded,
                    "denominator of s=" + s.str() + " exceeds q cap " + std::to_string(options.q_cap));
    }
    return estimate_P_impl(mu, sv, needs_lift ? std::optional<Rational>(s) : std::nullopt, eps, options);
}

const char* to_string(Continuity c) {
    switch (c) {
        case Continuity::continuous_at_1: return "continuous_at_1";
        case Continuity::discontinuous_at_1: return "discontinuous_at_1";
        case Continuity::inconclusive: return "inconclusive";
    }
    return "unknown";
}

DiscontinuityReport discontinuity_check_2d(const FiniteMatrixMeasure& mu, double eps, const SvOptions& options) {
    if (mu.dim() != 2) invalid_input("discontinuity check is for 2x2 matrices");
    DiscontinuityReport rep;
    rep.full = estimate_P(mu, 1.0, eps, options);
    const FiniteMatrixMeasure inv = restrict_invertible(mu);
    rep.invertible = inv.empty() ? minus_infinity_bracket(LowerBoundSource::none) : estimate_P(inv, 1.0, eps, options);

    auto settled = [](const PressureBracket& b) {
        return b.status == BracketStatus::certified || b.status == BracketStatus::minus_infinity;
    };
    if (rep.full.lower > rep.invertible.upper) {
        rep.verdict = Continuity::discontinuous_at_1;
    } else if (settled(rep.full) && settled(rep.invertible)) {
        rep.verdict = Continuity::continuous_at_1;
    } else {
        rep.verdict = Continuity::inconclusive;
    }
    return rep;
}

}  // namespace matpress
