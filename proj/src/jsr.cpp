#include "matpress/jsr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "matpress/error.hpp"

namespace matpress {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double log_norm_leaf(std::span<const double> a, std::size_t d, std::int64_t e) {
    const double n = operator_norm(a, d);
    if (n == 0.0) return neg_inf;
    return std::log(n) + static_cast<double>(e) * std::numbers::ln2;
}

// Largest eigenvalue modulus from a Hessenberg QR eigensolve. The squaring
// estimate in spectral_radius approaches rho from above, so it cannot serve
// as a floor.
double log_rho_leaf(std::span<const double> a, std::size_t d, std::int64_t e) {
    const auto n = static_cast<Eigen::Index>(d);
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(a.data(), n, n);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    if (es.info() != Eigen::Success) return neg_inf;
    const double r = es.eigenvalues().cwiseAbs().maxCoeff();
    if (!(r > 0.0) || !std::isfinite(r)) return neg_inf;
    return std::log(r) + static_cast<double>(e) * std::numbers::ln2;
}

double root(double log_v, std::size_t n) {
    if (log_v == neg_inf) return 0.0;
    return std::exp(log_v / static_cast<double>(n));
}

}  // namespace

MatrixSet::MatrixSet(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
    if (matrices_.empty()) invalid_input("matrix set must be non-empty");
    d_ = matrices_.front().dim();
    for (const Matrix& m : matrices_) {
        if (m.dim() != d_) invalid_input("matrices in a set must share a dimension");
        if (!m.all_finite()) invalid_input("matrix entries must be finite");
    }
}

MatrixSet MatrixSet::support_of(const FiniteMatrixMeasure& mu) {
    std::vector<Matrix> ms;
    ms.reserve(mu.size());
    for (const Atom& a : mu.atoms()) ms.push_back(a.matrix);
    return MatrixSet(std::move(ms));
}

FiniteMatrixMeasure MatrixSet::as_measure() const { return FiniteMatrixMeasure::counting(matrices_); }

JsrBound jsr_upper(WordSumEngine& engine, std::size_t n, BudgetMeter& meter) {
    const WordExtremum ex = engine.maximum(n, log_norm_leaf, meter);
    JsrBound out;
    out.value = root(ex.log_value, n);
    if (ex.log_value != neg_inf) out.word = ex.word;
    return out;
}

JsrBound jsr_upper(const MatrixSet& set, std::size_t n, const WordBudget& budget) {
    WordSumEngine engine(set.as_measure());
    BudgetMeter meter(budget);
    return jsr_upper(engine, n, meter);
}

double jsr_lower_bochi(WordSumEngine& engine, std::size_t n, BudgetMeter& meter) {
    const std::size_t d = engine.measure().dim();
    const double big = engine.maximum(n * d, log_norm_leaf, meter).log_value;
    if (big == neg_inf) return 0.0;
    const double small = engine.maximum(n, log_norm_leaf, meter).log_value;
    const double dd = static_cast<double>(d);
    const double log_c = (dd + 1.0) * std::log(dd);
    return std::exp((big - log_c - (dd - 1.0) * small) / static_cast<double>(n));
}

double jsr_lower_bochi(const MatrixSet& set, std::size_t n, const WordBudget& budget) {
    WordSumEngine engine(set.as_measure());
    BudgetMeter meter(budget);
    return jsr_lower_bochi(engine, n, meter);
}

double jsr_spectral_floor(WordSumEngine& engine, std::size_t n, BudgetMeter& meter) {
    const WordExtremum ex = engine.maximum(n, log_rho_leaf, meter);
    return root(ex.log_value, n) * (1.0 - 1e-9);
}

PressureBracket jsr_bracket(const MatrixSet& set, double eps, const JsrOptions& options) {
    if (!(eps > 0.0)) invalid_input("eps must be positive");
    WordSumEngine engine(set.as_measure(), options.engine);
    BudgetMeter meter(options.budget);
    PressureBracket out;
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    auto finish = [&](BracketStatus st) {
        out.status = st;
        out.lower = std::max(0.0, widen_down(lo));
        out.upper = hi == 0.0 ? 0.0 : widen_up(hi);
        if (out.lower > out.upper) out.lower = out.upper;
        out.words_evaluated = meter.words_used();
        return out;
    };
    for (std::size_t n = 1;; ++n) {
        try {
            hi = std::min(hi, jsr_upper(engine, n, meter).value);
            out.n_used = n;
            if (hi == 0.0) {
                lo = 0.0;
                return finish(BracketStatus::certified);
            }
            if (options.spectral_floor) lo = std::max(lo, jsr_spectral_floor(engine, n, meter));
            lo = std::max(lo, jsr_lower_bochi(engine, n, meter));
        } catch (const BudgetExhausted& e) {
            out.note = e.what();
            return finish(BracketStatus::budget_exhausted);
        }
        if (widen_up(hi) - std::max(0.0, widen_down(lo)) <= eps) return finish(BracketStatus::certified);
    }
}

std::vector<double> default_scan_grid() { return {1, 2, 4, 8, 16, 32, 64}; }

ScanResult zero_temperature_scan(const FiniteMatrixMeasure& mu, const std::vector<double>& s_list, double eps,
                                 const EstimateOptions& options, double jsr_eps) {
    if (s_list.empty()) invalid_input("scan needs at least one exponent");
    for (std::size_t i = 0; i < s_list.size(); ++i) {
        if (!(s_list[i] > 0.0)) invalid_input("scan exponents must be positive");
        if (i > 0 && !(s_list[i] > s_list[i - 1])) invalid_input("scan exponents must be increasing");
    }
    ScanResult out;
    for (double s : s_list) {
        ScanRow row;
        row.s = s;
        row.bracket = estimate_M(mu, s, eps, options);
        auto ex = [&](double x) { return x == neg_inf ? 0.0 : std::exp(x / s); };
        row.exp_lower = ex(row.bracket.lower);
        row.exp_upper = ex(row.bracket.upper);
        out.rows.push_back(std::move(row));
    }
    JsrOptions jo;
    jo.budget = options.budget;
    jo.engine = options.engine;
    out.jsr = jsr_bracket(MatrixSet::support_of(mu), jsr_eps, jo);
    return out;
}

}  // namespace matpress
