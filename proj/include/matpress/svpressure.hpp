#pragma once

// Certified brackets for the singular value pressure
//   P(mu, s) = lim (1/n) log sum_{|w|=n} weight(w) phi^s(A_w).
//
// Lower bounds by regime:
//   s >= d          exact: log sum_i w_i |det A_i|^{s/d}
//   d = 2, s < 2    Phi_{2n} <= Kt_s e^{nP} Phi_n
//   s <= 1          phi^s = ||.||^s, so the norm-pressure inequality applies
//   s = k + p/q     Phi_{d' n} <= K e^{nP} Phi_n^{d'-1} through the exterior lift
// Irrational s in dimension >= 3 is sandwiched by a rational s+ >= s.

#include <cstddef>
#include <cstdint>
#include <string>

#include "matpress/pressure.hpp"

namespace matpress {

/// A non-negative rational num/den in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    /// Accepts "7", "3/2", "1+1/2" and decimal literals such as "1.5".
    /// Decimals are converted exactly only when they equal a fraction with
    /// denominator <= max_den; otherwise parsing fails.
    static Rational parse(const std::string& text, std::int64_t max_den = 1'000'000);
    /// Nearest fraction with denominator <= max_den within `tol` of x, if any.
    static std::optional<Rational> recognise(double x, std::int64_t max_den, double tol = 1e-12);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::int64_t whole() const { return num / den; }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

double k_tilde(double s);
double log_k_tilde(double s);

/// Parameters of the exterior lift for s = k + p/q, 0 < k < d, s < d.
struct LiftSpec {
    std::size_t k = 0, p = 0, q = 1;
    std::size_t d_prime = 0;
    double log_K = 0.0;
    double K = 0.0;  // may be +inf when d' is large; log_K stays finite
};

LiftSpec flight_params(std::size_t d, Rational s, std::size_t dim_cap = 256);

double upper_P(WordSumEngine& engine, double s, std::size_t n, BudgetMeter& meter);
double upper_P(const FiniteMatrixMeasure& mu, double s, std::size_t n, const WordBudget& budget = {});

/// (1/n) [log Phi_{2n} - log Kt_s - log Phi_n], d = 2.
double lower_P_2d(WordSumEngine& engine, double s, std::size_t n, BudgetMeter& meter);
double lower_P_2d(const FiniteMatrixMeasure& mu, double s, std::size_t n, const WordBudget& budget = {});

/// (1/n) [log Phi_{d' n} - log K - (d'-1) log Phi_n], evaluated on phi-sums
/// of the original measure.
double lower_P_lift(WordSumEngine& engine, Rational s, std::size_t n, BudgetMeter& meter,
                    std::size_t dim_cap = 256);
double lower_P_lift(const FiniteMatrixMeasure& mu, Rational s, std::size_t n, const WordBudget& budget = {},
                    std::size_t dim_cap = 256);

/// log sum_i w_i |det A_i|^{s/d}, valid as P(mu, s) for s >= d.
double det_pressure(const FiniteMatrixMeasure& mu, double s);

/// Lower-bound rule used at exponent s (rational when `exact_s` is given).
LowerRule sv_lower_rule(std::size_t d, double s, std::optional<Rational> exact_s, std::size_t dim_cap);

struct SvOptions {
    WordBudget budget;
    EngineOptions engine;
    std::size_t q_cap = 6;
    std::size_t dim_cap = 256;
};

PressureBracket estimate_P(const FiniteMatrixMeasure& mu, double s, double eps, const SvOptions& options = {});
PressureBracket estimate_P(const FiniteMatrixMeasure& mu, Rational s, double eps, const SvOptions& options = {});

enum class Continuity { continuous_at_1, discontinuous_at_1, inconclusive };
const char* to_string(Continuity c);

struct DiscontinuityReport {
    Continuity verdict = Continuity::inconclusive;
    PressureBracket full;        // P(mu, 1)
    PressureBracket invertible;  // P(mu^0, 1)
};

/// Compares P(mu, 1) with P(mu^0, 1) where mu^0 keeps the invertible atoms.
DiscontinuityReport discontinuity_check_2d(const FiniteMatrixMeasure& mu, double eps,
                                           const SvOptions& options = {});

}  // namespace matpress
