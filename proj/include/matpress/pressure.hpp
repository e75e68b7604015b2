#pragma once

// Certified brackets for the norm pressure
//   M(mu, s) = lim (1/n) log sum_{|w|=n} weight(w) ||A_w||^s
// and the p-radius. The upper bound at word length n is the subadditive
// average; the lower bound comes from the a priori inequality
//   S_{dn} <= K_{d,s} e^{n M} S_n^{d-1},   K_{d,s} = d^{2+(d+1)s} max(d^{1-s}, 1).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "matpress/measure.hpp"

namespace matpress {

enum class BracketStatus { certified, minus_infinity, budget_exhausted };

/// Which inequality produced a lower bound.
enum class LowerBoundSource { none, norm_inequality, planar_inequality, lift_inequality, determinant_formula };

const char* to_string(BracketStatus status);
const char* to_string(LowerBoundSource source);

struct PressureBracket {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    std::size_t n_used = 0;
    BracketStatus status = BracketStatus::budget_exhausted;
    LowerBoundSource source = LowerBoundSource::none;
    std::uint64_t words_evaluated = 0;
    std::string note;

    double width() const;
    bool contains(double x) const { return lower <= x && x <= upper; }
};

/// Relative widening applied to each reported endpoint to absorb rounding.
inline constexpr double endpoint_slack = 1e-9;
double widen_down(double x);
double widen_up(double x);

double log_norm_constant(std::size_t d, double s);
double norm_constant(std::size_t d, double s);

/// (1/n) log S_n(s); -inf when every length-n word vanishes.
double upper_M(WordSumEngine& engine, double s, std::size_t n, BudgetMeter& meter);
double upper_M(const FiniteMatrixMeasure& mu, double s, std::size_t n, const WordBudget& budget = {});

/// (1/n) [log S_{nd} - log K_{d,s} - (d-1) log S_n].
double lower_M(WordSumEngine& engine, double s, std::size_t n, BudgetMeter& meter);
double lower_M(const FiniteMatrixMeasure& mu, double s, std::size_t n, const WordBudget& budget = {});

struct ZeroProductReport {
    bool minus_infinity = false;
    double max_norm = 0.0;  // largest ||A_w|| over words of length d
    std::uint64_t products = 0;
    explicit operator bool() const { return minus_infinity; }
};

/// M(mu, s) = -inf exactly when every product of length d vanishes
/// (operator norm <= tau_zero). Enumerates all N^d words.
ZeroProductReport detect_minus_infinity(const FiniteMatrixMeasure& mu, double s,
                                        const WordBudget& budget = {});

/// Lower-bound rule for the generic bracket loop:
///   L_n = (1/n) [log T_{fold n} - log_constant - (fold-1) log T_n]
/// where T is the word sum of `kernel`. A rule with `exact` set reports that
/// constant instead.
struct LowerRule {
    std::size_t fold = 1;
    double log_constant = 0.0;
    Kernel kernel;
    LowerBoundSource source = LowerBoundSource::none;
    std::optional<double> exact;
};

/// One evaluation of a lower-bound rule at word length n.
double lower_bound(WordSumEngine& engine, const LowerRule& rule, std::size_t n, BudgetMeter& meter);

/// Iterates n = 1, 2, ... keeping the running max of lower bounds and min of
/// upper bounds until the widened bracket is narrower than eps.
PressureBracket bracket_loop(WordSumEngine& engine, const Kernel& upper_kernel, const LowerRule& rule,
                             double eps, BudgetMeter& meter);

struct EstimateOptions {
    WordBudget budget;
    EngineOptions engine;
};

PressureBracket estimate_M(const FiniteMatrixMeasure& mu, double s, double eps,
                           const EstimateOptions& options = {});

/// Bracket on the p-radius of N unit-weight atoms, via
/// rho_p = N^{-1/p} exp(M(mu, p) / p).
PressureBracket p_radius(const FiniteMatrixMeasure& mu, double p, double eps,
                         const EstimateOptions& options = {});

}  // namespace matpress
