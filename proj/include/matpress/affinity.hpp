#pragma once

// Certified bracketing of the affinity dimension
//   s(A_1..A_N) = inf { s > 0 : P(mu, s) < 0 }
// for contracting families (every ||A_i|| < 1).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "matpress/svpressure.hpp"

namespace matpress {

/// True iff sum_i w_i |det A_i| >= 1, i.e. the dimension is at least d.
bool check_geq_d(const FiniteMatrixMeasure& mu);

/// Root s >= d of sum_i w_i |det A_i|^{s/d} = 1 by bisection, returned as
/// [lo, hi] with hi - lo <= tol. Needs check_geq_d and every |det A_i| < 1.
std::pair<double, double> solve_det_dimension_interval(const FiniteMatrixMeasure& mu, double tol);
double solve_det_dimension(const FiniteMatrixMeasure& mu, double tol);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

struct AffinityOptions {
    WordBudget budget;
    EngineOptions engine;
    /// Largest denominator of the test points in dimension >= 3.
    std::size_t q_cap = 6;
    std::size_t dim_cap = 256;
};

/// Which test settled a refinement.
struct TrisectOutcome {
    Interval next;
    double t = 0.0;          // the point whose sign was decided
    std::size_t n = 0;       // word length at which the test fired
    bool pressure_negative;  // true: upper test fired, P(t) < 0
};

/// One refinement of an interval known to contain the dimension. The two
/// test points are the interior thirds (snapped to small-denominator
/// rationals when d >= 3). For n = 1, 2, ... each point gets an upper test
/// (Phi_n(t) < 1 gives P(t) < 0) and a lower test (the a priori lower bound
/// is > 0 gives P(t) > 0). Returns nullopt when every test runs out of budget.
std::optional<TrisectOutcome> trisect_step(Interval current, WordSumEngine& engine, BudgetMeter& meter,
                                           const AffinityOptions& options);

enum class AffinityBranch { trisection, determinant };
const char* to_string(AffinityBranch b);

struct AffinityResult {
    Interval interval;
    AffinityBranch branch = AffinityBranch::trisection;
    std::size_t steps = 0;
    BracketStatus status = BracketStatus::budget_exhausted;
    std::uint64_t words_evaluated = 0;
    std::string note;
};

AffinityResult affinity_dimension(const FiniteMatrixMeasure& mu, double eps, const AffinityOptions& options = {});

}  // namespace matpress
