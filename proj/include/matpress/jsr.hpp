#pragma once

// Joint spectral radius brackets and the zero-temperature scan
//   e^{M(mu,s)/s} -> rho_inf(supp mu)  as s -> infinity.

#include <cstddef>
#include <vector>

#include "matpress/pressure.hpp"

namespace matpress {

/// A non-empty finite set of d x d matrices.
class MatrixSet {
public:
    explicit MatrixSet(std::vector<Matrix> matrices);
    static MatrixSet support_of(const FiniteMatrixMeasure& mu);

    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return matrices_.size(); }
    const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
    /// Unit weight on each matrix.
    FiniteMatrixMeasure as_measure() const;

private:
    std::size_t d_ = 0;
    std::vector<Matrix> matrices_;
};

struct JsrBound {
    double value = 0.0;
    std::vector<std::size_t> word;  // achieving word, empty when every product vanishes
};

/// max over |w| = n of ||A_w||^{1/n}.
JsrBound jsr_upper(WordSumEngine& engine, std::size_t n, BudgetMeter& meter);
JsrBound jsr_upper(const MatrixSet& set, std::size_t n, const WordBudget& budget = {});

/// (max_{|w|=nd} ||A_w|| / (d^{d+1} (max_{|w|=n} ||A_w||)^{d-1}))^{1/n}.
double jsr_lower_bochi(WordSumEngine& engine, std::size_t n, BudgetMeter& meter);
double jsr_lower_bochi(const MatrixSet& set, std::size_t n, const WordBudget& budget = {});

/// max over |w| = n of rho(A_w)^{1/n}, shrunk by a relative 1e-9 to cover
/// the eigensolver error. Standard theory, not part of
/// the Bochi machinery; reported separately.
double jsr_spectral_floor(WordSumEngine& engine, std::size_t n, BudgetMeter& meter);

struct JsrOptions {
    WordBudget budget;
    EngineOptions engine;
    bool spectral_floor = true;
};

/// Interval [max lower, min upper] over n = 1, 2, ... on rho_inf, stopping
/// once the widened width is at most eps.
PressureBracket jsr_bracket(const MatrixSet& set, double eps, const JsrOptions& options = {});

struct ScanRow {
    double s = 0.0;
    PressureBracket bracket;  // on M(mu, s)
    double exp_lower = 0.0;   // e^{lower/s}
    double exp_upper = 0.0;   // e^{upper/s}
};

struct ScanResult {
    std::vector<ScanRow> rows;
    PressureBracket jsr;
};

std::vector<double> default_scan_grid();

/// eps is the width target for each M bracket; jsr_eps for the support's
/// jsr_bracket.
ScanResult zero_temperature_scan(const FiniteMatrixMeasure& mu, const std::vector<double>& s_list, double eps,
                                 const EstimateOptions& options = {}, double jsr_eps = 1e-2);

}  // namespace matpress
