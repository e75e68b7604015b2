#pragma once

// Finitely supported matrix measures mu = sum_i w_i delta_{A_i}, the word
// sums that realise integrals against the product measures mu_n, and the
// derived measures (lifted, hat, invertible part, rescaled).

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "matpress/linalg.hpp"

namespace matpress {

struct Atom {
    double weight;
    Matrix matrix;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// A finitely supported measure on d x d real matrices. Weights are strictly
/// positive. The empty-support sentinel (no atoms) is produced only by the
/// restricting constructions (restrict_invertible, hat_measure_2d).
class FiniteMatrixMeasure {
public:
    FiniteMatrixMeasure() = default;
    FiniteMatrixMeasure(std::size_t d, std::vector<Atom> atoms);

    static FiniteMatrixMeasure empty_support(std::size_t d);
    /// Unit weight on every matrix.
    static FiniteMatrixMeasure counting(std::vector<Matrix> matrices);

    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const Atom& operator[](std::size_t i) const { return atoms_[i]; }

    double total_mass() const;
    bool has_unit_weights() const;

    friend bool operator==(const FiniteMatrixMeasure&, const FiniteMatrixMeasure&) = default;

private:
    std::size_t d_ = 0;
    std::vector<Atom> atoms_;
};

/// A non-negative quantity stored as its natural logarithm; -inf is zero.
struct LogValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();

    static LogValue zero() { return {}; }
    static LogValue of(double value);

    bool is_zero() const noexcept { return log_magnitude == -std::numeric_limits<double>::infinity(); }
    double value() const;
};

/// Streaming log-sum-exp. Terms are buffered in fixed-size blocks; each block
/// is summed after shifting by its maximum, and block sums are folded into a
/// running (max, sum) pair with Neumaier compensation.
class LogSumAccumulator {
public:
    void add(double log_term);
    void merge(const LogSumAccumulator& other);
    LogValue result() const;

private:
    static constexpr std::size_t block = 256;

    struct Running {
        double max = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        double comp = 0.0;
        void absorb(double block_max, double block_sum);
    };

    Running folded() const;

    std::vector<double> pending_;
    Running run_;
};

struct WordBudget {
    std::size_t max_word_length = 1024;
    std::uint64_t max_words = 10'000'000;
    double wall_clock_cap = 120.0;  // seconds
};

/// Shared consumption counter for one top-level computation.
class BudgetMeter {
public:
    explicit BudgetMeter(const WordBudget& budget = {});

    const WordBudget& budget() const noexcept { return budget_; }
    std::uint64_t words_used() const noexcept { return used_.load(); }
    double elapsed_seconds() const;
    bool expired() const;

    /// Throws BudgetExhausted (without consuming) if `words` would overrun.
    void charge(double words, std::size_t word_length);
    void check_length(std::size_t word_length) const;
    void check_clock(std::size_t word_length) const;

private:
    WordBudget budget_;
    std::atomic<std::uint64_t> used_{0};
    std::chrono::steady_clock::time_point start_;
};

/// Integrand of a word sum.
struct Kernel {
    enum class Kind { norm, phi };
    Kind kind = Kind::norm;
    double s = 1.0;

    static Kernel norm(double s);
    static Kernel phi(double s);

    /// log of the kernel at 2^scale_exp * a, where a is a stored product.
    double log_eval(std::span<const double> a, std::size_t d, std::int64_t scale_exp) const;
};

/// Zero guard: a renormalised product with sigma_1 at or below this is zero.
inline constexpr double tau_zero = 1e-300;
/// Atoms with |det A| <= tau_det * ||A||^d are treated as singular.
inline constexpr double tau_det = 1e-12;

bool numerically_singular(const Matrix& a);

struct EngineOptions {
    unsigned workers = 1;
    /// Upper bound on stored doubles per cached product level.
    std::size_t level_entry_cap = std::size_t{1} << 18;
};

struct WordExtremum {
    double log_value = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> word;  // atom indices, left to right
};

/// Evaluates sums and maxima over all words of a given length.
///
/// Products are organised in levels: level j is mu_j stored as a list of
/// distinct products (bitwise after exact power-of-two renormalisation) with
/// merged log-weights. Levels are extended on demand while they fit the entry
/// cap. Longer words are enumerated depth-first over blocks drawn from the
/// cached levels, one multiply per tree node, with the top of the tree split
/// across workers and partial sums combined in a fixed order.
///
/// Not thread-safe; one engine per driver.
class WordSumEngine {
public:
    explicit WordSumEngine(const FiniteMatrixMeasure& mu, EngineOptions options = {});
    ~WordSumEngine();
    WordSumEngine(WordSumEngine&&) noexcept;
    WordSumEngine& operator=(WordSumEngine&&) noexcept;

    const FiniteMatrixMeasure& measure() const noexcept;

    /// log of sum over words w of length n of weight(w) * kernel(A_w).
    LogValue sum(std::size_t n, const Kernel& kernel, BudgetMeter& meter);

    /// max over words of length n of log_fn(A_w); weights ignored.
    /// `log_fn` receives a stored product and its power-of-two exponent.
    using LeafFn = std::function<double(std::span<const double>, std::size_t, std::int64_t)>;
    WordExtremum maximum(std::size_t n, const LeafFn& log_fn, BudgetMeter& meter);

    std::size_t cached_levels() const noexcept;
    std::size_t level_size(std::size_t n) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

LogValue weighted_power_sum(const FiniteMatrixMeasure& mu, std::size_t n, const Kernel& kernel,
                            const WordBudget& budget = {}, EngineOptions options = {});

/// d = 2, 1 < s < 2: weights multiplied by |det A|^{s-1}; singular atoms dropped.
FiniteMatrixMeasure hat_measure_2d(const FiniteMatrixMeasure& mu, double s);

/// Pushes every atom through lift(., k, p, q); throws dimension_cap_exceeded
/// when the lifted dimension exceeds `dim_cap`.
FiniteMatrixMeasure lifted_measure(const FiniteMatrixMeasure& mu, std::size_t k, std::size_t p,
                                   std::size_t q, std::size_t dim_cap = 256);

/// Drops numerically singular atoms.
FiniteMatrixMeasure restrict_invertible(const FiniteMatrixMeasure& mu);

/// Multiplies every matrix by c > 0; weights unchanged.
FiniteMatrixMeasure scale_measure(const FiniteMatrixMeasure& mu, double c);

}  // namespace matpress
