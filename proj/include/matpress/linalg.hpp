#pragma once

// Small dense real square matrices and the singular-value machinery used by
// the pressure estimators: singular values, the singular value function,
// exterior powers, Kronecker products and the rational-exponent lift.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace matpress {

/// Square d x d real matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t d);
    Matrix(std::size_t d, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t d);
    static Matrix diagonal(std::span<const double> diag);
    static Matrix diagonal(std::initializer_list<double> diag);
    static Matrix scalar(std::size_t d, double c);

    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return a_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }

    std::span<const double> entries() const noexcept { return a_; }
    std::span<double> entries() noexcept { return a_; }

    bool all_finite() const noexcept;
    bool is_zero() const noexcept;

    Matrix& operator*=(double c);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(double c, Matrix a) { return a *= c; }
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t d_ = 0;
    std::vector<double> a_;
};

/// Singular values sorted in non-increasing order.
struct SingularSpectrum {
    std::vector<double> sigma;

    double largest() const { return sigma.empty() ? 0.0 : sigma.front(); }
    double product() const;
};

/// C = A * B for d x d row-major blocks. `c` must not alias `a` or `b`.
void multiply_into(std::span<const double> a, std::span<const double> b,
                   std::span<double> c, std::size_t d) noexcept;

SingularSpectrum singular_values(const Matrix& a);
SingularSpectrum singular_values(std::span<const double> a, std::size_t d);

double operator_norm(const Matrix& a);
double operator_norm(std::span<const double> a, std::size_t d);

double determinant(const Matrix& a);
double determinant(std::span<const double> a, std::size_t d);

/// phi^s(A) = sigma_1 ... sigma_k sigma_{k+1}^{s-k} for k <= s <= k+1 <= d,
/// and |det A|^{s/d} for s >= d.
double phi(const Matrix& a, double s);

/// log phi^s evaluated from a precomputed spectrum; -inf encodes zero.
/// `abs_det` is used on the s >= d branch.
double log_phi(const SingularSpectrum& spectrum, double abs_det, double s);
double log_phi(std::span<const double> a, std::size_t d, double s);

/// Spectral radius by repeated squaring: ||A^(2^m)||^(2^-m) until two
/// consecutive estimates agree to `rel_tol`. Throws tolerance_not_met after
/// `max_squarings` squarings.
double spectral_radius(const Matrix& a, double rel_tol = 1e-10, int max_squarings = 64);

std::size_t binomial(std::size_t n, std::size_t k);

/// k-th exterior power in the basis of sorted k-subsets (lexicographic).
Matrix exterior_power(const Matrix& a, std::size_t k);

Matrix kronecker(const Matrix& a, const Matrix& b);

/// (A^k)^{(q-p)} (x) (A^(k+1))^{p} with ^ the exterior power and (x) the
/// Kronecker product; ||lift||^{1/q} = phi^{k + p/q}(A).
Matrix lift(const Matrix& a, std::size_t k, std::size_t p, std::size_t q);

/// Dimension of lift(A, k, p, q) for A of dimension d.
std::size_t lift_dimension(std::size_t d, std::size_t k, std::size_t p, std::size_t q);

}  // namespace matpress
