#include "matpress/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "matpress/error.hpp"

namespace matpress {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::tolerance_not_met: return "tolerance-not-met";
        case ErrorKind::budget_exhausted: return "budget-exhausted";
        case ErrorKind::dimension_cap_exceeded: return "dimension-cap-exceeded";
        case ErrorKind::parse_error: return "parse-error";
    }
    return "unknown";
}

Matrix::Matrix(std::size_t d) : d_(d), a_(d * d, 0.0) {}

Matrix::Matrix(std::size_t d, std::vector<double> entries) : d_(d), a_(std::move(entries)) {
    if (a_.size() != d * d) {
        invalid_input("matrix of dimension " + std::to_string(d) + " needs " +
                      std::to_string(d * d) + " entries, got " + std::to_string(a_.size()));
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : d_(rows.size()) {
    a_.reserve(d_ * d_);
    for (const auto& row : rows) {
        if (row.size() != d_) invalid_input("matrix rows must all have length " + std::to_string(d_));
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t d) { return scalar(d, 1.0); }

Matrix Matrix::scalar(std::size_t d, double c) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = c;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> diag) {
    return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(a_.begin(), a_.end(), [](double x) { return x == 0.0; });
}

Matrix& Matrix::operator*=(double c) {
    for (double& x : a_) x *= c;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) invalid_input("matrix product of mismatched dimensions");
    Matrix c(a.dim());
    multiply_into(a.entries(), b.entries(), c.entries(), a.dim());
    return c;
}

void multiply_into(std::span<const double> a, std::span<const double> b,
                   std::span<double> c, std::size_t d) noexcept {
    for (std::size_t i = 0; i < d; ++i) {
        double* ci = c.data() + i * d;
        std::fill(ci, ci + d, 0.0);
        for (std::size_t l = 0; l < d; ++l) {
            const double ail = a[i * d + l];
            if (ail == 0.0) continue;
            const double* bl = b.data() + l * d;
            for (std::size_t j = 0; j < d; ++j) ci[j] += ail * bl[j];
        }
    }
}

double SingularSpectrum::product() const {
    double p = 1.0;
    for (double s : sigma) p *= s;
    return p;
}

namespace {

void require_finite(std::span<const double> a) {
    for (double x : a) {
        if (!std::isfinite(x)) invalid_input("matrix has non-finite entries");
    }
}

// Closed form for 2x2: sigma_{1,2} = (h1 +- h2) / 2 with
// h1 = |(a+d, c-b)|, h2 = |(a-d, b+c)|. The small one is recovered from
// |det| / sigma_1 to keep relative accuracy.
SingularSpectrum singular_values_2x2(std::span<const double> m) {
    const double a = m[0], b = m[1], c = m[2], d = m[3];
    const double h1 = std::hypot(a + d, c - b);
    const double h2 = std::hypot(a - d, b + c);
    const double s1 = 0.5 * (h1 + h2);
    double s2 = 0.0;
    if (s1 > 0.0) s2 = std::min(s1, std::abs(a * d - b * c) / s1);
    return {{s1, s2}};
}

// One-sided (Hestenes) Jacobi: rotate column pairs of A until every pair is
// orthogonal; the column norms are then the singular values.
SingularSpectrum singular_values_jacobi(std::span<const double> m, std::size_t d) {
    std::vector<double> u(m.begin(), m.end());
    constexpr double tol = 1e-15;
    constexpr int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    const double up = u[i * d + p], uq = u[i * d + q];
                    alpha += up * up;
                    beta += uq * uq;
                    gamma += up * uq;
                }
                if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double cs = 1.0 / std::hypot(1.0, t);
                const double sn = cs * t;
                for (std::size_t i = 0; i < d; ++i) {
                    const double up = u[i * d + p], uq = u[i * d + q];
                    u[i * d + p] = cs * up - sn * uq;
                    u[i * d + q] = sn * up + cs * uq;
                }
            }
        }
        if (!rotated) break;
    }
    SingularSpectrum out;
    out.sigma.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        double ss = 0.0;
        for (std::size_t i = 0; i < d; ++i) ss += u[i * d + j] * u[i * d + j];
        out.sigma[j] = std::sqrt(std::max(ss, 0.0));
    }
    std::sort(out.sigma.begin(), out.sigma.end(), std::greater<>());
    return out;
}

double det_small(std::span<const double> a, std::size_t d) {
    switch (d) {
        case 0: return 1.0;
        case 1: return a[0];
        case 2: return a[0] * a[3] - a[1] * a[2];
        case 3:
            return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
                   a[2] * (a[3] * a[7] - a[4] * a[6]);
        default: break;
    }
    std::vector<double> lu(a.begin(), a.end());
    double det = 1.0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::abs(lu[r * d + col]) > std::abs(lu[piv * d + col])) piv = r;
        }
        if (lu[piv * d + col] == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < d; ++j) std::swap(lu[piv * d + j], lu[col * d + j]);
            det = -det;
        }
        const double pv = lu[col * d + col];
        det *= pv;
        for (std::size_t r = col + 1; r < d; ++r) {
            const double f = lu[r * d + col] / pv;
            if (f == 0.0) continue;
            for (std::size_t j = col + 1; j < d; ++j) lu[r * d + j] -= f * lu[col * d + j];
        }
    }
    return det;
}

// All sorted k-subsets of {0..d-1}, lexicographic.
std::vector<std::vector<std::size_t>> subsets(std::size_t d, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == d - k + (i - 1)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace

SingularSpectrum singular_values(std::span<const double> a, std::size_t d) {
    require_finite(a);
    if (d == 0) return {};
    if (d == 1) return {{std::abs(a[0])}};
    if (d == 2) return singular_values_2x2(a);
    return singular_values_jacobi(a, d);
}

SingularSpectrum singular_values(const Matrix& a) { return singular_values(a.entries(), a.dim()); }

double operator_norm(std::span<const double> a, std::size_t d) {
    return singular_values(a, d).largest();
}

double operator_norm(const Matrix& a) { return operator_norm(a.entries(), a.dim()); }

double determinant(std::span<const double> a, std::size_t d) {
    require_finite(a);
    return det_small(a, d);
}

double determinant(const Matrix& a) { return determinant(a.entries(), a.dim()); }

double log_phi(const SingularSpectrum& spectrum, double abs_det, double s) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    if (!(s > 0.0)) invalid_input("singular value function needs s > 0");
    const std::size_t d = spectrum.sigma.size();
    if (s >= static_cast<double>(d)) {
        if (abs_det == 0.0) return neg_inf;
        return s / static_cast<double>(d) * std::log(abs_det);
    }
    const auto k = static_cast<std::size_t>(std::floor(s));
    const double frac = s - static_cast<double>(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (spectrum.sigma[i] == 0.0) return neg_inf;
        acc += std::log(spectrum.sigma[i]);
    }
    if (frac > 0.0) {
        if (spectrum.sigma[k] == 0.0) return neg_inf;
        acc += frac * std::log(spectrum.sigma[k]);
    }
    return acc;
}

double log_phi(std::span<const double> a, std::size_t d, double s) {
    const SingularSpectrum sp = singular_values(a, d);
    const double abs_det = s >= static_cast<double>(d) ? std::abs(det_small(a, d)) : 0.0;
    return log_phi(sp, abs_det, s);
}

double phi(const Matrix& a, double s) { return std::exp(log_phi(a.entries(), a.dim(), s)); }

double spectral_radius(const Matrix& a, double rel_tol, int max_squarings) {
    require_finite(a.entries());
    const std::size_t d = a.dim();
    if (d == 0) return 0.0;
    Matrix b = a;
    Matrix tmp(d);
    double norm = operator_norm(b);
    if (norm == 0.0) return 0.0;
    b *= 1.0 / norm;
    // b = A^(2^m) / exp(log_scale)
    double log_scale = std::log(norm);
    double exponent = 1.0;
    double prev = norm;
    for (int m = 1; m <= max_squarings; ++m) {
        multiply_into(b.entries(), b.entries(), tmp.entries(), d);
        std::swap(b, tmp);
        log_scale *= 2.0;
        exponent *= 2.0;
        const double nb = operator_norm(b);
        if (nb == 0.0) return 0.0;
        b *= 1.0 / nb;
        log_scale += std::log(nb);
        const double est = std::exp(log_scale / exponent);
        if (std::abs(est - prev) <= rel_tol * est) return est;
        prev = est;
    }
    throw Error(ErrorKind::tolerance_not_met,
                "spectral radius did not stabilise within " + std::to_string(max_squarings) +
                    " squarings");
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Matrix exterior_power(const Matrix& a, std::size_t k) {
    const std::size_t d = a.dim();
    if (k < 1 || k > d) {
        invalid_input("exterior power degree " + std::to_string(k) + " outside [1, " +
                      std::to_string(d) + "]");
    }
    require_finite(a.entries());
    const auto sets = subsets(d, k);
    const std::size_t m = sets.size();
    Matrix out(m);
    std::vector<double> minor(k * k);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) minor[i * k + j] = a(sets[r][i], sets[c][j]);
            }
            out(r, c) = det_small(minor, k);
        }
    }
    return out;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    const std::size_t m = a.dim(), n = b.dim();
    Matrix out(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double aij = a(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = aij * b(k, l);
            }
        }
    }
    return out;
}

namespace {

void check_lift_params(std::size_t d, std::size_t k, std::size_t p, std::size_t q) {
    if (k == 0 || k >= d) {
        invalid_input("lift needs 0 < k < d (k=" + std::to_string(k) + ", d=" + std::to_string(d) + ")");
    }
    if (q == 0 || p >= q) invalid_input("lift needs 0 <= p < q");
    if (std::gcd(p, q) != 1) invalid_input("lift needs p/q in lowest terms");
}

}  // namespace

std::size_t lift_dimension(std::size_t d, std::size_t k, std::size_t p, std::size_t q) {
    check_lift_params(d, k, p, q);
    std::size_t out = 1;
    const std::size_t lo = binomial(d, k), hi = binomial(d, k + 1);
    for (std::size_t i = 0; i < q - p; ++i) out *= lo;
    for (std::size_t i = 0; i < p; ++i) out *= hi;
    return out;
}

Matrix lift(const Matrix& a, std::size_t k, std::size_t p, std::size_t q) {
    check_lift_params(a.dim(), k, p, q);
    const Matrix lo = exterior_power(a, k);
    Matrix out = lo;
    for (std::size_t i = 1; i < q - p; ++i) out = kronecker(out, lo);
    if (p > 0) {
        const Matrix hi = exterior_power(a, k + 1);
        for (std::size_t i = 0; i < p; ++i) out = kronecker(out, hi);
    }
    return out;
}

}  // namespace matpress
