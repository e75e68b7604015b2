#pragma once

// Independent oracles and random families shared by the unit tests.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "matpress/measure.hpp"

namespace oracle {

using matpress::Matrix;

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t d, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> e(d * d);
    for (double& x : e) x = u(rng);
    return Matrix(d, std::move(e));
}

inline Matrix mul(const Matrix& a, const Matrix& b) {
    const std::size_t d = a.dim();
    Matrix c(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            long double acc = 0;
            for (std::size_t k = 0; k < d; ++k) acc += static_cast<long double>(a(i, k)) * b(k, j);
            c(i, j) = static_cast<double>(acc);
        }
    return c;
}

// Eigenvalues of the symmetric A^T A by cyclic Jacobi rotations, in long
// double; singular values are their square roots, sorted descending.
inline std::vector<double> sigmas(const Matrix& a) {
    const std::size_t d = a.dim();
    std::vector<long double> s(d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) s[i * d + j] += static_cast<long double>(a(k, i)) * a(k, j);
    for (int sweep = 0; sweep < 100; ++sweep) {
        long double off = 0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) off += s[i * d + j] * s[i * d + j];
        if (off < 1e-60L) break;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) {
                const long double apq = s[p * d + q];
                if (apq == 0) continue;
                const long double theta = (s[q * d + q] - s[p * d + p]) / (2 * apq);
                const long double t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
                const long double c = 1 / std::sqrt(t * t + 1), sn = t * c;
                for (std::size_t k = 0; k < d; ++k) {
                    const long double skp = s[k * d + p], skq = s[k * d + q];
                    s[k * d + p] = c * skp - sn * skq;
                    s[k * d + q] = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const long double spk = s[p * d + k], sqk = s[q * d + k];
                    s[p * d + k] = c * spk - sn * sqk;
                    s[q * d + k] = sn * spk + c * sqk;
                }
            }
    }
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = static_cast<double>(std::sqrt(std::max<long double>(s[i * d + i], 0)));
    std::sort(out.rbegin(), out.rend());
    return out;
}

inline double norm(const Matrix& a) { return sigmas(a).front(); }

inline double phi(const Matrix& a, double s) {
    const auto sv = sigmas(a);
    const std::size_t d = a.dim();
    if (s >= static_cast<double>(d)) {
        double p = 1;
        for (double x : sv) p *= x;
        return std::pow(p, s / static_cast<double>(d));
    }
    const auto k = static_cast<std::size_t>(std::floor(s));
    double p = 1;
    for (std::size_t i = 0; i < k; ++i) p *= sv[i];
    return p * std::pow(sv[k], s - static_cast<double>(k));
}

// sum over all N^n words of weight(w) f(A_w), by plain enumeration.
inline double word_sum(const matpress::FiniteMatrixMeasure& mu, std::size_t n,
                       const std::function<double(const Matrix&)>& f) {
    double total = 0;
    std::function<void(std::size_t, const Matrix&, double)> rec = [&](std::size_t depth, const Matrix& m, double w) {
        if (depth == n) {
            total += w * f(m);
            return;
        }
        for (const auto& at : mu.atoms()) rec(depth + 1, mul(m, at.matrix), w * at.weight);
    };
    rec(0, Matrix::identity(mu.dim()), 1.0);
    return total;
}

inline double max_norm(const matpress::FiniteMatrixMeasure& mu, std::size_t n) {
    double best = 0;
    std::function<void(std::size_t, const Matrix&)> rec = [&](std::size_t depth, const Matrix& m) {
        if (depth == n) {
            best = std::max(best, norm(m));
            return;
        }
        for (const auto& at : mu.atoms()) rec(depth + 1, mul(m, at.matrix));
    };
    rec(0, Matrix::identity(mu.dim()));
    return best;
}

inline matpress::FiniteMatrixMeasure diag_pair() {
    return matpress::FiniteMatrixMeasure::counting(
        {Matrix::diagonal({0.5, 1.0 / 3.0}), Matrix::diagonal({0.25, 0.5})});
}

inline matpress::FiniteMatrixMeasure random_measure(std::mt19937_64& rng, std::size_t d, std::size_t n_atoms,
                                                    double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> w(0.2, 2.0);
    std::vector<matpress::Atom> atoms;
    for (std::size_t i = 0; i < n_atoms; ++i) atoms.push_back({w(rng), random_matrix(rng, d, lo, hi)});
    return matpress::FiniteMatrixMeasure(d, std::move(atoms));
}

}  // namespace oracle
