#pragma once

// Shared helpers for the test suites: deterministic RNG draws and the
// independent oracles the module tests check against.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "molopt/numerics.hpp"
#include "molopt/stability.hpp"

namespace molopt::test {

using Complex = std::complex<double>;

inline double log_uniform(std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
    return std::exp(dist(rng));
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// det(M) of a small real matrix by LU with partial pivoting; independent of
// the Faddeev-LeVerrier path under test.
inline double det_lu(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(m[r][k]) > std::abs(m[piv][k])) piv = r;
        }
        if (m[piv][k] == 0.0) return 0.0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = m[r][k] / m[k][k];
            for (std::size_t c = k; c < n; ++c) m[r][c] -= f * m[k][c];
        }
    }
    return det;
}

// All roots of a monic-normalizable real polynomial via shifted power
// iteration on the companion matrix plus synthetic deflation. Slow and
// simple on purpose: it shares no code with poly_roots.
inline std::vector<Complex> companion_power_roots(std::vector<double> coeffs) {
    std::vector<Complex> work(coeffs.begin(), coeffs.end());
    std::vector<Complex> roots;

    while (work.size() > 2) {
        const std::size_t n = work.size() - 1;
        std::vector<Complex> monic(n);
        for (std::size_t i = 0; i < n; ++i) monic[i] = work[i] / work[n];

        // column-companion matrix of the monic polynomial acting on a vector:
        // (Cv)[0] = -a_0 v[n-1], (Cv)[i] = v[i-1] - a_i v[n-1]
        const auto apply = [&](const std::vector<Complex>& v) {
            std::vector<Complex> w(n);
            w[0] = -monic[0] * v[n - 1];
            for (std::size_t i = 1; i < n; ++i) w[i] = v[i - 1] - monic[i] * v[n - 1];
            return w;
        };

        // complex shift breaks the modulus tie between conjugate eigenvalues
        const Complex shift(0.31, 0.47);
        std::vector<Complex> v(n);
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        for (auto& x : v) x = Complex(d(rng), d(rng));

        Complex lambda = 0.0;
        for (int iter = 0; iter < 50000; ++iter) {
            std::vector<Complex> w = apply(v);
            for (std::size_t i = 0; i < n; ++i) w[i] -= shift * v[i];
            double norm = 0.0;
            for (const auto& x : w) norm += std::norm(x);
            norm = std::sqrt(norm);
            if (norm < 1e-300) break;
            for (auto& x : w) x /= norm;
            // Rayleigh quotient of the unshifted matrix on the iterate
            const std::vector<Complex> cw = apply(w);
            Complex num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                num += std::conj(w[i]) * cw[i];
                den += std::conj(w[i]) * w[i];
            }
            const Complex next = num / den;
            if (iter > 10 && std::abs(next - lambda) < 1e-13 * (1.0 + std::abs(next))) {
                lambda = next;
                break;
            }
            lambda = next;
            v = std::move(w);
        }

        // one Newton polish on the full polynomial for accuracy
        for (int it = 0; it < 50; ++it) {
            Complex p = 0.0, dp = 0.0;
            for (std::size_t i = work.size(); i-- > 0;) {
                dp = dp * lambda + p;
                p = p * lambda + work[i];
            }
            if (std::abs(dp) < 1e-300) break;
            const Complex step = p / dp;
            lambda -= step;
            if (std::abs(step) < 1e-14 * (1.0 + std::abs(lambda))) break;
        }

        roots.push_back(lambda);
        // deflate: synthetic division by (x - lambda)
        std::vector<Complex> quotient(work.size() - 1);
        Complex carry = work.back();
        for (std::size_t i = work.size() - 1; i-- > 0;) {
            quotient[i] = carry;
            carry = work[i] + carry * lambda;
        }
        work = std::move(quotient);
    }
    if (work.size() == 2) roots.push_back(-work[0] / work[1]);
    return roots;
}

// Random well-conditioned complex system: diagonally dominant.
inline molopt::numerics::ComplexMatrix random_dominant(std::mt19937& rng, std::size_t n) {
    molopt::numerics::ComplexMatrix a(n, n);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            a(i, j) = Complex(d(rng), d(rng));
            off += std::abs(a(i, j));
        }
        a(i, i) = Complex(off + 1.0 + std::abs(d(rng)), d(rng));
    }
    return a;
}

}  // namespace molopt::test
