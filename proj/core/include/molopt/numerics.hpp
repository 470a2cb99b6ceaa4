#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "molopt/errors.hpp"

namespace molopt::numerics {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Everything in this project is 6x6 or
// smaller, so no attempt is made at blocking or sparsity.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const { return data_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

std::vector<Complex> mat_vec(const ComplexMatrix& a, std::span<const Complex> x);

// Solves A x = b by Gaussian elimination with partial pivoting (row swap on
// the max-modulus pivot). Throws SingularMatrixError when a pivot modulus
// falls below 1e-14 times the largest entry modulus of the input matrix.
std::vector<Complex> solve_complex_linear(ComplexMatrix a, std::vector<Complex> b);

// Real polynomial with coefficients in ascending degree order.
struct RealPolynomial {
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double operator()(double x) const;
    Complex operator()(const Complex& z) const;
};

// All real roots of c3 x^3 + c2 x^2 + c1 x + c0 in ascending order, repeated
// roots collapsed to one entry. Discriminant-based closed form on the
// depressed cubic, one Newton polish step per root. A zero leading
// coefficient reduces the degree; all-zero input raises
// DegenerateAllZeroError.
std::vector<double> real_cubic_roots(double c0, double c1, double c2, double c3);

// All complex roots via Durand-Kerner iteration started from a perturbed
// circle. Iteration cap 500, convergence when every step is below
// 1e-12 * (1 + |root|). Throws NoConvergenceError (best residual attached)
// if the cap is reached. Roots are sorted by (real, imag) so the output is
// deterministic.
std::vector<Complex> poly_roots(const RealPolynomial& p);

struct GoldenMax {
    double x;
    double f;
};

// Maximizes a unimodal f on [lo, hi] to within tol in x. Unimodality is the
// caller's responsibility; callers here bracket peaks with a coarse scan
// first.
GoldenMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double tol);

struct FwhmResult {
    double width = 0.0;
    double left = 0.0;   // crossing position, or the grid edge when truncated
    double right = 0.0;
    bool left_truncated = false;
    bool right_truncated = false;
    std::size_t peak_index = 0;
    double peak_value = 0.0;

    bool truncated() const { return left_truncated || right_truncated; }
};

// Full width at half maximum of a sampled nonnegative curve. Finds the
// global maximum, then the outermost half-max crossings on each side of the
// argmax by linear interpolation. When the curve never falls below half
// maximum on a side, that side is flagged truncated and the grid edge is
// reported instead of a crossing.
FwhmResult fwhm(std::span<const double> xs, std::span<const double> ys);

}  // namespace molopt::numerics
