#include "molopt/stability.hpp"

#include <algorithm>
#include <cmath>

namespace molopt::stability {

using numerics::Complex;
using numerics::RealPolynomial;

DriftMatrix drift_matrix(const response::OperatingPoint& op) {
    const double ga_re = op.calG_a.real();
    const double ga_im = op.calG_a.imag();
    const double gc = op.G_c;

    DriftMatrix a{};
    // VIS mode quadratures
    a[0][0] = -op.kappa_a;
    a[0][1] = op.delta;
    a[0][4] = 2.0 * ga_im;
    a[1][0] = -op.delta;
    a[1][1] = -op.kappa_a;
    a[1][4] = -2.0 * ga_re;
    // IR mode quadratures
    a[2][2] = -op.kappa_c;
    a[2][3] = op.nu_c;
    a[3][2] = -op.nu_c;
    a[3][3] = -op.kappa_c;
    a[3][4] = -2.0 * gc;
    // collective vibration quadratures
    a[4][4] = -op.gamma_B;
    a[4][5] = op.nu_b;
    a[5][0] = -2.0 * ga_re;
    a[5][1] = -2.0 * ga_im;
    a[5][2] = -2.0 * gc;
    a[5][4] = -op.nu_b;
    a[5][5] = -op.gamma_B;
    return a;
}

namespace {

DriftMatrix mat_mul(const DriftMatrix& x, const DriftMatrix& y) {
    DriftMatrix out{};
    for (int i = 0; i < 6; ++i) {
        for (int k = 0; k < 6; ++k) {
            const double v = x[i][k];
            if (v == 0.0) continue;
            for (int j = 0; j < 6; ++j) out[i][j] += v * y[k][j];
        }
    }
    return out;
}

double trace(const DriftMatrix& x) {
    double t = 0.0;
    for (int i = 0; i < 6; ++i) t += x[i][i];
    return t;
}

}  // namespace

RealPolynomial char_poly(const DriftMatrix& a) {
    // Faddeev-LeVerrier: M_1 = A, c_{n-k} = -tr(A M_k)/k with
    // M_{k+1} = A (M_k + c_{n-k} I)
    constexpr int n = 6;
    std::vector<double> coeffs(n + 1, 0.0);
    coeffs[n] = 1.0;

    DriftMatrix m = a;
    for (int k = 1; k <= n; ++k) {
        coeffs[n - k] = -trace(m) / k;
        if (k == n) break;
        DriftMatrix shifted = m;
        for (int i = 0; i < 6; ++i) shifted[i][i] += coeffs[n - k];
        m = mat_mul(a, shifted);
    }
    return RealPolynomial{std::move(coeffs)};
}

bool routh_stable(const RealPolynomial& poly) {
    std::vector<double> c = poly.coeffs;
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) throw std::invalid_argument("routh_stable: degree >= 1 required");
    if (c[n] < 0.0) {
        for (double& v : c) v = -v;
    }

    const std::size_t width = static_cast<std::size_t>(n) / 2 + 1;
    std::vector<double> prev(width, 0.0);
    std::vector<double> cur(width, 0.0);
    for (int i = n, j = 0; i >= 0; i -= 2, ++j) prev[j] = c[i];
    for (int i = n - 1, j = 0; i >= 0; i -= 2, ++j) cur[j] = c[i];

    // first column of the array; zero pivots are replaced by a tiny positive
    // epsilon before they are recorded or divided by
    std::vector<double> first_col{prev[0]};
    for (int row = 1; row <= n; ++row) {
        bool all_zero = true;
        double row_scale = 0.0;
        for (double v : cur) {
            if (v != 0.0) all_zero = false;
            row_scale = std::max(row_scale, std::abs(v));
        }
        if (all_zero) {
            throw InconclusiveBorderlineError(
                "routh_stable: a whole Routh row vanished (marginal polynomial)");
        }
        if (cur[0] == 0.0) cur[0] = 1e-30 * row_scale;
        first_col.push_back(cur[0]);
        if (row == n) break;

        std::vector<double> next(width, 0.0);
        for (std::size_t j = 0; j + 1 < width; ++j) {
            next[j] = (cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0];
        }
        prev = cur;
        cur = next;
    }

    int sign_changes = 0;
    double last = first_col[0];
    for (std::size_t i = 1; i < first_col.size(); ++i) {
        if ((first_col[i] > 0.0) != (last > 0.0)) ++sign_changes;
        last = first_col[i];
    }
    return sign_changes == 0;
}

StabilityReport stability_report(const response::OperatingPoint& op) {
    StabilityReport report;
    report.quadrature_matrix = drift_matrix(op);
    report.char_poly = char_poly(report.quadrature_matrix);
    report.eigenvalues = numerics::poly_roots(report.char_poly);

    report.spectral_abscissa = report.eigenvalues.front().real();
    for (const Complex& ev : report.eigenvalues) {
        report.spectral_abscissa = std::max(report.spectral_abscissa, ev.real());
    }
    report.marginal = std::abs(report.spectral_abscissa) < 1e-9;

    try {
        report.routh_stable = routh_stable(report.char_poly);
    } catch (const InconclusiveBorderlineError&) {
        report.routh_borderline = true;
        report.routh_stable = report.spectral_abscissa < 0.0;
        report.marginal = true;
    }

    report.methods_agree =
        report.marginal || report.routh_stable == (report.spectral_abscissa < 0.0);
    return report;
}

}  // namespace molopt::stability
