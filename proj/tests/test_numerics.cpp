#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "molopt/numerics.hpp"
#include "support.hpp"

using namespace molopt;
using numerics::Complex;
using numerics::ComplexMatrix;
using numerics::RealPolynomial;

TEST_CASE("solve_complex_linear: identity and diagonal") {
    ComplexMatrix id = ComplexMatrix::identity(3);
    const std::vector<Complex> b{Complex(1, 0), Complex(0, 2), Complex(-3, 0)};
    const auto x = numerics::solve_complex_linear(id, b);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(x[i] - b[i]) < 1e-15);

    ComplexMatrix d(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = Complex(0, 1);
    const auto y = numerics::solve_complex_linear(d, {Complex(4, 0), Complex(2, 0)});
    CHECK(std::abs(y[0] - Complex(2, 0)) < 1e-15);
    CHECK(std::abs(y[1] - Complex(0, -2)) < 1e-15);
}

TEST_CASE("solve_complex_linear: recovers a known solution") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    auto a = test::random_dominant(rng, 6);
    std::vector<Complex> x0(6);
    for (auto& v : x0) v = Complex(d(rng), d(rng));
    const auto b = numerics::mat_vec(a, x0);
    const auto x = numerics::solve_complex_linear(a, b);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(x[i] - x0[i]) < 1e-10);
}

TEST_CASE("solve_complex_linear: residual bound over many well-conditioned systems") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + trial % 7;
        auto a = test::random_dominant(rng, n);
        std::vector<Complex> b(n);
        for (auto& v : b) v = Complex(d(rng), d(rng));
        const auto x = numerics::solve_complex_linear(a, b);
        const auto ax = numerics::mat_vec(a, x);
        double res = 0.0, bnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            res = std::max(res, std::abs(ax[i] - b[i]));
            bnorm = std::max(bnorm, std::abs(b[i]));
        }
        worst = std::max(worst, res / std::max(1.0, bnorm));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("solve_complex_linear: singular matrix raises") {
    ComplexMatrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;
    CHECK_THROWS_AS(numerics::solve_complex_linear(a, {Complex(1), Complex(1)}),
                    SingularMatrixError);
}

TEST_CASE("real_cubic_roots: factored examples") {
    // x^3 - x
    auto r = numerics::real_cubic_roots(0.0, -1.0, 0.0, 1.0);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r[2] == doctest::Approx(1.0).epsilon(1e-12));

    // x^3: triple root collapses
    r = numerics::real_cubic_roots(0.0, 0.0, 0.0, 1.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(0.0));

    // (x-2)(x^2+1) = x^3 - 2x^2 + x - 2
    r = numerics::real_cubic_roots(-2.0, 1.0, -2.0, 1.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("real_cubic_roots: degenerate inputs") {
    CHECK_THROWS_AS(numerics::real_cubic_roots(0.0, 0.0, 0.0, 0.0), DegenerateAllZeroError);
    // linear reduction
    auto r = numerics::real_cubic_roots(-6.0, 2.0, 0.0, 0.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(3.0));
    // quadratic with no real roots
    CHECK(numerics::real_cubic_roots(1.0, 0.0, 1.0, 0.0).empty());
}

TEST_CASE("real_cubic_roots: every root verified by substitution, count matches discriminant") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double c0 = d(rng), c1 = d(rng), c2 = d(rng);
        double c3 = d(rng);
        if (std::abs(c3) < 0.1) c3 = 0.5;
        const auto roots = numerics::real_cubic_roots(c0, c1, c2, c3);
        const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2), std::abs(c3)});
        for (double r : roots) {
            const double val = ((c3 * r + c2) * r + c1) * r + c0;
            CHECK(std::abs(val) <= 1e-9 * scale * std::pow(std::max(1.0, std::abs(r)), 3));
        }
        // discriminant of the general cubic
        const double disc = 18 * c3 * c2 * c1 * c0 - 4 * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 -
                            4 * c3 * c1 * c1 * c1 - 27 * c3 * c3 * c0 * c0;
        const double disc_scale = std::pow(scale, 4);
        if (disc > 1e-9 * disc_scale) CHECK(roots.size() == 3);
        if (disc < -1e-9 * disc_scale) CHECK(roots.size() == 1);
    }
}

TEST_CASE("poly_roots: quadratic and factored cubic") {
    auto r = numerics::poly_roots(RealPolynomial{{1.0, 0.0, 1.0}});
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] - Complex(0, -1)) < 1e-10);
    CHECK(std::abs(r[1] - Complex(0, 1)) < 1e-10);

    // (x+1)(x+2)(x+3) = 6 + 11x + 6x^2 + x^3
    r = numerics::poly_roots(RealPolynomial{{6.0, 11.0, 6.0, 1.0}});
    REQUIRE(r.size() == 3);
    CHECK(std::abs(r[0] - Complex(-3, 0)) < 1e-9);
    CHECK(std::abs(r[1] - Complex(-2, 0)) < 1e-9);
    CHECK(std::abs(r[2] - Complex(-1, 0)) < 1e-9);
}

TEST_CASE("poly_roots: matches the companion-matrix oracle on a drift-style polynomial") {
    // characteristic polynomial of a random stable quadrature matrix
    response::OperatingPoint op;
    op.delta = -27.0;
    op.calG_a = Complex(1.7, 0.6);
    op.G_c = 0.4;
    op.kappa_a = 22.0;
    op.kappa_c = 0.8;
    op.gamma_B = 0.2;
    op.nu_b = 27.0;
    op.nu_c = 27.0;
    const auto poly = stability::char_poly(stability::drift_matrix(op));

    auto mine = numerics::poly_roots(poly);
    auto oracle = test::companion_power_roots(poly.coeffs);
    REQUIRE(mine.size() == oracle.size());
    std::sort(oracle.begin(), oracle.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (std::size_t i = 0; i < mine.size(); ++i) {
        CHECK(std::abs(mine[i] - oracle[i]) < 1e-6 * (1.0 + std::abs(oracle[i])));
    }
}

TEST_CASE("poly_roots: Vieta sums and products on random degree-6 polynomials") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        RealPolynomial p;
        p.coeffs.resize(7);
        for (auto& c : p.coeffs) c = d(rng);
        if (std::abs(p.coeffs[6]) < 0.2) p.coeffs[6] = 1.0;
        const auto roots = numerics::poly_roots(p);
        REQUIRE(roots.size() == 6);
        Complex sum = 0.0, prod = 1.0;
        for (const auto& r : roots) {
            sum += r;
            prod *= r;
        }
        const double c6 = p.coeffs[6];
        CHECK(std::abs(sum - Complex(-p.coeffs[5] / c6)) <=
              1e-6 * (1.0 + std::abs(p.coeffs[5] / c6)));
        CHECK(std::abs(prod - Complex(p.coeffs[0] / c6)) <=
              1e-6 * (1.0 + std::abs(p.coeffs[0] / c6)));
    }
}

TEST_CASE("golden_section_max: analytic peaks") {
    auto r = numerics::golden_section_max([](double x) { return -(x - 2.0) * (x - 2.0); }, 0.0,
                                          5.0, 1e-6);
    CHECK(std::abs(r.x - 2.0) < 1e-6);

    r = numerics::golden_section_max([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-8);
    CHECK(std::abs(r.x - M_PI / 2.0) < 1e-7);

    CHECK_THROWS_AS(numerics::golden_section_max([](double x) { return x; }, 1.0, 1.0, 1e-6),
                    InvalidBracketError);
}

namespace {

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

}  // namespace

TEST_CASE("fwhm: Lorentzian and Gaussian widths") {
    const auto xs = grid(0.0, 10.0, 2001);
    std::vector<double> lorentz(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = (xs[i] - 5.0) / 0.5;
        lorentz[i] = 1.0 / (1.0 + u * u);
    }
    auto r = numerics::fwhm(xs, lorentz);
    CHECK(!r.truncated());
    CHECK(std::abs(r.width - 1.0) < 0.01);

    const auto gxs = grid(-6.0, 6.0, 2001);
    std::vector<double> gauss(gxs.size());
    for (std::size_t i = 0; i < gxs.size(); ++i) gauss[i] = std::exp(-0.5 * gxs[i] * gxs[i]);
    r = numerics::fwhm(gxs, gauss);
    CHECK(std::abs(r.width - 2.0 * std::sqrt(2.0 * std::log(2.0))) < 0.01);
}

TEST_CASE("fwhm: double peak spans the outermost crossings") {
    // two unit triangles at x=2 and x=8, valley between
    const auto xs = grid(0.0, 10.0, 1001);
    std::vector<double> ys(xs.size());
    auto tri = [](double x, double c) { return std::max(0.0, 1.0 - std::abs(x - c)); };
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = std::max(tri(xs[i], 2.0), tri(xs[i], 8.0));
    const auto r = numerics::fwhm(xs, ys);
    CHECK(!r.truncated());
    CHECK(r.left == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(r.right == doctest::Approx(8.5).epsilon(1e-3));
    CHECK(r.width == doctest::Approx(7.0).epsilon(1e-3));
}

TEST_CASE("fwhm: invariant under uniform rescaling of the values") {
    std::mt19937 rng(5);
    const auto xs = grid(0.0, 1.0, 301);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = (xs[i] - 0.4) / 0.07;
        ys[i] = std::exp(-0.5 * u * u) + 0.01;
    }
    const auto base = numerics::fwhm(xs, ys);
    for (double k : {0.5, 3.0, 1e6, test::uniform(rng, 0.1, 10.0)}) {
        auto scaled = ys;
        for (auto& v : scaled) v *= k;
        const auto r = numerics::fwhm(xs, scaled);
        CHECK(r.width == doctest::Approx(base.width).epsilon(1e-14));
    }
}

TEST_CASE("fwhm: truncation reports the grid edge") {
    const auto xs = grid(0.0, 1.0, 51);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = 1.0 + xs[i];  // never below half max
    const auto r = numerics::fwhm(xs, ys);
    CHECK(r.left_truncated);
    CHECK(r.right_truncated);
    CHECK(r.left == xs.front());
    CHECK(r.right == xs.back());
}
