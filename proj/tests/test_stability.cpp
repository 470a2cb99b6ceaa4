#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "molopt/analysis.hpp"
#include "molopt/stability.hpp"
#include "support.hpp"

using namespace molopt;
using numerics::Complex;
using numerics::RealPolynomial;

namespace {

response::OperatingPoint baseline_op(double ga, double delta = -30.0) {
    auto params = analysis::preset_base_params(model::PrescribedGa{ga, delta});
    return response::operating_point(model::validate(params));
}

response::OperatingPoint random_op(std::mt19937& rng) {
    response::OperatingPoint op;
    op.kappa_a = test::log_uniform(rng, 1e-2, 1e2);
    op.kappa_c = test::log_uniform(rng, 1e-2, 1e2);
    op.gamma_B = test::log_uniform(rng, 1e-2, 1e2);
    op.nu_b = test::log_uniform(rng, 1.0, 1e2);
    op.nu_c = test::log_uniform(rng, 1.0, 1e2);
    op.delta = test::uniform(rng, -100.0, 100.0);
    const double theta = test::uniform(rng, 0.0, 2.0 * M_PI);
    op.calG_a = test::uniform(rng, 0.0, 10.0) * Complex(std::cos(theta), std::sin(theta));
    op.G_c = test::uniform(rng, 0.0, 10.0);
    op.eps_ir = 1e-3;
    return op;
}

}  // namespace

TEST_CASE("drift_matrix: decoupled modes form rotation-decay blocks") {
    auto op = baseline_op(0.0);
    op.G_c = 0.0;
    const auto a = stability::drift_matrix(op);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            const bool same_block = (i / 2) == (j / 2);
            if (!same_block) CHECK(a[i][j] == 0.0);
        }
    }
    const auto report = stability::stability_report(op);
    // eigenvalues -kappa_a +- i delta, -kappa_c +- i nu_c, -gamma_B +- i nu_b
    std::vector<Complex> expected{{-30.0, -30.0}, {-30.0, 30.0}, {-0.5, -30.0},
                                  {-0.5, 30.0},   {-0.16, -30.0}, {-0.16, 30.0}};
    for (const auto& want : expected) {
        double best = 1e30;
        for (const auto& got : report.eigenvalues) best = std::min(best, std::abs(got - want));
        CHECK(best < 1e-7);
    }
    CHECK(report.spectral_abscissa == doctest::Approx(-0.16).epsilon(1e-7));
}

TEST_CASE("drift_matrix: trace equals minus twice the total damping") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const auto op = random_op(rng);
        const auto a = stability::drift_matrix(op);
        double tr = 0.0;
        for (int i = 0; i < 6; ++i) tr += a[i][i];
        const double expected = -2.0 * (op.kappa_a + op.kappa_c + op.gamma_B);
        CHECK(tr == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("drift_matrix: real coupling gives the two-mode-squeezing block") {
    auto op = baseline_op(2.2);
    const auto a = stability::drift_matrix(op);
    // x_a picks up nothing, p_a couples to x_B, p_B couples to x_a only
    CHECK(a[0][4] == 0.0);
    CHECK(a[1][4] == doctest::Approx(-4.4));
    CHECK(a[5][0] == doctest::Approx(-4.4));
    CHECK(a[5][1] == 0.0);
    CHECK(a[4][0] == 0.0);
    CHECK(a[4][1] == 0.0);
}

TEST_CASE("char_poly: closed forms") {
    stability::DriftMatrix zero{};
    auto p = stability::char_poly(zero);
    REQUIRE(p.degree() == 6);
    for (int i = 0; i < 6; ++i) CHECK(p.coeffs[i] == 0.0);
    CHECK(p.coeffs[6] == 1.0);

    stability::DriftMatrix diag{};
    for (int i = 0; i < 6; ++i) diag[i][i] = -(i + 1.0);
    p = stability::char_poly(diag);
    // prod (lambda + k) for k = 1..6
    std::vector<double> expected{1.0};
    for (int k = 1; k <= 6; ++k) {
        std::vector<double> next(expected.size() + 1, 0.0);
        for (std::size_t i = 0; i < expected.size(); ++i) {
            next[i] += expected[i] * k;
            next[i + 1] += expected[i];
        }
        expected = std::move(next);
    }
    for (int i = 0; i <= 6; ++i) CHECK(p.coeffs[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("char_poly: matches a determinant oracle at probe points") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        stability::DriftMatrix a{};
        for (auto& row : a) {
            for (auto& v : row) v = d(rng);
        }
        const auto p = stability::char_poly(a);
        for (double mu : {0.37, -1.21, 2.63}) {
            std::vector<std::vector<double>> shifted(6, std::vector<double>(6));
            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) shifted[i][j] = (i == j ? mu : 0.0) - a[i][j];
            }
            const double oracle = test::det_lu(shifted);
            CHECK(std::abs(p(mu) - oracle) <= 1e-9 * (1.0 + std::abs(oracle)));
        }
    }
}

TEST_CASE("routh_stable: textbook polynomials") {
    // (lambda + 1)^6
    RealPolynomial stable{{1, 6, 15, 20, 15, 6, 1}};
    CHECK(stability::routh_stable(stable));

    // (lambda - 0.1)(lambda + 1)^5
    //   = lambda^6 + 4.9 l^5 + 9.5 l^4 + 9 l^3 + 4 l^2 + 0.5 l - 0.1
    RealPolynomial unstable{{-0.1, 0.5, 4.0, 9.0, 9.5, 4.9, 1.0}};
    CHECK_FALSE(stability::routh_stable(unstable));

    // lambda^2 + 1: marginal, a whole row vanishes
    CHECK_THROWS_AS(stability::routh_stable(RealPolynomial{{1.0, 0.0, 1.0}}),
                    InconclusiveBorderlineError);
}

TEST_CASE("routh_stable: zero first-column pivot resolved by epsilon substitution") {
    // s^4 + s^3 + 2 s^2 + 2 s + 3 zeroes the s^2 pivot without killing the row
    RealPolynomial p{{3.0, 2.0, 2.0, 1.0, 1.0}};
    const auto roots = numerics::poly_roots(p);
    double abscissa = roots[0].real();
    for (const auto& r : roots) abscissa = std::max(abscissa, r.real());
    CHECK(stability::routh_stable(p) == (abscissa < 0.0));

    // same situation mirrored into a stable polynomial must stay consistent
    RealPolynomial q{{3.0, -2.0, 2.0, -1.0, 1.0}};
    const auto qroots = numerics::poly_roots(q);
    double qabs = qroots[0].real();
    for (const auto& r : qroots) qabs = std::max(qabs, r.real());
    CHECK(stability::routh_stable(q) == (qabs < 0.0));
}

TEST_CASE("stability_report: known operating points") {
    auto op = baseline_op(0.0);
    op.G_c = 0.0;
    auto report = stability::stability_report(op);
    CHECK(report.routh_stable);
    CHECK(report.spectral_abscissa ==
          doctest::Approx(-std::min({op.kappa_a, op.kappa_c, op.gamma_B})).epsilon(1e-7));

    report = stability::stability_report(baseline_op(3.0));
    CHECK(report.routh_stable);
    CHECK(report.methods_agree);

    report = stability::stability_report(baseline_op(5.0));
    CHECK_FALSE(report.routh_stable);
    CHECK(report.spectral_abscissa > 0.0);
    CHECK(report.methods_agree);
}

TEST_CASE("stability_report: first verdict flip sits between 3.3 and 3.8") {
    bool was_stable = true;
    double flip_at = 0.0;
    for (double ga = 3.0; ga <= 4.0; ga += 0.01) {
        const bool stable = stability::stability_report(baseline_op(ga)).spectral_abscissa < 0.0;
        if (was_stable && !stable) {
            flip_at = ga;
            break;
        }
        was_stable = stable;
    }
    CHECK(flip_at > 3.3);
    CHECK(flip_at < 3.8);
}

TEST_CASE("stability_report: Routh agrees with the spectral abscissa on random draws") {
    std::mt19937 rng(47);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto report = stability::stability_report(random_op(rng));
        if (report.marginal || report.routh_borderline) continue;
        ++checked;
        CHECK(report.methods_agree);
        CHECK(report.routh_stable == (report.spectral_abscissa < 0.0));
    }
    CHECK(checked > 250);
}

TEST_CASE("stability_report: eigenvalues close under conjugation") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const auto report = stability::stability_report(random_op(rng));
        for (const auto& ev : report.eigenvalues) {
            double best = 1e30;
            for (const auto& other : report.eigenvalues) {
                best = std::min(best, std::abs(other - std::conj(ev)));
            }
            CHECK(best < 1e-8 * (1.0 + std::abs(ev)));
        }
    }
}

TEST_CASE("stability: verdict invariant under the coupling phase") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        auto op = baseline_op(test::uniform(rng, 2.5, 4.5));
        const auto ref = stability::stability_report(op);
        const double theta = test::uniform(rng, 0.0, 2.0 * M_PI);
        op.calG_a = std::abs(op.calG_a) * Complex(std::cos(theta), std::sin(theta));
        const auto rotated = stability::stability_report(op);
        CHECK(ref.routh_stable == rotated.routh_stable);
        CHECK(rotated.spectral_abscissa ==
              doctest::Approx(ref.spectral_abscissa).epsilon(1e-7));
    }
}
