#pragma once

#include <array>
#include <vector>

#include "molopt/numerics.hpp"
#include "molopt/response.hpp"

namespace molopt::stability {

// 6x6 real drift matrix of the fluctuation quadratures
// v = (x_a, p_a, x_c, p_c, x_B, p_B), d/dt v = A v.
using DriftMatrix = std::array<std::array<double, 6>, 6>;

// Homogeneous part of the linearized dynamics in the quadrature basis. Real
// by construction, so the characteristic polynomial has real coefficients
// and Routh-Hurwitz applies directly.
DriftMatrix drift_matrix(const response::OperatingPoint& op);

// Monic characteristic polynomial det(lambda I - A) by the
// Faddeev-LeVerrier recursion.
numerics::RealPolynomial char_poly(const DriftMatrix& a);

// Routh-Hurwitz test: true iff every root of the polynomial lies in the
// open left half-plane. Zero first-column pivots are replaced by a tiny
// positive epsilon; a whole vanishing row raises
// InconclusiveBorderlineError (marginal polynomial).
bool routh_stable(const numerics::RealPolynomial& poly);

struct StabilityReport {
    DriftMatrix quadrature_matrix{};
    numerics::RealPolynomial char_poly;
    std::vector<numerics::Complex> eigenvalues;
    double spectral_abscissa = 0.0;  // THz, max real part
    bool routh_stable = false;
    bool routh_borderline = false;   // whole Routh row vanished
    bool marginal = false;           // |spectral_abscissa| < 1e-9
    bool methods_agree = false;

    bool stable() const { return spectral_abscissa < 0.0; }
};

// Full verdict: Routh-Hurwitz on the characteristic polynomial plus the
// explicit eigenvalues as a cross-check.
StabilityReport stability_report(const response::OperatingPoint& op);

}  // namespace molopt::stability
