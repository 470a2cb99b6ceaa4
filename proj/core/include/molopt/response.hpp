#pragma once

#include <complex>
#include <utility>

#include "molopt/model.hpp"
#include "molopt/numerics.hpp"
#include "molopt/steady_state.hpp"

namespace molopt::response {

// Everything the linearized dynamics depends on, resolved from the operating
// mode: the effective detuning, the pump-enhanced coupling and the
// collective bilinear coupling, plus the bare rates and frequencies.
struct OperatingPoint {
    double delta = 0.0;            // THz
    std::complex<double> calG_a;   // THz
    double G_c = 0.0;              // THz
    double kappa_a = 0.0;          // THz
    double kappa_c = 0.0;          // THz
    double gamma_B = 0.0;          // THz
    double nu_b = 0.0;             // THz
    double nu_c = 0.0;             // THz
    double eps_ir = 0.0;           // THz
};

// Resolves the operating point. Prescribed-coupling mode bypasses the steady
// state entirely; the other modes solve it (default branch).
OperatingPoint operating_point(const model::ValidatedParams& p);

// Same, but reusing an already computed steady state.
OperatingPoint operating_point(const model::ValidatedParams& p, const steady::SteadyState& ss);

// Copy of `op` with the pump-enhanced coupling replaced (zero phase).
OperatingPoint with_coupling(const OperatingPoint& op, double ga_thz);

// Ansatz amplitudes of the driven fluctuations at signal frequency omega_ir,
// and the quantities derived from them.
struct ResponseComponents {
    std::complex<double> a_plus, a_minus;
    std::complex<double> c_plus, c_minus;
    std::complex<double> B_plus, B_minus;
    std::complex<double> a_out_plus, a_out_minus;  // sqrt(2 kappa_a) * a_pm
    std::complex<double> t_ac;                     // Stokes conversion coefficient
    double T_ac = 0.0;                             // |t_ac|^2
    double T_ac_antistokes = 0.0;                  // anti-Stokes counterpart
    double omega_ir = 0.0;                         // THz
};

// Coefficient matrix and drive vector of the two-frequency ansatz in the
// unknowns u = (a+, a-*, c+, c-*, B+, B-*). No rotating-wave approximation
// is made; the drive eps_ir enters the c+ row only.
std::pair<numerics::ComplexMatrix, std::vector<numerics::Complex>> assemble_response_system(
    const OperatingPoint& op, double omega_ir);

// Exact solve of the 6x6 system. Throws DivergesError at gain poles (the
// system matrix becomes singular) and requires eps_ir > 0.
ResponseComponents solve_response(const OperatingPoint& op, double omega_ir);

// Closed-form Stokes amplitude a_-; valid near resonance, cross-checked
// against solve_response in the tests. Throws DivergesError when the
// denominator vanishes.
std::complex<double> stokes_closed_form(const OperatingPoint& op, double omega_ir);

// Fully resonant conversion coefficient (omega_ir = nu_b = nu_c).
std::complex<double> resonant_tac(const OperatingPoint& op);

// Coupling magnitude that maximizes the resonant conversion efficiency.
double optimal_coupling(const OperatingPoint& op);

}  // namespace molopt::response
