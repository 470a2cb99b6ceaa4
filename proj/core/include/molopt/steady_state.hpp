#pragma once

#include <complex>
#include <vector>

#include "molopt/model.hpp"

namespace molopt::steady {

// Self-consistent mean values of the pumped system with the weak IR signal
// switched off.
struct SteadyState {
    std::complex<double> a_ss;    // VIS mode amplitude
    std::complex<double> B_ss;    // collective vibrational amplitude
    std::complex<double> c_ss;    // IR mode amplitude
    double delta_eff = 0.0;       // THz, effective detuning
    double delta0 = 0.0;          // THz, bare detuning (given or implied)
    std::complex<double> calG_a;  // THz, pump-enhanced coupling G_a * a_ss
    int branch_id = 0;            // index among cubic roots, ascending in X_B
    bool converged = true;
    int iterations = 0;
    double max_residual = 0.0;    // worst relative residual of the mean-value relations

    // static vibrational displacement, B_ss + conj(B_ss)
    double x_b() const { return 2.0 * B_ss.real(); }
};

// eps_p / (i delta + kappa_a)
std::complex<double> cavity_amplitude(double delta_thz, double eps_p_thz, double kappa_a_thz);

// Worst relative residual of the three mean-value relations plus the
// effective-detuning relation.
double relation_residual(const model::ValidatedParams& p, const SteadyState& s);

// Direct evaluation in fixed-delta mode; damped fixed-point iteration on the
// vibrational displacement in fixed-delta0 mode (damping 0.5, cap 1e4
// iterations). Throws NoConvergenceError when the cap is reached; callers
// may fall back to solve_cubic_branches.
SteadyState solve_self_consistent(const model::ValidatedParams& p);

// Eliminates the IR mode and the vibrational quadrature analytically, which
// reduces the fixed-delta0 self-consistency to a real cubic in the
// displacement. One state per real root, branch_id ascending in X_B. The
// branch continuously connected to zero displacement at zero pump is the
// one with the smallest |X_B|.
std::vector<SteadyState> solve_cubic_branches(const model::ValidatedParams& p);

}  // namespace molopt::steady
