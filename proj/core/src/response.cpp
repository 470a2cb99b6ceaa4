#include "molopt/response.hpp"

#include <cmath>
#include <sstream>

namespace molopt::response {

using numerics::Complex;
using numerics::ComplexMatrix;

OperatingPoint operating_point(const model::ValidatedParams& p) {
    if (const auto* pg = std::get_if<model::PrescribedGa>(&p->detuning_mode)) {
        OperatingPoint op;
        op.delta = pg->delta_thz;
        op.calG_a = pg->ga_thz;
        op.G_c = model::collective_couplings(p).G_c;
        op.kappa_a = p->kappa_a;
        op.kappa_c = p->kappa_c;
        op.gamma_B = p->gamma_B;
        op.nu_b = p->nu_b;
        op.nu_c = p->nu_c;
        op.eps_ir = p->eps_ir_thz();
        return op;
    }
    return operating_point(p, steady::solve_self_consistent(p));
}

OperatingPoint operating_point(const model::ValidatedParams& p, const steady::SteadyState& ss) {
    OperatingPoint op;
    op.delta = ss.delta_eff;
    op.calG_a = ss.calG_a;
    op.G_c = model::collective_couplings(p).G_c;
    op.kappa_a = p->kappa_a;
    op.kappa_c = p->kappa_c;
    op.gamma_B = p->gamma_B;
    op.nu_b = p->nu_b;
    op.nu_c = p->nu_c;
    op.eps_ir = p->eps_ir_thz();
    return op;
}

OperatingPoint with_coupling(const OperatingPoint& op, double ga_thz) {
    OperatingPoint out = op;
    out.calG_a = ga_thz;
    return out;
}

std::pair<ComplexMatrix, std::vector<Complex>> assemble_response_system(const OperatingPoint& op,
                                                                        double omega_ir) {
    const Complex i(0.0, 1.0);
    const Complex ga = op.calG_a;
    const Complex ga_conj = std::conj(ga);
    const double gc = op.G_c;
    const double om = omega_ir;

    // rows: equations for a+, a-*, c+, c-*, B+, B-*; the starred rows are
    // the conjugated negative-frequency components
    ComplexMatrix m(6, 6);
    m(0, 0) = i * (op.delta - om) + op.kappa_a;
    m(0, 4) = i * ga;
    m(0, 5) = i * ga;

    m(1, 1) = -i * (op.delta + om) + op.kappa_a;
    m(1, 4) = -i * ga_conj;
    m(1, 5) = -i * ga_conj;

    m(2, 2) = i * (op.nu_c - om) + op.kappa_c;
    m(2, 4) = i * gc;
    m(2, 5) = i * gc;

    m(3, 3) = -i * (op.nu_c + om) + op.kappa_c;
    m(3, 4) = -i * gc;
    m(3, 5) = -i * gc;

    m(4, 0) = i * ga_conj;
    m(4, 1) = i * ga;
    m(4, 2) = i * gc;
    m(4, 3) = i * gc;
    m(4, 4) = i * (op.nu_b - om) + op.gamma_B;

    m(5, 0) = -i * ga_conj;
    m(5, 1) = -i * ga;
    m(5, 2) = -i * gc;
    m(5, 3) = -i * gc;
    m(5, 5) = -i * (op.nu_b + om) + op.gamma_B;

    std::vector<Complex> drive(6, Complex(0.0));
    drive[2] = op.eps_ir;
    return {std::move(m), std::move(drive)};
}

ResponseComponents solve_response(const OperatingPoint& op, double omega_ir) {
    if (!(op.eps_ir > 0.0)) {
        throw Error("solve_response: eps_ir must be > 0");
    }
    auto [m, drive] = assemble_response_system(op, omega_ir);

    std::vector<Complex> u;
    try {
        u = numerics::solve_complex_linear(std::move(m), std::move(drive));
    } catch (const SingularMatrixError&) {
        std::ostringstream os;
        os << "response diverges at omega_ir = " << omega_ir << " THz (gain pole)";
        throw DivergesError(os.str(), omega_ir);
    }

    ResponseComponents rc;
    rc.omega_ir = omega_ir;
    rc.a_plus = u[0];
    rc.a_minus = std::conj(u[1]);
    rc.c_plus = u[2];
    rc.c_minus = std::conj(u[3]);
    rc.B_plus = u[4];
    rc.B_minus = std::conj(u[5]);

    const double root_2ka = std::sqrt(2.0 * op.kappa_a);
    rc.a_out_plus = root_2ka * rc.a_plus;
    rc.a_out_minus = root_2ka * rc.a_minus;

    const double norm = 2.0 * std::sqrt(op.kappa_a * op.kappa_c) / op.eps_ir;
    rc.t_ac = norm * rc.a_minus;
    rc.T_ac = std::norm(rc.t_ac);
    rc.T_ac_antistokes = std::norm(norm * rc.a_plus);
    return rc;
}

std::complex<double> stokes_closed_form(const OperatingPoint& op, double omega_ir) {
    const Complex i(0.0, 1.0);
    const double delta = op.delta;
    const double om = omega_ir;
    const double d2 = delta * delta;

    const Complex p_ir = d2 - std::pow(Complex(om, -op.kappa_c), 2);
    const Complex p_vib = d2 - std::pow(Complex(om, -op.gamma_B), 2);
    const Complex p_vis = d2 - std::pow(Complex(om, -op.kappa_a), 2);

    const double gc2 = 4.0 * op.G_c * op.G_c * d2;
    const double ga2 = 4.0 * std::norm(op.calG_a) * d2;

    const Complex denom = (p_ir * p_vib - gc2) * p_vis + ga2 * p_ir;
    const double scale = std::abs(p_ir) * std::abs(p_vib) * std::abs(p_vis) +
                         gc2 * std::abs(p_vis) + ga2 * std::abs(p_ir);
    if (std::abs(denom) < 1e-12 * scale) {
        std::ostringstream os;
        os << "Stokes amplitude diverges at omega_ir = " << om << " THz";
        throw DivergesError(os.str(), om);
    }

    const Complex numer = 2.0 * i * op.eps_ir * op.calG_a * op.G_c * delta *
                          Complex(delta - om, op.kappa_a) * Complex(delta - om, op.kappa_c);
    return numer / denom;
}

std::complex<double> resonant_tac(const OperatingPoint& op) {
    const Complex i(0.0, 1.0);
    const double two_delta = 2.0 * op.delta;
    const Complex eta_a = 1.0 + i * op.kappa_a / two_delta;
    const Complex eta_c = 1.0 + i * op.kappa_c / two_delta;
    const Complex eta_b = 1.0 + i * op.gamma_B / two_delta;

    const Complex denom = op.G_c * op.G_c * op.kappa_a / eta_c -
                          std::norm(op.calG_a) * op.kappa_c / eta_a +
                          op.kappa_a * op.kappa_c * op.gamma_B * eta_b;
    const double scale = op.G_c * op.G_c * op.kappa_a + std::norm(op.calG_a) * op.kappa_c +
                         op.kappa_a * op.kappa_c * op.gamma_B;
    if (std::abs(denom) < 1e-12 * scale) {
        throw DivergesError("resonant conversion coefficient diverges", op.nu_b);
    }
    return 2.0 * std::sqrt(op.kappa_a * op.kappa_c) * op.calG_a * op.G_c / denom;
}

double optimal_coupling(const OperatingPoint& op) {
    const Complex i(0.0, 1.0);
    const double two_delta = 2.0 * op.delta;
    const Complex eta_a = 1.0 + i * op.kappa_a / two_delta;
    const Complex eta_c = 1.0 + i * op.kappa_c / two_delta;
    const Complex eta_b = 1.0 + i * op.gamma_B / two_delta;

    const double load = op.G_c * op.G_c * std::abs(1.0 / eta_c) +
                        op.kappa_c * op.gamma_B * std::abs(eta_b);
    return std::sqrt(load * op.kappa_a * std::abs(eta_a) / op.kappa_c);
}

}  // namespace molopt::response
