#include "molopt/steady_state.hpp"

#include <cmath>
#include <sstream>

#include "molopt/numerics.hpp"

namespace molopt::steady {

using std::complex;

complex<double> cavity_amplitude(double delta_thz, double eps_p_thz, double kappa_a_thz) {
    return eps_p_thz / complex<double>(kappa_a_thz, delta_thz);
}

namespace {

struct Reduction {
    double G_a, G_c;       // THz
    double w_vib;          // gamma_B^2 + nu_b^2
    double v_ir;           // kappa_c^2 + nu_c^2
    double k_eff;          // w_vib - 4 nu_b nu_c G_c^2 / v_ir
};

Reduction make_reduction(const model::ValidatedParams& p) {
    const auto [G_a, G_c] = model::collective_couplings(p);
    Reduction r;
    r.G_a = G_a;
    r.G_c = G_c;
    r.w_vib = p->gamma_B * p->gamma_B + p->nu_b * p->nu_b;
    r.v_ir = p->kappa_c * p->kappa_c + p->nu_c * p->nu_c;
    r.k_eff = r.w_vib - 4.0 * p->nu_b * p->nu_c * G_c * G_c / r.v_ir;
    return r;
}

// Given the displacement X_B and the effective detuning, fill in the mode
// amplitudes. The IR mode and vibrational amplitudes follow linearly once
// |a_ss|^2 is known.
SteadyState assemble_state(const model::ValidatedParams& p, const Reduction& r, double delta,
                           double delta0, double x_b) {
    SteadyState s;
    s.delta_eff = delta;
    s.delta0 = delta0;
    s.a_ss = cavity_amplitude(delta, p->eps_p, p->kappa_a);
    const double x_c = -2.0 * r.G_c * p->nu_c * x_b / r.v_ir;
    const double drive = r.G_a * std::norm(s.a_ss) + r.G_c * x_c;
    s.B_ss = drive * complex<double>(-p->nu_b, -p->gamma_B) / r.w_vib;
    s.c_ss = r.G_c * x_b * complex<double>(-p->nu_c, -p->kappa_c) / r.v_ir;
    s.calG_a = r.G_a * s.a_ss;
    return s;
}

double fixed_point_map(const model::ValidatedParams& p, const Reduction& r, double delta0,
                       double x_b) {
    const double delta = delta0 + r.G_a * x_b;
    const double mag2 = std::norm(cavity_amplitude(delta, p->eps_p, p->kappa_a));
    return -2.0 * p->nu_b * r.G_a * mag2 / r.k_eff;
}

}  // namespace

double relation_residual(const model::ValidatedParams& p, const SteadyState& s) {
    const auto [G_a, G_c] = model::collective_couplings(p);
    const complex<double> i(0.0, 1.0);
    const double x_b = s.B_ss.real() * 2.0;
    const double x_c = s.c_ss.real() * 2.0;

    const complex<double> rhs_c = -i * G_c * x_b / complex<double>(p->kappa_c, p->nu_c);
    const complex<double> rhs_b =
        -i * (G_a * std::norm(s.a_ss) + G_c * x_c) / complex<double>(p->gamma_B, p->nu_b);
    const complex<double> rhs_a = cavity_amplitude(s.delta_eff, p->eps_p, p->kappa_a);
    const double rhs_delta = s.delta0 + G_a * x_b;

    double worst = 0.0;
    const auto rel = [](const complex<double>& lhs, const complex<double>& rhs) {
        return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
    };
    worst = std::max(worst, rel(s.c_ss, rhs_c));
    worst = std::max(worst, rel(s.B_ss, rhs_b));
    worst = std::max(worst, rel(s.a_ss, rhs_a));
    worst = std::max(worst, std::abs(s.delta_eff - rhs_delta) / (1.0 + std::abs(rhs_delta)));
    return worst;
}

SteadyState solve_self_consistent(const model::ValidatedParams& p) {
    const Reduction r = make_reduction(p);

    if (const auto* fd = std::get_if<model::FixedDelta>(&p->detuning_mode)) {
        // delta known, the displacement follows directly
        const double delta = fd->delta_thz;
        const double mag2 = std::norm(cavity_amplitude(delta, p->eps_p, p->kappa_a));
        const double x_b = -2.0 * p->nu_b * r.G_a * mag2 / r.k_eff;
        SteadyState s = assemble_state(p, r, delta, delta - r.G_a * x_b, x_b);
        s.max_residual = relation_residual(p, s);
        return s;
    }

    const auto* fd0 = std::get_if<model::FixedDelta0>(&p->detuning_mode);
    if (fd0 == nullptr) {
        throw Error("solve_self_consistent: prescribed_ga mode has no steady state to solve");
    }

    const double delta0 = fd0->delta0_thz;
    double x_b = 0.0;
    const int cap = 10000;
    int iter = 0;
    for (; iter < cap; ++iter) {
        const double target = fixed_point_map(p, r, delta0, x_b);
        const double next = 0.5 * x_b + 0.5 * target;  // damping 0.5
        const double step = std::abs(next - x_b);
        x_b = next;
        if (step < 1e-12 * (1.0 + std::abs(x_b))) break;
    }
    if (iter == cap) {
        SteadyState probe = assemble_state(p, r, delta0 + r.G_a * x_b, delta0, x_b);
        const double res = relation_residual(p, probe);
        std::ostringstream os;
        os << "steady state fixed point hit the iteration cap (residual " << res
           << "); solve_cubic_branches enumerates all branches";
        throw NoConvergenceError(os.str(), res);
    }

    SteadyState s = assemble_state(p, r, delta0 + r.G_a * x_b, delta0, x_b);
    s.converged = true;
    s.iterations = iter + 1;
    s.max_residual = relation_residual(p, s);
    return s;
}

std::vector<SteadyState> solve_cubic_branches(const model::ValidatedParams& p) {
    const auto* fd0 = std::get_if<model::FixedDelta0>(&p->detuning_mode);
    if (fd0 == nullptr) {
        throw Error("solve_cubic_branches: requires fixed_delta0 mode");
    }
    const Reduction r = make_reduction(p);
    const double delta0 = fd0->delta0_thz;

    // k_eff * ((delta0 + G_a X)^2 + kappa_a^2) X + 2 nu_b G_a eps_p^2 = 0
    const double c3 = r.k_eff * r.G_a * r.G_a;
    const double c2 = 2.0 * r.k_eff * delta0 * r.G_a;
    const double c1 = r.k_eff * (delta0 * delta0 + p->kappa_a * p->kappa_a);
    const double c0 = 2.0 * p->nu_b * r.G_a * p->eps_p * p->eps_p;

    const std::vector<double> roots = numerics::real_cubic_roots(c0, c1, c2, c3);

    std::vector<SteadyState> states;
    states.reserve(roots.size());
    int branch = 0;
    for (double x_b : roots) {
        SteadyState s = assemble_state(p, r, delta0 + r.G_a * x_b, delta0, x_b);
        s.branch_id = branch++;
        s.max_residual = relation_residual(p, s);
        states.push_back(s);
    }
    return states;
}

}  // namespace molopt::steady
