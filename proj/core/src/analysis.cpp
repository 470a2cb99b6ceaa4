#include "molopt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace molopt::analysis {

namespace {

// Static index partition so results never depend on the schedule; each
// worker writes disjoint slots.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    std::size_t workers = threads <= 0 ? std::thread::hardware_concurrency() : threads;
    workers = std::clamp<std::size_t>(workers, 1, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> xs(points);
    if (points == 1) {
        xs[0] = lo;
        return xs;
    }
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) xs[i] = lo + step * i;
    xs.back() = hi;
    return xs;
}

}  // namespace

std::size_t SpectrumCurve::argmax() const {
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < t_ac.size(); ++i) {
        if (!diverged[i] && t_ac[i] > best_val) {
            best_val = t_ac[i];
            best = i;
        }
    }
    return best;
}

double SpectrumCurve::peak() const { return t_ac[argmax()]; }

SpectrumCurve tac_spectrum(const response::OperatingPoint& op, double lo, double hi, int points,
                           int threads) {
    if (!(lo < hi) || points < 2) throw std::invalid_argument("tac_spectrum: bad grid");
    SpectrumCurve curve;
    curve.op = op;
    curve.omega_ir = linspace(lo, hi, points);
    curve.t_ac.assign(points, std::numeric_limits<double>::quiet_NaN());
    curve.diverged.assign(points, 0);

    parallel_for(static_cast<std::size_t>(points), threads, [&](std::size_t i) {
        try {
            const double value = response::solve_response(op, curve.omega_ir[i]).T_ac;
            if (std::isfinite(value)) {
                curve.t_ac[i] = value;
            } else {
                curve.diverged[i] = 1;
            }
        } catch (const DivergesError&) {
            curve.diverged[i] = 1;
        }
    });
    return curve;
}

namespace {

struct FwhmScan {
    double width;
    double peak_x;
    bool truncated;
};

FwhmScan scan_width(const response::OperatingPoint& op, double lo, double hi, int points,
                    int threads) {
    const SpectrumCurve curve = tac_spectrum(op, lo, hi, points, threads);
    for (std::size_t i = 0; i < curve.diverged.size(); ++i) {
        if (curve.diverged[i]) {
            std::ostringstream os;
            os << "efficiency diverges at omega_ir = " << curve.omega_ir[i]
               << " THz; bandwidth undefined";
            throw PoleInBandError(os.str());
        }
    }
    const auto res = numerics::fwhm(curve.omega_ir, curve.t_ac);
    return {res.width, curve.omega_ir[res.peak_index], res.truncated()};
}

}  // namespace

double bandwidth(const response::OperatingPoint& op, int threads) {
    constexpr int kPoints = 4001;
    double lo = std::max(op.nu_b - 5.0, 1e-9);
    double hi = op.nu_b + 5.0;

    FwhmScan scan = scan_width(op, lo, hi, kPoints, threads);
    for (int widen = 0; scan.truncated && widen < 8; ++widen) {
        const double span = hi - lo;
        lo = std::max(lo - span, 1e-9);
        hi += span;
        scan = scan_width(op, lo, hi, kPoints, threads);
    }
    if (scan.truncated) {
        throw HalfMaxNotBracketedError(
            "bandwidth: curve never falls to half maximum inside the widened scan");
    }

    // refine around the peak until the width settles to 0.1%
    double gamma = scan.width;
    for (int iter = 0; iter < 16; ++iter) {
        double rlo = std::max(scan.peak_x - 2.0 * gamma, 1e-9);
        double rhi = scan.peak_x + 2.0 * gamma;
        FwhmScan refined = scan_width(op, rlo, rhi, kPoints, threads);
        for (int widen = 0; refined.truncated && widen < 8; ++widen) {
            const double span = rhi - rlo;
            rlo = std::max(rlo - span, 1e-9);
            rhi += span;
            refined = scan_width(op, rlo, rhi, kPoints, threads);
        }
        if (refined.truncated) {
            throw HalfMaxNotBracketedError(
                "bandwidth: refinement window never falls to half maximum");
        }
        const double previous = gamma;
        gamma = refined.width;
        scan = refined;
        if (std::abs(gamma - previous) < 1e-3 * gamma) break;
    }
    return gamma;
}

CouplingOptimum max_tac_over_ga(const response::OperatingPoint& op, double lo, double hi) {
    if (!(lo < hi)) throw InvalidBracketError("max_tac_over_ga: lo >= hi");
    constexpr int kScan = 64;

    const auto resonant = [&](double ga) {
        return response::solve_response(response::with_coupling(op, ga), op.nu_b).T_ac;
    };

    const std::vector<double> xs = linspace(lo, hi, kScan);
    std::vector<double> ts(kScan);
    int last_stable = -1;
    for (int i = 0; i < kScan; ++i) {
        const auto report = stability::stability_report(response::with_coupling(op, xs[i]));
        if (!report.routh_stable) break;  // drop the unstable tail
        last_stable = i;
        ts[i] = resonant(xs[i]);
    }
    if (last_stable < 0) {
        throw AllUnstableError("max_tac_over_ga: no stable point in the scanned range");
    }

    int best = 0;
    for (int i = 1; i <= last_stable; ++i) {
        if (ts[i] > ts[best]) best = i;
    }
    const double blo = xs[std::max(best - 1, 0)];
    const double bhi = xs[std::min(best + 1, last_stable)];
    if (!(blo < bhi)) return {xs[best], ts[best]};

    const auto opt = numerics::golden_section_max(resonant, blo, bhi, 1e-6);
    if (opt.f >= ts[best]) return {opt.x, opt.f};
    return {xs[best], ts[best]};
}

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::ga: return "ga";
        case SweepAxis::n_molecules: return "N";
        case SweepAxis::kappa_a: return "kappa_a";
        case SweepAxis::kappa_c: return "kappa_c";
        case SweepAxis::gamma_B: return "gamma_B";
        case SweepAxis::g_a: return "g_a";
        case SweepAxis::g_c: return "g_c";
        case SweepAxis::eps_p: return "eps_p";
        case SweepAxis::delta: return "delta";
        case SweepAxis::omega_ir: return "omega_ir";
    }
    return "?";
}

std::optional<SweepAxis> axis_from_name(const std::string& name) {
    static const std::pair<const char*, SweepAxis> table[] = {
        {"ga", SweepAxis::ga},           {"N", SweepAxis::n_molecules},
        {"n", SweepAxis::n_molecules},   {"kappa_a", SweepAxis::kappa_a},
        {"kappa_c", SweepAxis::kappa_c}, {"gamma_B", SweepAxis::gamma_B},
        {"g_a", SweepAxis::g_a},         {"g_c", SweepAxis::g_c},
        {"eps_p", SweepAxis::eps_p},     {"delta", SweepAxis::delta},
        {"omega_ir", SweepAxis::omega_ir},
    };
    for (const auto& [key, axis] : table) {
        if (name == key) return axis;
    }
    return std::nullopt;
}

AxisGrid linear_axis(SweepAxis axis, double lo, double hi, int points) {
    if (points < 1 || (points > 1 && !(lo < hi))) {
        throw std::invalid_argument("linear_axis: bad grid");
    }
    return {axis, linspace(lo, hi, points)};
}

AxisGrid log_axis(SweepAxis axis, double lo, double hi, int points) {
    if (points < 1 || !(lo > 0.0) || (points > 1 && !(lo < hi))) {
        throw std::invalid_argument("log_axis: bad grid");
    }
    AxisGrid grid{axis, linspace(std::log10(lo), std::log10(hi), points)};
    for (double& v : grid.values) v = std::pow(10.0, v);
    grid.values.front() = lo;
    grid.values.back() = hi;
    return grid;
}

namespace {

double mode_delta(const model::SystemParams& p) {
    if (const auto* fd = std::get_if<model::FixedDelta>(&p.detuning_mode)) return fd->delta_thz;
    if (const auto* pg = std::get_if<model::PrescribedGa>(&p.detuning_mode)) return pg->delta_thz;
    return std::get<model::FixedDelta0>(p.detuning_mode).delta0_thz;
}

void apply_axis_value(model::SystemParams& p, SweepAxis axis, double value, double base_delta,
                      double& omega_ir) {
    switch (axis) {
        case SweepAxis::ga:
            p.detuning_mode = model::PrescribedGa{value, base_delta};
            break;
        case SweepAxis::n_molecules:
            p.n_molecules = value;
            break;
        case SweepAxis::kappa_a:
            p.kappa_a = value;
            break;
        case SweepAxis::kappa_c:
            p.kappa_c = value;
            break;
        case SweepAxis::gamma_B:
            p.gamma_B = value;
            break;
        case SweepAxis::g_a:
            p.g_a = value;
            break;
        case SweepAxis::g_c:
            p.g_c = value;
            break;
        case SweepAxis::eps_p:
            p.eps_p = value;
            break;
        case SweepAxis::delta:
            if (auto* fd = std::get_if<model::FixedDelta>(&p.detuning_mode)) {
                fd->delta_thz = value;
            } else if (auto* pg = std::get_if<model::PrescribedGa>(&p.detuning_mode)) {
                pg->delta_thz = value;
            } else {
                std::get<model::FixedDelta0>(p.detuning_mode).delta0_thz = value;
            }
            break;
        case SweepAxis::omega_ir:
            omega_ir = value;
            break;
    }
}

void evaluate_point(const model::SystemParams& params, double omega_ir,
                    const SweepMetrics& metrics, SweepRecord& record) {
    const auto validated = model::validate(params);
    response::OperatingPoint op = response::operating_point(validated);
    record.ga_abs = std::abs(op.calG_a);

    if (metrics.ga_star) {
        const double formula = response::optimal_coupling(op);
        record.ga_star = formula;
        double ga_used = formula;
        if (metrics.reoptimize) {
            const auto best = max_tac_over_ga(op, 0.0, 1.2 * formula);
            ga_used = best.ga;
            record.ga_star = best.ga;
        }
        op = response::with_coupling(op, ga_used);
        record.ga_abs = ga_used;
    }

    bool stable = true;
    if (metrics.stability) {
        // Routh verdict is primary; the spectral abscissa is the margin
        const auto report = stability::stability_report(op);
        record.stable = report.routh_stable;
        record.spectral_abscissa = report.spectral_abscissa;
        stable = *record.stable;
    }

    if (metrics.tac) {
        record.tac = response::solve_response(op, omega_ir).T_ac;
    }

    if (metrics.bandwidth && stable) {
        record.bandwidth = bandwidth(op);
    }
}

}  // namespace

SweepResult sweep(const model::ValidatedParams& p, std::vector<AxisGrid> axes,
                  const SweepMetrics& metrics, int threads) {
    if (axes.empty() || axes.size() > 2) {
        throw std::invalid_argument("sweep: one or two axes required");
    }

    SweepResult result;
    result.base = p.get();
    result.axes = std::move(axes);

    bool has_ga_axis = false;
    for (const auto& axis : result.axes) {
        if (axis.axis == SweepAxis::ga) has_ga_axis = true;
    }
    // coupling sweeps prescribe |calG_a| directly at the base detuning
    double base_delta = 0.0;
    if (has_ga_axis) {
        if (std::holds_alternative<model::FixedDelta0>(p->detuning_mode)) {
            base_delta = steady::solve_self_consistent(p).delta_eff;
        } else {
            base_delta = mode_delta(p.get());
        }
    }

    const std::size_t outer = result.axes[0].values.size();
    const std::size_t inner = result.axes.size() == 2 ? result.axes[1].values.size() : 1;
    result.records.assign(outer * inner, SweepRecord{});

    parallel_for(outer * inner, threads, [&](std::size_t idx) {
        SweepRecord& record = result.records[idx];
        model::SystemParams point = result.base;
        double omega_ir = point.nu_b;
        apply_axis_value(point, result.axes[0].axis, result.axes[0].values[idx / inner],
                         base_delta, omega_ir);
        if (result.axes.size() == 2) {
            apply_axis_value(point, result.axes[1].axis, result.axes[1].values[idx % inner],
                             base_delta, omega_ir);
        }
        try {
            evaluate_point(point, omega_ir, metrics, record);
        } catch (const Error& e) {
            record.error = e.what();
        }
    });
    return result;
}

model::SystemParams preset_base_params(model::DetuningMode mode) {
    model::SystemParams p;
    p.nu_b = 30.0;
    p.nu_c = 30.0;
    p.kappa_a = 30.0;
    p.kappa_c = 0.5;
    p.gamma_B = 0.16;
    p.g_a = 0.08;  // GHz
    p.g_c = 0.1;   // GHz
    p.n_molecules = 1e7;
    p.eps_p = 500.0;
    p.eps_ir = 1.0;  // GHz
    p.detuning_mode = mode;
    return p;
}

std::vector<std::string> figure_preset_names() {
    return {"fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b"};
}

FigureBundle figure_preset(const std::string& name, int threads, bool reoptimize) {
    const model::DetuningMode prescribed = model::PrescribedGa{0.0, -30.0};
    const model::DetuningMode fixed = model::FixedDelta{-30.0};

    if (name == "fig2a") {
        const auto p = model::validate(preset_base_params(prescribed));
        SweepMetrics m;
        return {name, sweep(p, {linear_axis(SweepAxis::ga, 0.0, 4.0, 400)}, m, threads)};
    }
    if (name == "fig2b") {
        const auto p = model::validate(preset_base_params(fixed));
        SweepMetrics m;
        return {name, sweep(p, {log_axis(SweepAxis::n_molecules, 1e3, 1e10, 400)}, m, threads)};
    }
    if (name == "fig3a" || name == "fig3b") {
        const auto p = model::validate(preset_base_params(prescribed));
        SweepMetrics m;
        m.ga_star = true;
        m.reoptimize = reoptimize;
        return {name, sweep(p,
                            {linear_axis(SweepAxis::kappa_a, 2.0, 30.0, 60),
                             linear_axis(SweepAxis::kappa_c, 0.1, 3.0, 60)},
                            m, threads)};
    }
    if (name == "fig4a") {
        const auto p = model::validate(preset_base_params(prescribed));
        SweepMetrics m;
        m.stability = false;
        return {name, sweep(p,
                            {AxisGrid{SweepAxis::ga, {3.0, 3.2, 3.4}},
                             linear_axis(SweepAxis::omega_ir, 29.0, 31.0, 2001)},
                            m, threads)};
    }
    if (name == "fig4b") {
        const auto p = model::validate(preset_base_params(prescribed));
        SweepMetrics m;
        m.tac = false;
        m.bandwidth = true;
        return {name, sweep(p, {linear_axis(SweepAxis::ga, 0.0, 4.0, 400)}, m, threads)};
    }
    throw ConfigError("unknown figure preset '" + name + "'");
}

}  // namespace molopt::analysis
