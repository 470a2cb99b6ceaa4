#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "molopt/model.hpp"
#include "molopt/response.hpp"
#include "molopt/stability.hpp"

namespace molopt::analysis {

// Sampled conversion-efficiency spectrum. Gain poles are kept as explicit
// markers rather than infinities.
struct SpectrumCurve {
    std::vector<double> omega_ir;  // THz, strictly ascending
    std::vector<double> t_ac;      // NaN at marked poles
    std::vector<std::uint8_t> diverged;  // not vector<bool>: filled concurrently by index
    response::OperatingPoint op;

    std::size_t argmax() const;
    double peak() const;
};

// Evaluates the exact response point by point. threads <= 1 runs serially;
// results are identical for every thread count.
SpectrumCurve tac_spectrum(const response::OperatingPoint& op, double lo, double hi, int points,
                           int threads = 1);

// Full width at half maximum of the efficiency spectrum. Starts from a wide
// scan around the vibrational resonance and refines around the peak until
// the width changes by less than 0.1%. Throws PoleInBandError when the
// efficiency diverges inside the band and HalfMaxNotBracketedError when the
// curve never falls to half maximum even after widening the scan.
double bandwidth(const response::OperatingPoint& op, int threads = 1);

struct CouplingOptimum {
    double ga;    // THz
    double t_ac;  // resonant conversion efficiency at the optimum
};

// Maximum resonant conversion efficiency over the coupling magnitude in
// [lo, hi]. A 64-point pre-scan brackets the peak and drops the unstable
// tail, then golden-section refinement. Throws AllUnstableError when no
// scanned point is stable.
CouplingOptimum max_tac_over_ga(const response::OperatingPoint& op, double lo, double hi);

enum class SweepAxis {
    ga,
    n_molecules,
    kappa_a,
    kappa_c,
    gamma_B,
    g_a,
    g_c,
    eps_p,
    delta,
    omega_ir,
};

const char* axis_name(SweepAxis axis);
std::optional<SweepAxis> axis_from_name(const std::string& name);

struct AxisGrid {
    SweepAxis axis;
    std::vector<double> values;
};

AxisGrid linear_axis(SweepAxis axis, double lo, double hi, int points);
AxisGrid log_axis(SweepAxis axis, double lo, double hi, int points);

// Which per-point quantities a sweep evaluates.
struct SweepMetrics {
    bool tac = true;         // conversion efficiency at the signal frequency
    bool stability = true;   // Routh verdict and spectral abscissa
    bool bandwidth = false;  // FWHM of the spectrum (stable points only)
    bool ga_star = false;    // evaluate at the formula-optimal coupling
    bool reoptimize = false; // numeric re-optimization instead of the formula value
};

struct SweepRecord {
    std::optional<double> tac;
    std::optional<double> bandwidth;
    std::optional<double> ga_star;
    std::optional<double> ga_abs;  // |calG_a| actually used at this point
    std::optional<bool> stable;
    std::optional<double> spectral_abscissa;
    std::string error;  // empty when the point evaluated cleanly
};

// Grid of parameter points with per-point metrics. Records are stored in
// grid order (first axis outermost) and never depend on the execution
// schedule.
struct SweepResult {
    std::vector<AxisGrid> axes;  // one or two
    std::vector<SweepRecord> records;
    model::SystemParams base;
};

// Evaluates the metrics over a 1D or 2D grid. Per-point failures are
// recorded in the corresponding record and never abort the sweep.
SweepResult sweep(const model::ValidatedParams& p, std::vector<AxisGrid> axes,
                  const SweepMetrics& metrics, int threads = 1);

// Parameter set shared by the bundled figure presets.
model::SystemParams preset_base_params(model::DetuningMode mode);

struct FigureBundle {
    std::string name;
    SweepResult result;
};

// Canned sweeps behind the bundled figures: fig2a, fig2b, fig3a, fig3b,
// fig4a, fig4b. Grids are fixed here so outputs are reproducible.
FigureBundle figure_preset(const std::string& name, int threads = 1, bool reoptimize = false);

std::vector<std::string> figure_preset_names();

}  // namespace molopt::analysis
