#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "molopt/errors.hpp"

namespace molopt::model {

// All frequencies in this library are ordinary frequencies nu = omega/2pi,
// quoted in THz (couplings and the signal amplitude in GHz). Every formula
// implemented here is homogeneous in frequency, so evaluating with
// nu-values gives the same dimensionless efficiencies and THz-valued
// margins as angular frequencies would.
const char* unit_note();

// Operating modes for the pump detuning.
struct FixedDelta {
    double delta_thz;  // effective detuning, prescribed
};
struct FixedDelta0 {
    double delta0_thz;  // bare detuning; effective detuning found self-consistently
};
struct PrescribedGa {
    double ga_thz;     // |G_a <a>_ss|, nonnegative magnitude with zero phase
    double delta_thz;  // effective detuning
};
using DetuningMode = std::variant<FixedDelta, FixedDelta0, PrescribedGa>;

struct SystemParams {
    double nu_b = 0.0;      // THz, vibrational frequency
    double nu_c = 0.0;      // THz, IR mode frequency
    double kappa_a = 0.0;   // THz, VIS mode decay rate
    double kappa_c = 0.0;   // THz, IR mode decay rate
    double gamma_B = 0.0;   // THz, collective vibrational decay rate
    double g_a = 0.0;       // GHz, single-molecule optomechanical coupling
    double g_c = 0.0;       // GHz, single-molecule bilinear coupling
    double n_molecules = 1.0;  // continuous for sweeps; physical N is an integer
    double eps_p = 0.0;     // THz, pump amplitude
    double eps_ir = 0.0;    // GHz, IR signal amplitude
    DetuningMode detuning_mode = FixedDelta{0.0};
    std::optional<double> nu_p;  // THz, pump frequency; reporting only

    double eps_ir_thz() const { return eps_ir * 1e-3; }
    double g_a_thz() const { return g_a * 1e-3; }
    double g_c_thz() const { return g_c * 1e-3; }
};

struct CollectiveCouplings {
    double G_a = 0.0;  // THz, g_a * sqrt(N)
    double G_c = 0.0;  // THz, g_c * sqrt(N)
};

struct ValidationIssue {
    std::string code;
    std::string message;
};

// All invariant violations, empty when the parameter set is valid.
std::vector<ValidationIssue> check_params(const SystemParams& p);

// Non-fatal advisories, currently the linearization warning when
// eps_ir > 0.01 * eps_p.
std::vector<std::string> param_warnings(const SystemParams& p);

// Parameter set that passed validation. Only obtainable through validate().
class ValidatedParams {
public:
    const SystemParams& get() const { return params_; }
    const SystemParams& operator*() const { return params_; }
    const SystemParams* operator->() const { return &params_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    friend ValidatedParams validate(const SystemParams& p);
    ValidatedParams(SystemParams p, std::vector<std::string> warnings)
        : params_(std::move(p)), warnings_(std::move(warnings)) {}

    SystemParams params_;
    std::vector<std::string> warnings_;
};

// Throws ValidationError carrying every violated invariant.
ValidatedParams validate(const SystemParams& p);

CollectiveCouplings collective_couplings(const ValidatedParams& p);

// JSON configuration document; field names match SystemParams, the
// detuning mode is a tagged object such as
// {"type": "fixed_delta", "delta_thz": -30.0}. Unknown fields are rejected.
SystemParams params_from_json(const std::string& json_text);
std::string params_to_json(const SystemParams& p, int indent = 2);

}  // namespace molopt::model
