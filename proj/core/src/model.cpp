#include "molopt/model.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace molopt::model {

using nlohmann::json;

const char* unit_note() {
    return "All frequencies are ordinary frequencies nu = omega/2pi in THz "
           "(g_a, g_c, eps_ir in GHz). Every implemented formula is homogeneous "
           "in frequency, so nu-valued inputs give the same dimensionless "
           "efficiencies and THz-valued margins as angular frequencies.";
}

namespace {

bool finite(double v) { return std::isfinite(v); }

void require_finite(std::vector<ValidationIssue>& issues, double v, const char* name) {
    if (!finite(v)) {
        issues.push_back({"NonFiniteValue", std::string(name) + " is not finite"});
    }
}

}  // namespace

std::vector<ValidationIssue> check_params(const SystemParams& p) {
    std::vector<ValidationIssue> issues;

    require_finite(issues, p.nu_b, "nu_b");
    require_finite(issues, p.nu_c, "nu_c");
    require_finite(issues, p.kappa_a, "kappa_a");
    require_finite(issues, p.kappa_c, "kappa_c");
    require_finite(issues, p.gamma_B, "gamma_B");
    require_finite(issues, p.g_a, "g_a");
    require_finite(issues, p.g_c, "g_c");
    require_finite(issues, p.n_molecules, "n_molecules");
    require_finite(issues, p.eps_p, "eps_p");
    require_finite(issues, p.eps_ir, "eps_ir");
    if (p.nu_p && !finite(*p.nu_p)) {
        issues.push_back({"NonFiniteValue", "nu_p is not finite"});
    }

    if (finite(p.kappa_a) && p.kappa_a <= 0.0)
        issues.push_back({"NonPositiveDecayRate", "kappa_a must be > 0"});
    if (finite(p.kappa_c) && p.kappa_c <= 0.0)
        issues.push_back({"NonPositiveDecayRate", "kappa_c must be > 0"});
    if (finite(p.gamma_B) && p.gamma_B <= 0.0)
        issues.push_back({"NonPositiveDecayRate", "gamma_B must be > 0"});
    if (finite(p.nu_b) && p.nu_b <= 0.0)
        issues.push_back({"NonPositiveFrequency", "nu_b must be > 0"});
    if (finite(p.nu_c) && p.nu_c <= 0.0)
        issues.push_back({"NonPositiveFrequency", "nu_c must be > 0"});
    if (finite(p.n_molecules) && p.n_molecules < 1.0)
        issues.push_back({"InvalidMoleculeCount", "n_molecules must be >= 1"});
    if (finite(p.eps_p) && p.eps_p < 0.0)
        issues.push_back({"NegativeAmplitude", "eps_p must be >= 0"});
    if (finite(p.eps_ir) && p.eps_ir < 0.0)
        issues.push_back({"NegativeAmplitude", "eps_ir must be >= 0"});
    if (finite(p.g_a) && p.g_a < 0.0)
        issues.push_back({"NegativeCoupling", "g_a must be >= 0"});
    if (finite(p.g_c) && p.g_c < 0.0)
        issues.push_back({"NegativeCoupling", "g_c must be >= 0"});

    if (const auto* fd = std::get_if<FixedDelta>(&p.detuning_mode)) {
        if (!finite(fd->delta_thz))
            issues.push_back({"NonFiniteValue", "detuning_mode.delta_thz is not finite"});
    } else if (const auto* fd0 = std::get_if<FixedDelta0>(&p.detuning_mode)) {
        if (!finite(fd0->delta0_thz))
            issues.push_back({"NonFiniteValue", "detuning_mode.delta0_thz is not finite"});
    } else if (const auto* pg = std::get_if<PrescribedGa>(&p.detuning_mode)) {
        if (!finite(pg->ga_thz))
            issues.push_back({"NonFiniteValue", "detuning_mode.ga_thz is not finite"});
        if (!finite(pg->delta_thz))
            issues.push_back({"NonFiniteValue", "detuning_mode.delta_thz is not finite"});
        if (finite(pg->ga_thz) && pg->ga_thz < 0.0)
            issues.push_back({"NegativeCoupling", "detuning_mode.ga_thz must be >= 0"});
    }

    return issues;
}

std::vector<std::string> param_warnings(const SystemParams& p) {
    std::vector<std::string> warnings;
    if (p.eps_p >= 0.0 && p.eps_ir_thz() > 0.01 * p.eps_p) {
        warnings.push_back(
            "eps_ir exceeds 1% of eps_p; the linearized response treats the IR "
            "signal as a perturbation and may not be meaningful here");
    }
    return warnings;
}

ValidatedParams validate(const SystemParams& p) {
    auto issues = check_params(p);
    if (!issues.empty()) {
        std::ostringstream os;
        std::vector<std::string> codes;
        os << "invalid parameters:";
        for (const auto& issue : issues) {
            os << "\n  [" << issue.code << "] " << issue.message;
            codes.push_back(issue.code);
        }
        throw ValidationError(os.str(), std::move(codes));
    }
    return ValidatedParams(p, param_warnings(p));
}

CollectiveCouplings collective_couplings(const ValidatedParams& p) {
    const double root_n = std::sqrt(p->n_molecules);
    return {p->g_a_thz() * root_n, p->g_c_thz() * root_n};
}

namespace {

DetuningMode mode_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("detuning_mode must be an object");
    if (!j.contains("type")) throw ConfigError("detuning_mode: missing field 'type'");
    const std::string type = j.at("type").get<std::string>();

    auto expect_keys = [&](std::initializer_list<const char*> keys) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "type") continue;
            bool known = false;
            for (const char* k : keys) {
                if (it.key() == k) known = true;
            }
            if (!known) throw ConfigError("detuning_mode: unknown field '" + it.key() + "'");
        }
        for (const char* k : keys) {
            if (!j.contains(k)) throw ConfigError("detuning_mode: missing field '" + std::string(k) + "'");
        }
    };

    if (type == "fixed_delta") {
        expect_keys({"delta_thz"});
        return FixedDelta{j.at("delta_thz").get<double>()};
    }
    if (type == "fixed_delta0") {
        expect_keys({"delta0_thz"});
        return FixedDelta0{j.at("delta0_thz").get<double>()};
    }
    if (type == "prescribed_ga") {
        expect_keys({"ga_thz", "delta_thz"});
        return PrescribedGa{j.at("ga_thz").get<double>(), j.at("delta_thz").get<double>()};
    }
    throw ConfigError("detuning_mode: unknown type '" + type + "'");
}

json mode_to_json(const DetuningMode& mode) {
    json j;
    if (const auto* fd = std::get_if<FixedDelta>(&mode)) {
        j["type"] = "fixed_delta";
        j["delta_thz"] = fd->delta_thz;
    } else if (const auto* fd0 = std::get_if<FixedDelta0>(&mode)) {
        j["type"] = "fixed_delta0";
        j["delta0_thz"] = fd0->delta0_thz;
    } else if (const auto* pg = std::get_if<PrescribedGa>(&mode)) {
        j["type"] = "prescribed_ga";
        j["ga_thz"] = pg->ga_thz;
        j["delta_thz"] = pg->delta_thz;
    }
    return j;
}

constexpr const char* kKnownFields[] = {"nu_b",    "nu_c",        "kappa_a", "kappa_c",
                                        "gamma_B", "g_a",         "g_c",     "n_molecules",
                                        "eps_p",   "eps_ir",      "nu_p",    "detuning_mode"};

double number_field(const json& j, const char* name) {
    if (!j.contains(name)) throw ConfigError("missing field '" + std::string(name) + "'");
    const json& v = j.at(name);
    if (!v.is_number()) throw ConfigError("field '" + std::string(name) + "' must be a number");
    return v.get<double>();
}

}  // namespace

SystemParams params_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");

    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : kKnownFields) {
            if (it.key() == k) known = true;
        }
        if (!known) throw ConfigError("unknown field '" + it.key() + "'");
    }

    SystemParams p;
    p.nu_b = number_field(j, "nu_b");
    p.nu_c = number_field(j, "nu_c");
    p.kappa_a = number_field(j, "kappa_a");
    p.kappa_c = number_field(j, "kappa_c");
    p.gamma_B = number_field(j, "gamma_B");
    p.g_a = number_field(j, "g_a");
    p.g_c = number_field(j, "g_c");
    p.n_molecules = number_field(j, "n_molecules");
    p.eps_p = number_field(j, "eps_p");
    p.eps_ir = number_field(j, "eps_ir");
    if (!j.contains("detuning_mode")) throw ConfigError("missing field 'detuning_mode'");
    p.detuning_mode = mode_from_json(j.at("detuning_mode"));
    if (j.contains("nu_p")) {
        const json& v = j.at("nu_p");
        if (!v.is_number()) throw ConfigError("field 'nu_p' must be a number");
        p.nu_p = v.get<double>();
    }
    return p;
}

std::string params_to_json(const SystemParams& p, int indent) {
    json j;
    j["nu_b"] = p.nu_b;
    j["nu_c"] = p.nu_c;
    j["kappa_a"] = p.kappa_a;
    j["kappa_c"] = p.kappa_c;
    j["gamma_B"] = p.gamma_B;
    j["g_a"] = p.g_a;
    j["g_c"] = p.g_c;
    j["n_molecules"] = p.n_molecules;
    j["eps_p"] = p.eps_p;
    j["eps_ir"] = p.eps_ir;
    j["detuning_mode"] = mode_to_json(p.detuning_mode);
    if (p.nu_p) j["nu_p"] = *p.nu_p;
    return j.dump(indent);
}

}  // namespace molopt::model
