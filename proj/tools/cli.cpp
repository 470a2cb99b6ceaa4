#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "molopt/errors.hpp"
#include "molopt/response.hpp"
#include "molopt/stability.hpp"
#include "molopt/steady_state.hpp"
#include "molopt/version.hpp"

namespace molopt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

// quote text cells that would break the row structure
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        if (ch == '\n') {
            out += ' ';
            continue;
        }
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            if (const double* d = std::get_if<double>(&row[c])) {
                out += format_double(*d);
            } else if (const bool* b = std::get_if<bool>(&row[c])) {
                out += *b ? "true" : "false";
            } else if (const std::string* s = std::get_if<std::string>(&row[c])) {
                out += csv_escape(*s);
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    json j;
    j["columns"] = table.columns;
    json rows = json::array();
    for (const auto& row : table.rows) {
        json jr = json::array();
        for (const auto& cell : row) {
            if (const double* d = std::get_if<double>(&cell)) {
                jr.push_back(*d);
            } else if (const bool* b = std::get_if<bool>(&cell)) {
                jr.push_back(*b);
            } else if (const std::string* s = std::get_if<std::string>(&cell)) {
                jr.push_back(*s);
            } else {
                jr.push_back(nullptr);
            }
        }
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

model::SystemParams load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return model::params_from_json(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

model::SystemParams apply_overrides(model::SystemParams params, std::optional<double> ga,
                                    std::optional<double> delta) {
    if (ga) {
        double delta_used;
        if (delta) {
            delta_used = *delta;
        } else if (const auto* fd = std::get_if<model::FixedDelta>(&params.detuning_mode)) {
            delta_used = fd->delta_thz;
        } else if (const auto* pg = std::get_if<model::PrescribedGa>(&params.detuning_mode)) {
            delta_used = pg->delta_thz;
        } else {
            // fixed_delta0: the coupling override pins the detuning the
            // steady state would have produced
            delta_used = steady::solve_self_consistent(model::validate(params)).delta_eff;
        }
        params.detuning_mode = model::PrescribedGa{*ga, delta_used};
        return params;
    }
    if (delta) {
        if (auto* pg = std::get_if<model::PrescribedGa>(&params.detuning_mode)) {
            pg->delta_thz = *delta;
        } else {
            params.detuning_mode = model::FixedDelta{*delta};
        }
    }
    return params;
}

namespace {

void push_optional(std::vector<Cell>& row, const std::optional<double>& v) {
    if (v) {
        row.emplace_back(*v);
    } else {
        row.emplace_back(std::monostate{});
    }
}

std::string axis_column(analysis::SweepAxis axis) {
    switch (axis) {
        case analysis::SweepAxis::ga: return "ga_thz";
        case analysis::SweepAxis::n_molecules: return "n_molecules";
        case analysis::SweepAxis::kappa_a: return "kappa_a_thz";
        case analysis::SweepAxis::kappa_c: return "kappa_c_thz";
        case analysis::SweepAxis::gamma_B: return "gamma_B_thz";
        case analysis::SweepAxis::g_a: return "g_a_ghz";
        case analysis::SweepAxis::g_c: return "g_c_ghz";
        case analysis::SweepAxis::eps_p: return "eps_p_thz";
        case analysis::SweepAxis::delta: return "delta_thz";
        case analysis::SweepAxis::omega_ir: return "omega_ir_thz";
    }
    return "value";
}

struct GridView {
    const analysis::SweepResult& sweep;

    std::size_t inner() const {
        return sweep.axes.size() == 2 ? sweep.axes[1].values.size() : 1;
    }
    double axis0(std::size_t idx) const { return sweep.axes[0].values[idx / inner()]; }
    double axis1(std::size_t idx) const { return sweep.axes[1].values[idx % inner()]; }
};

}  // namespace

Table preset_table(const analysis::FigureBundle& bundle) {
    const auto& sw = bundle.result;
    const GridView grid{sw};
    Table t;

    if (bundle.name == "fig2a") {
        t.columns = {"ga_thz", "tac", "stable", "spectral_abscissa_thz"};
        for (std::size_t i = 0; i < sw.records.size(); ++i) {
            const auto& r = sw.records[i];
            std::vector<Cell> row{Cell{grid.axis0(i)}};
            push_optional(row, r.tac);
            row.emplace_back(r.stable.value_or(false));
            push_optional(row, r.spectral_abscissa);
            t.rows.push_back(std::move(row));
        }
    } else if (bundle.name == "fig2b") {
        t.columns = {"n_molecules", "ga_thz", "tac", "stable", "spectral_abscissa_thz"};
        for (std::size_t i = 0; i < sw.records.size(); ++i) {
            const auto& r = sw.records[i];
            std::vector<Cell> row{Cell{grid.axis0(i)}};
            push_optional(row, r.ga_abs);
            push_optional(row, r.tac);
            row.emplace_back(r.stable.value_or(false));
            push_optional(row, r.spectral_abscissa);
            t.rows.push_back(std::move(row));
        }
    } else if (bundle.name == "fig3a") {
        t.columns = {"kappa_a_thz", "kappa_c_thz", "tac_max", "ga_star_thz", "stable",
                     "spectral_abscissa_thz"};
        for (std::size_t i = 0; i < sw.records.size(); ++i) {
            const auto& r = sw.records[i];
            std::vector<Cell> row{Cell{grid.axis0(i)}, Cell{grid.axis1(i)}};
            push_optional(row, r.tac);
            push_optional(row, r.ga_star);
            row.emplace_back(r.stable.value_or(false));
            push_optional(row, r.spectral_abscissa);
            t.rows.push_back(std::move(row));
        }
    } else if (bundle.name == "fig3b") {
        t.columns = {"kappa_a_thz", "kappa_c_thz", "ga_star_thz"};
        for (std::size_t i = 0; i < sw.records.size(); ++i) {
            std::vector<Cell> row{Cell{grid.axis0(i)}, Cell{grid.axis1(i)}};
            push_optional(row, sw.records[i].ga_star);
            t.rows.push_back(std::move(row));
        }
    } else if (bundle.name == "fig4a") {
        t.columns = {"ga_thz", "omega_ir_thz", "tac", "diverged"};
        for (std::size_t i = 0; i < sw.records.size(); ++i) {
            const auto& r = sw.records[i];
            std::vector<Cell> row{Cell{grid.axis0(i)}, Cell{grid.axis1(i)}};
            push_optional(row, r.tac);
            row.emplace_back(!r.error.empty());
            t.rows.push_back(std::move(row));
        }
    } else if (bundle.name == "fig4b") {
        t.columns = {"ga_thz", "bandwidth_thz", "stable"};
        for (std::size_t i = 0; i < sw.records.size(); ++i) {
            const auto& r = sw.records[i];
            std::vector<Cell> row{Cell{grid.axis0(i)}};
            push_optional(row, r.bandwidth);
            row.emplace_back(r.stable.value_or(false));
            t.rows.push_back(std::move(row));
        }
    } else {
        throw ConfigError("unknown figure preset '" + bundle.name + "'");
    }
    return t;
}

Table sweep_table(const analysis::SweepResult& sw, const analysis::SweepMetrics& metrics) {
    const GridView grid{sw};
    Table t;
    for (const auto& axis : sw.axes) t.columns.push_back(axis_column(axis.axis));
    t.columns.push_back("ga_thz");
    if (metrics.ga_star) t.columns.push_back("ga_star_thz");
    if (metrics.tac) t.columns.push_back("tac");
    if (metrics.bandwidth) t.columns.push_back("bandwidth_thz");
    if (metrics.stability) {
        t.columns.push_back("stable");
        t.columns.push_back("spectral_abscissa_thz");
    }
    t.columns.push_back("error");

    for (std::size_t i = 0; i < sw.records.size(); ++i) {
        const auto& r = sw.records[i];
        std::vector<Cell> row{Cell{grid.axis0(i)}};
        if (sw.axes.size() == 2) row.emplace_back(grid.axis1(i));
        push_optional(row, r.ga_abs);
        if (metrics.ga_star) push_optional(row, r.ga_star);
        if (metrics.tac) push_optional(row, r.tac);
        if (metrics.bandwidth) push_optional(row, r.bandwidth);
        if (metrics.stability) {
            if (r.stable) {
                row.emplace_back(*r.stable);
            } else {
                row.emplace_back(std::monostate{});
            }
            push_optional(row, r.spectral_abscissa);
        }
        row.emplace_back(r.error);
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
}

json error_summary(const analysis::SweepResult& sw) {
    json j;
    std::size_t count = 0;
    json samples = json::array();
    for (const auto& r : sw.records) {
        if (r.error.empty()) continue;
        if (samples.size() < 3) samples.push_back(r.error);
        ++count;
    }
    j["points_with_errors"] = count;
    j["total_points"] = sw.records.size();
    if (!samples.empty()) j["samples"] = std::move(samples);
    return j;
}

json axes_summary(const analysis::SweepResult& sw) {
    json axes = json::array();
    for (const auto& axis : sw.axes) {
        json a;
        a["name"] = analysis::axis_name(axis.axis);
        a["points"] = axis.values.size();
        a["min"] = axis.values.front();
        a["max"] = axis.values.back();
        axes.push_back(std::move(a));
    }
    return axes;
}

// Manifest emitted next to every output file. Deliberately carries no
// timestamp so reruns stay byte-identical.
json make_manifest(const std::string& command, const model::SystemParams& params,
                   const std::vector<std::string>& outputs) {
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["parameters"] = json::parse(model::params_to_json(params));
    j["outputs"] = outputs;
    return j;
}

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<double> ga;
    std::optional<double> delta;
    std::optional<double> omega_ir;
    int points = 0;
    int threads = 1;
    bool json_mirror = false;
};

model::ValidatedParams resolved_params(const CommonOptions& opt) {
    auto params = load_config(opt.config_path);
    params = apply_overrides(params, opt.ga, opt.delta);
    auto validated = model::validate(params);
    for (const auto& w : validated.warnings()) {
        std::cerr << "warning: " << w << "\n";
    }
    return validated;
}

std::string complex_str(const std::complex<double>& z) {
    std::ostringstream os;
    os.precision(9);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

int cmd_steady(const CommonOptions& opt) {
    const auto p = resolved_params(opt);
    if (std::holds_alternative<model::PrescribedGa>(p->detuning_mode)) {
        std::cerr << "error: prescribed_ga mode bypasses the steady state\n";
        return 1;
    }
    const auto ss = steady::solve_self_consistent(p);

    if (opt.json_mirror) {
        json j;
        j["delta_eff_thz"] = ss.delta_eff;
        j["delta0_thz"] = ss.delta0;
        j["a_ss"] = {ss.a_ss.real(), ss.a_ss.imag()};
        j["B_ss"] = {ss.B_ss.real(), ss.B_ss.imag()};
        j["c_ss"] = {ss.c_ss.real(), ss.c_ss.imag()};
        j["calG_a_abs_thz"] = std::abs(ss.calG_a);
        j["x_B"] = ss.x_b();
        j["max_residual"] = ss.max_residual;
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::printf("delta_eff_thz     %.9g\n", ss.delta_eff);
    std::printf("delta0_thz        %.9g\n", ss.delta0);
    std::printf("a_ss              %s  (|a_ss| = %.9g)\n", complex_str(ss.a_ss).c_str(),
                std::abs(ss.a_ss));
    std::printf("B_ss              %s\n", complex_str(ss.B_ss).c_str());
    std::printf("c_ss              %s\n", complex_str(ss.c_ss).c_str());
    std::printf("calG_a_abs_thz    %.9g\n", std::abs(ss.calG_a));
    std::printf("x_B               %.9g\n", ss.x_b());
    std::printf("max_residual      %.3g\n", ss.max_residual);

    if (std::holds_alternative<model::FixedDelta0>(p->detuning_mode)) {
        const auto branches = steady::solve_cubic_branches(p);
        std::printf("branches          %zu", branches.size());
        for (const auto& b : branches) std::printf("  [%d] x_B=%.6g", b.branch_id, b.x_b());
        std::printf("\n");
    }
    return 0;
}

int cmd_response(const CommonOptions& opt) {
    const auto p = resolved_params(opt);
    const auto op = response::operating_point(p);
    const double omega = opt.omega_ir.value_or(p->nu_b);
    const auto rc = response::solve_response(op, omega);

    if (opt.json_mirror) {
        json j;
        j["omega_ir_thz"] = rc.omega_ir;
        j["T_ac"] = rc.T_ac;
        j["T_ac_antistokes"] = rc.T_ac_antistokes;
        j["t_ac"] = {rc.t_ac.real(), rc.t_ac.imag()};
        j["a_out_minus"] = {rc.a_out_minus.real(), rc.a_out_minus.imag()};
        j["a_out_plus"] = {rc.a_out_plus.real(), rc.a_out_plus.imag()};
        if (p->nu_p) j["stokes_line_thz"] = *p->nu_p - omega;
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::printf("omega_ir_thz      %.9g\n", rc.omega_ir);
    std::printf("T_ac              %.9g\n", rc.T_ac);
    std::printf("T_ac_antistokes   %.9g\n", rc.T_ac_antistokes);
    std::printf("t_ac              %s\n", complex_str(rc.t_ac).c_str());
    std::printf("a_out_minus       %s\n", complex_str(rc.a_out_minus).c_str());
    if (p->nu_p) {
        std::printf("stokes_line_thz   %.9g\n", *p->nu_p - omega);
    }
    return 0;
}

int cmd_spectrum(const CommonOptions& opt, std::optional<double> omega_min,
                 std::optional<double> omega_max) {
    const auto p = resolved_params(opt);
    const auto op = response::operating_point(p);
    const double lo = omega_min.value_or(p->nu_b - 5.0);
    const double hi = omega_max.value_or(p->nu_b + 5.0);
    const int points = opt.points > 0 ? opt.points : 2001;

    const auto curve = analysis::tac_spectrum(op, lo, hi, points, opt.threads);

    Table t;
    t.columns = {"omega_ir_thz", "tac", "diverged"};
    std::size_t poles = 0;
    for (std::size_t i = 0; i < curve.omega_ir.size(); ++i) {
        std::vector<Cell> row{Cell{curve.omega_ir[i]}};
        if (curve.diverged[i]) {
            row.emplace_back(std::monostate{});
            ++poles;
        } else {
            row.emplace_back(curve.t_ac[i]);
        }
        row.emplace_back(static_cast<bool>(curve.diverged[i]));
        t.rows.push_back(std::move(row));
    }

    fs::create_directories(opt.out_dir);
    const fs::path csv_path = fs::path(opt.out_dir) / "spectrum.csv";
    write_file(csv_path, to_csv(t));
    std::vector<std::string> outputs{csv_path.filename().string()};
    if (opt.json_mirror) {
        const fs::path json_path = fs::path(opt.out_dir) / "spectrum.json";
        write_file(json_path, to_json(t));
        outputs.push_back(json_path.filename().string());
    }
    json manifest = make_manifest("spectrum", p.get(), outputs);
    manifest["grid"] = {{"omega_min_thz", lo}, {"omega_max_thz", hi}, {"points", points}};
    manifest["poles"] = poles;
    write_file(fs::path(opt.out_dir) / "spectrum.manifest.json", manifest.dump(2) + "\n");

    const std::size_t imax = curve.argmax();
    std::printf("wrote %s (%d points, %zu poles)\n", csv_path.string().c_str(), points, poles);
    std::printf("peak T_ac = %.9g at omega_ir = %.9g THz\n", curve.t_ac[imax],
                curve.omega_ir[imax]);
    return 0;
}

int cmd_bandwidth(const CommonOptions& opt) {
    const auto p = resolved_params(opt);
    const auto op = response::operating_point(p);
    const double gamma = analysis::bandwidth(op, opt.threads);
    std::printf("bandwidth_thz     %.9g\n", gamma);
    return 0;
}

int cmd_stability(const CommonOptions& opt) {
    const auto p = resolved_params(opt);
    const auto op = response::operating_point(p);
    const auto report = stability::stability_report(op);

    const char* verdict = report.marginal ? "MARGINAL" : (report.stable() ? "STABLE" : "UNSTABLE");
    std::printf("%s, spectral abscissa %+.9g THz (Routh-Hurwitz %s)\n", verdict,
                report.spectral_abscissa,
                report.routh_borderline ? "borderline"
                                        : (report.methods_agree ? "agrees" : "DISAGREES"));
    if (opt.json_mirror) {
        json j;
        j["verdict"] = verdict;
        j["spectral_abscissa_thz"] = report.spectral_abscissa;
        j["routh_stable"] = report.routh_stable;
        j["methods_agree"] = report.methods_agree;
        j["char_poly"] = report.char_poly.coeffs;
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

analysis::AxisGrid parse_axis_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 4 || parts.size() > 5) {
        throw ConfigError("bad --axis spec '" + spec + "', expected name:lo:hi:n[:log]");
    }
    const auto axis = analysis::axis_from_name(parts[0]);
    if (!axis) throw ConfigError("unknown sweep axis '" + parts[0] + "'");
    double lo, hi;
    int n;
    try {
        lo = std::stod(parts[1]);
        hi = std::stod(parts[2]);
        n = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw ConfigError("bad --axis numbers in '" + spec + "'");
    }
    bool log_scale = false;
    if (parts.size() == 5) {
        if (parts[4] == "log") {
            log_scale = true;
        } else if (parts[4] != "lin") {
            throw ConfigError("bad --axis scale '" + parts[4] + "', expected lin or log");
        }
    }
    return log_scale ? analysis::log_axis(*axis, lo, hi, n)
                     : analysis::linear_axis(*axis, lo, hi, n);
}

int cmd_sweep(const CommonOptions& opt, const std::vector<std::string>& axis_specs,
              bool with_bandwidth) {
    const auto p = resolved_params(opt);
    std::vector<analysis::AxisGrid> axes;
    for (const auto& spec : axis_specs) axes.push_back(parse_axis_spec(spec));

    analysis::SweepMetrics metrics;
    metrics.bandwidth = with_bandwidth;
    const auto result = analysis::sweep(p, std::move(axes), metrics, opt.threads);
    const Table t = sweep_table(result, metrics);

    fs::create_directories(opt.out_dir);
    const fs::path csv_path = fs::path(opt.out_dir) / "sweep.csv";
    write_file(csv_path, to_csv(t));
    std::vector<std::string> outputs{csv_path.filename().string()};
    if (opt.json_mirror) {
        const fs::path json_path = fs::path(opt.out_dir) / "sweep.json";
        write_file(json_path, to_json(t));
        outputs.push_back(json_path.filename().string());
    }
    json manifest = make_manifest("sweep", p.get(), outputs);
    manifest["axes"] = axes_summary(result);
    manifest["errors"] = error_summary(result);
    write_file(fs::path(opt.out_dir) / "sweep.manifest.json", manifest.dump(2) + "\n");

    std::printf("wrote %s (%zu points)\n", csv_path.string().c_str(), result.records.size());
    return 0;
}

int cmd_fig(const std::string& preset, const CommonOptions& opt, bool reoptimize) {
    const auto bundle = analysis::figure_preset(preset, opt.threads, reoptimize);
    const Table t = preset_table(bundle);

    fs::create_directories(opt.out_dir);
    const fs::path csv_path = fs::path(opt.out_dir) / (preset + ".csv");
    write_file(csv_path, to_csv(t));
    std::vector<std::string> outputs{csv_path.filename().string()};
    if (opt.json_mirror) {
        const fs::path json_path = fs::path(opt.out_dir) / (preset + ".json");
        write_file(json_path, to_json(t));
        outputs.push_back(json_path.filename().string());
    }
    json manifest = make_manifest("fig", bundle.result.base, outputs);
    manifest["preset"] = preset;
    manifest["axes"] = axes_summary(bundle.result);
    manifest["errors"] = error_summary(bundle.result);
    write_file(fs::path(opt.out_dir) / (preset + ".manifest.json"), manifest.dump(2) + "\n");

    std::printf("wrote %s (%zu rows)\n", csv_path.string().c_str(), t.rows.size());
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"molecular optomechanical up-conversion amplifier toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOptions opt;
    std::optional<double> omega_min, omega_max;
    std::vector<std::string> axis_specs;
    bool with_bandwidth = false;
    bool reoptimize = false;
    std::string preset;

    const auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* cfg = cmd->add_option("--config", opt.config_path, "JSON parameter file");
        if (needs_config) cfg->required();
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_option("--ga", opt.ga, "override |calG_a| in THz (prescribed-coupling mode)");
        cmd->add_option("--delta", opt.delta, "override the effective detuning in THz");
        cmd->add_option("--omega-ir", opt.omega_ir, "signal frequency in THz");
        cmd->add_option("--points", opt.points, "grid point count");
        cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
        cmd->add_flag("--json", opt.json_mirror, "also emit JSON");
    };

    auto* steady_cmd = app.add_subcommand("steady", "solve the self-consistent steady state");
    add_common(steady_cmd, true);
    auto* response_cmd = app.add_subcommand("response", "linearized response at one frequency");
    add_common(response_cmd, true);
    auto* spectrum_cmd = app.add_subcommand("spectrum", "conversion-efficiency spectrum");
    add_common(spectrum_cmd, true);
    spectrum_cmd->add_option("--omega-min", omega_min, "scan start in THz");
    spectrum_cmd->add_option("--omega-max", omega_max, "scan end in THz");
    auto* bandwidth_cmd = app.add_subcommand("bandwidth", "FWHM of the efficiency spectrum");
    add_common(bandwidth_cmd, true);
    auto* stability_cmd = app.add_subcommand("stability", "Routh-Hurwitz and eigenvalue verdict");
    add_common(stability_cmd, true);
    auto* sweep_cmd = app.add_subcommand("sweep", "1D/2D parameter sweep");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--axis", axis_specs, "axis spec name:lo:hi:n[:log]")
        ->required()
        ->expected(1, 2);
    sweep_cmd->add_flag("--bandwidth", with_bandwidth, "also compute the FWHM per point");
    auto* fig_cmd = app.add_subcommand("fig", "reproduce a bundled figure");
    add_common(fig_cmd, false);
    fig_cmd->add_option("--preset", preset, "figure name (fig2a..fig4b)")->required();
    fig_cmd->add_flag("--reoptimize", reoptimize, "numeric coupling optimization in fig3 presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // normalize CLI11's exit codes: help/version are success, every other
        // usage problem is a validation error
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (steady_cmd->parsed()) return cmd_steady(opt);
        if (response_cmd->parsed()) return cmd_response(opt);
        if (spectrum_cmd->parsed()) return cmd_spectrum(opt, omega_min, omega_max);
        if (bandwidth_cmd->parsed()) return cmd_bandwidth(opt);
        if (stability_cmd->parsed()) return cmd_stability(opt);
        if (sweep_cmd->parsed()) return cmd_sweep(opt, axis_specs, with_bandwidth);
        if (fig_cmd->parsed()) return cmd_fig(preset, opt, reoptimize);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("molopt");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(storage.size());
    for (const auto& s : storage) argv.push_back(s.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace molopt::cli
