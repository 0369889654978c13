#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "usc/cli.hpp"
#include "usc/dynamics.hpp"
#include "usc/error.hpp"
#include "usc/kernels.hpp"
#include "usc/polaron.hpp"

namespace usc {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Numbers in the manifest carry the same 12 digits as the tables.
Json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::strtod(format_number(v).c_str(), nullptr);
}

const char* dispersion_name(Dispersion d) { return d == Dispersion::CosineHard ? "cosine" : "linear"; }

const char* grid_name(GridSpacing g) {
    switch (g) {
        case GridSpacing::Uniform: return "uniform";
        case GridSpacing::Logarithmic: return "log";
        case GridSpacing::Automatic: break;
    }
    return "auto";
}

struct Output {
    std::vector<std::string> files;
    Json results = Json::object();
    std::vector<std::string> warnings;
};

class Writer {
public:
    Writer(const RunConfig& cfg, Output& out) : cfg_(cfg), out_(out) {}

    void table(const std::string& stem, const Table& t) {
        const std::string name = stem + (cfg_.format == OutputFormat::Csv ? ".csv" : ".json");
        emit_table(t, cfg_.output_path / name, cfg_.format);
        out_.files.push_back(name);
    }

private:
    const RunConfig& cfg_;
    Output& out_;
};

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
    to.insert(to.end(), from.begin(), from.end());
}

std::vector<double> summary_row(double alpha, const Lineshape& ls, double delta) {
    return {alpha,
            ls.delta_tilde / delta,
            ls.omega_reson / delta,
            ls.peak_reflectivity,
            ls.fwhm ? *ls.fwhm / delta : kNaN,
            ls.alpha_lower.value_or(kNaN),
            ls.asymmetry.value_or(kNaN)};
}

const std::vector<std::string> kSummaryColumns = {"alpha", "delta_tilde", "omega_reson", "peak_R",
                                                  "fwhm",  "alpha_lower", "asymmetry"};

Lineshape scan_for(const ModelParams& params, const RunConfig& cfg) {
    const ModeGrid grid = build_grid(params);
    const PolaronSolution sol = solve_self_consistent(params, grid);
    Lineshape ls = lineshape_from_solution(sol, grid, cfg.scattering, cfg.omega_min * sol.delta_tilde,
                                           cfg.omega_max * sol.delta_tilde, cfg.n_points);
    append(ls.diagnostics, sol.warnings);
    return ls;
}

void run_polaron(const RunConfig& cfg, Writer& w, Output& out) {
    const auto& m = cfg.model;
    const ModeGrid grid = build_grid(m);
    const PolaronSolution sol = solve_self_consistent(m, grid);
    append(out.warnings, sol.warnings);
    const double asym = m.alpha < 1.0 ? asymptotic_gap(m) : kNaN;

    Table t{{"alpha", "delta_tilde", "asymptotic_gap", "iterations", "residual", "used_bisection"}, {}};
    t.add_row({m.alpha, sol.delta_tilde / m.delta, asym / m.delta, static_cast<double>(sol.iterations),
               sol.residual, sol.used_bisection ? 1.0 : 0.0});
    w.table("polaron", t);
    out.results["delta_tilde"] = num(sol.delta_tilde / m.delta);
    out.results["iterations"] = sol.iterations;
}

void run_lineshape(const RunConfig& cfg, Writer& w, Output& out) {
    const double d = cfg.model.delta;
    const Lineshape ls = scan_for(cfg.model, cfg);
    append(out.warnings, ls.diagnostics);

    Table t{{"omega", "R", "T", "re_r", "im_r", "re_t", "im_t", "delta_L", "gamma"}, {}};
    for (const auto& p : ls.points) {
        t.add_row({p.omega / d, p.amp.reflectivity, p.amp.transmissivity, p.amp.r.real(), p.amp.r.imag(),
                   p.amp.t.real(), p.amp.t.imag(), p.lamb_shift / d, p.decay_rate / d});
    }
    w.table("lineshape", t);

    Table s{kSummaryColumns, {}};
    s.add_row(summary_row(cfg.model.alpha, ls, d));
    w.table("lineshape_summary", s);
    out.results["delta_tilde"] = num(ls.delta_tilde / d);
    out.results["omega_reson"] = num(ls.omega_reson / d);
}

void run_sweep(const RunConfig& cfg, Writer& w, Output& out) {
    const double d = cfg.model.delta;
    std::vector<std::future<Lineshape>> jobs;
    jobs.reserve(cfg.alphas.size());
    for (const double a : cfg.alphas) {
        ModelParams p = cfg.model;
        p.alpha = a;
        jobs.push_back(std::async(std::launch::async, [p, &cfg] { return scan_for(p, cfg); }));
    }

    Table surface{{"alpha", "omega", "R", "T"}, {}};
    Table summary{kSummaryColumns, {}};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Lineshape ls = jobs[i].get();
        const double a = cfg.alphas[i];
        for (const auto& p : ls.points) surface.add_row({a, p.omega / d, p.amp.reflectivity, p.amp.transmissivity});
        summary.add_row(summary_row(a, ls, d));
        for (const auto& msg : ls.diagnostics) out.warnings.push_back("alpha " + format_number(a) + ": " + msg);
    }
    w.table("sweep_surface", surface);
    w.table("sweep_summary", summary);
}

void run_emission(const RunConfig& cfg, Writer& w, Output& out) {
    const double d = cfg.model.delta;
    const EmissionTrace trace = emission_run(cfg.model, cfg.t_max / d, cfg.n_samples);
    append(out.warnings, trace.warnings);

    Table t{{"t", "p_e", "n_total"}, {}};
    for (std::size_t i = 0; i < trace.times.size(); ++i) t.add_row({trace.times[i] * d, trace.p_e[i], trace.n_total[i]});
    w.table("emission", t);

    Table s{{"omega", "n_k"}, {}};
    for (std::size_t k = 0; k < trace.spectrum.size(); ++k) s.add_row({trace.spectrum_omega[k] / d, trace.spectrum[k]});
    w.table("emission_spectrum", s);

    const auto rate = fit_decay_rate(trace);
    out.results["delta_tilde"] = num(trace.delta_tilde / d);
    out.results["fitted_decay_rate"] = rate ? num(*rate / d) : Json(nullptr);
    out.results["t_recurrence"] = num(trace.t_recurrence * d);
    out.results["spectral_peak"] = num(spectral_peak(trace) / d);
    out.results["spectral_rms_width"] = num(spectral_rms_width(trace) / d);
}

void run_toulouse(const RunConfig& cfg, Writer& w, Output& out) {
    const auto& m = cfg.model;
    const double d = m.delta;
    const double scale = std::numbers::e * d * d / m.omega_c;
    std::vector<double> scan(static_cast<std::size_t>(cfg.n_points));
    const double lo = std::log(cfg.omega_min), hi = std::log(cfg.omega_max);
    for (int i = 0; i < cfg.n_points; ++i)
        scan[static_cast<std::size_t>(i)] = scale * std::exp(lo + (hi - lo) * i / (cfg.n_points - 1));

    const ToulouseComparison cmp = compare_with_polaron_rwa(d, m.omega_c, scan, cfg.toulouse_gap);
    Table t{{"omega", "R_exact", "T_exact", "arg_r_exact", "arg_t_exact", "R_rwa", "T_rwa", "P1_exact"}, {}};
    for (const auto& p : cmp.points) {
        t.add_row({p.omega / d, p.R_exact, p.T_exact, p.arg_r_exact, p.arg_t_exact, p.R_rwa, p.T_rwa, p.P1_exact});
    }
    w.table("toulouse", t);
    out.results["delta_tilde"] = num(cmp.delta_tilde / d);
    out.results["omega_scale"] = num(scale / d);
}

Json manifest(const RunConfig& cfg, const Output& out) {
    const auto& m = cfg.model;
    Json p = Json::object();
    p["command"] = command_name(cfg.command);
    p["alpha"] = num(m.alpha);
    p["delta"] = num(m.delta);
    p["omega-c"] = num(m.omega_c);
    p["dispersion"] = dispersion_name(m.dispersion);
    p["c"] = num(m.light_speed());
    p["num-modes"] = m.num_modes;
    p["grid"] = grid_name(m.resolved_spacing());
    p["k-max"] = num(m.momentum_cutoff());
    p["log-k-min"] = num(m.log_k_min);
    p["sigma"] = cfg.scattering.resolved_source(m) == SigmaSource::ClosedOhmic ? "closed" : "numeric";
    p["dephasing"] = num(cfg.scattering.dephasing_rate);
    p["markov"] = cfg.scattering.use_markov;
    p["omega-min"] = num(cfg.omega_min);
    p["omega-max"] = num(cfg.omega_max);
    p["points"] = cfg.n_points;
    Json alphas = Json::array();
    for (double a : cfg.alphas) alphas.push_back(num(a));
    p["alphas"] = alphas;
    p["t-max"] = num(cfg.t_max);
    p["samples"] = cfg.n_samples;
    p["toulouse-gap"] = cfg.toulouse_gap == GapModel::Asymptotic ? "asymptotic" : "self-consistent";
    p["out"] = cfg.output_path.generic_string();
    p["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";

    Json sources = Json::object();
    for (const auto& [key, _] : p.items()) {
        const auto it = cfg.sources.find(key);
        sources[key] = it == cfg.sources.end() ? "default" : it->second;
    }

    Json doc = Json::object();
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["command"] = command_name(cfg.command);
    doc["units"] = "frequencies in Delta, times in 1/Delta";
    doc["kernel_backend"] = std::string(kernels::backend_name(kernels::active_backend()));
    doc["parameters"] = p;
    doc["sources"] = sources;
    doc["outputs"] = out.files;
    doc["results"] = out.results;
    doc["warnings"] = out.warnings;
    return doc;
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
    config.validate();
    std::error_code ec;
    std::filesystem::create_directories(config.output_path, ec);
    if (ec) throw IoError("cannot create output directory " + config.output_path.string() + ": " + ec.message());

    Output out;
    Writer w(config, out);
    switch (config.command) {
        case Command::Polaron: run_polaron(config, w, out); break;
        case Command::Lineshape: run_lineshape(config, w, out); break;
        case Command::Sweep: run_sweep(config, w, out); break;
        case Command::Emission: run_emission(config, w, out); break;
        case Command::Toulouse: run_toulouse(config, w, out); break;
    }

    const auto path = config.output_path / "manifest.json";
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file << manifest(config, out).dump(2) << '\n';
    if (!file) throw IoError("failed writing " + path.string());

    for (const auto& msg : out.warnings) log << "warning: " << msg << '\n';
    for (const auto& name : out.files) log << "wrote " << (config.output_path / name).generic_string() << '\n';
    return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = parse_config(argc, argv);
        return run(cfg, out);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return 3;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace usc
