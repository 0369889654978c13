#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "usc/cli.hpp"
#include "usc/error.hpp"

namespace usc {
namespace {

// Every key a config file or flag may set, in manifest order.
const std::vector<std::string> kKeys = {
    "command",  "alpha",     "delta",     "omega-c",  "dispersion", "c",       "num-modes",
    "grid",     "k-max",     "log-k-min", "sigma",    "dephasing",  "markov",  "omega-min",
    "omega-max", "points",   "alphas",    "t-max",    "samples",    "toulouse-gap", "out",
    "format",
};

std::string canonical_key(std::string key) {
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) {
        return ch == '_' ? '-' : static_cast<char>(std::tolower(ch));
    });
    return key;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void check_known(const std::string& key) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
        throw ValidationError("unknown configuration key '" + key + "'");
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << file.rdbuf();
    const std::string text = buf.str();

    std::map<std::string, std::string> values;
    if (trim(text).starts_with("{")) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError("config file " + path.string() + ": " + e.what());
        }
        if (!doc.is_object()) throw ValidationError("config file must hold a JSON object");
        for (const auto& [raw, v] : doc.items()) {
            const std::string key = canonical_key(raw);
            check_known(key);
            if (v.is_string()) {
                values[key] = v.get<std::string>();
            } else if (v.is_array()) {
                std::string joined;
                for (const auto& item : v) joined += (joined.empty() ? "" : ",") + item.dump();
                values[key] = joined;
            } else {
                values[key] = v.dump();
            }
        }
        return values;
    }

    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config file line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = canonical_key(trim(line.substr(0, eq)));
        check_known(key);
        values[key] = trim(line.substr(eq + 1));
    }
    return values;
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ValidationError(key + ": '" + text + "' is not a number");
    return value;
}

int parse_int(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ValidationError(key + ": '" + text + "' is not an integer");
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string s = canonical_key(trim(text));
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ValidationError(key + ": '" + text + "' is not a boolean");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw ValidationError(key + ": empty list");
    return out;
}

Command parse_command(const std::string& s) {
    if (s == "polaron") return Command::Polaron;
    if (s == "lineshape") return Command::Lineshape;
    if (s == "sweep") return Command::Sweep;
    if (s == "emission") return Command::Emission;
    if (s == "toulouse") return Command::Toulouse;
    throw ValidationError("unknown command '" + s + "' (expected polaron|lineshape|sweep|emission|toulouse)");
}

Dispersion parse_dispersion(const std::string& s) {
    if (s == "linear") return Dispersion::LinearExponential;
    if (s == "cosine") return Dispersion::CosineHard;
    throw ValidationError("unknown dispersion '" + s + "' (expected linear|cosine)");
}

GridSpacing parse_grid(const std::string& s) {
    if (s == "auto") return GridSpacing::Automatic;
    if (s == "uniform") return GridSpacing::Uniform;
    if (s == "log") return GridSpacing::Logarithmic;
    throw ValidationError("unknown grid '" + s + "' (expected auto|uniform|log)");
}

std::optional<SigmaSource> parse_sigma(const std::string& s) {
    if (s == "auto") return std::nullopt;
    if (s == "closed") return SigmaSource::ClosedOhmic;
    if (s == "numeric") return SigmaSource::NumericGrid;
    throw ValidationError("unknown sigma source '" + s + "' (expected auto|closed|numeric)");
}

GapModel parse_gap(const std::string& s) {
    if (s == "asymptotic") return GapModel::Asymptotic;
    if (s == "self-consistent") return GapModel::SelfConsistent;
    throw ValidationError("unknown toulouse-gap '" + s + "' (expected asymptotic|self-consistent)");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ValidationError("unknown format '" + s + "' (expected csv|json)");
}

}  // namespace

const char* command_name(Command command) {
    switch (command) {
        case Command::Polaron: return "polaron";
        case Command::Lineshape: return "lineshape";
        case Command::Sweep: return "sweep";
        case Command::Emission: return "emission";
        case Command::Toulouse: return "toulouse";
    }
    return "?";
}

void RunConfig::validate() const {
    model.validate();
    if (scattering.dephasing_rate < 0.0 || !std::isfinite(scattering.dephasing_rate))
        throw ValidationError("dephasing must be >= 0");
    if (!(omega_min > 0.0) || !(omega_max > omega_min) || !std::isfinite(omega_max))
        throw ValidationError("scan needs 0 < omega-min < omega-max");
    if (n_points < 16) throw ValidationError("points must be >= 16");
    if (command == Command::Sweep) {
        if (alphas.empty()) throw ValidationError("sweep needs at least one alpha");
        for (double a : alphas)
            if (!(a >= 0.0)) throw ValidationError("alpha must be >= 0");
    }
    if (command == Command::Emission) {
        if (!(t_max > 0.0)) throw ValidationError("t-max must be positive");
        if (n_samples < 2) throw ValidationError("samples must be >= 2");
    }
    if (command == Command::Toulouse) {
        if (model.dispersion != Dispersion::LinearExponential)
            throw ValidationError("toulouse needs the linear dispersion");
        if (model.alpha != 0.5) throw ValidationError("toulouse runs at alpha = 0.5");
    }
}

RunConfig parse_config(int argc, const char* const* argv) {
    CLI::App app{"Single-photon scattering off an ultrastrongly coupled qubit in a waveguide", kToolName};
    app.set_version_flag("--version", kToolVersion);

    std::map<std::string, std::string> flag_values;
    for (const auto& key : kKeys) app.add_option("--" + key, flag_values[key]);
    std::string config_path;
    app.add_option("--config", config_path, "key=value lines or a JSON object; flags take precedence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested{std::string(kToolVersion) + "\n"};
    } catch (const CLI::ParseError& e) {
        throw ValidationError(e.what());
    }

    std::map<std::string, std::string> values;
    std::map<std::string, std::string> sources;
    if (!config_path.empty()) {
        for (auto& [k, v] : read_config_file(config_path)) {
            values[k] = v;
            sources[k] = "file";
        }
    }
    for (const auto& key : kKeys) {
        if (app.count("--" + key) == 0) continue;
        values[key] = flag_values[key];
        sources[key] = "flag";
    }

    RunConfig cfg;
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        if (auto it = values.find(key); it != values.end()) return it->second;
        sources[key] = "default";
        return std::nullopt;
    };

    const auto command = get("command");
    if (!command) throw ValidationError("missing --command (polaron|lineshape|sweep|emission|toulouse)");
    cfg.command = parse_command(*command);
    const bool toulouse = cfg.command == Command::Toulouse;

    auto& m = cfg.model;
    const auto dispersion = get("dispersion");
    m.dispersion = dispersion ? parse_dispersion(*dispersion)
                              : (cfg.command == Command::Emission ? Dispersion::CosineHard
                                                                  : Dispersion::LinearExponential);
    const bool cosine = m.dispersion == Dispersion::CosineHard;

    if (auto v = get("alpha")) m.alpha = parse_double("alpha", *v);
    else m.alpha = toulouse ? 0.5 : 0.1;
    if (auto v = get("delta")) m.delta = parse_double("delta", *v);
    if (auto v = get("omega-c")) m.omega_c = parse_double("omega-c", *v);
    else m.omega_c = cosine ? 6.0 : (toulouse ? 1e8 : 100.0);
    if (auto v = get("c")) m.c = parse_double("c", *v);
    if (auto v = get("num-modes")) m.num_modes = parse_int("num-modes", *v);
    else m.num_modes = cosine ? 512 : 4096;
    if (auto v = get("grid")) m.spacing = parse_grid(*v);
    if (auto v = get("k-max")) m.k_max = parse_double("k-max", *v);
    if (auto v = get("log-k-min")) m.log_k_min = parse_double("log-k-min", *v);

    if (auto v = get("sigma")) cfg.scattering.sigma_source = parse_sigma(*v);
    if (auto v = get("dephasing")) cfg.scattering.dephasing_rate = parse_double("dephasing", *v);
    if (auto v = get("markov")) cfg.scattering.use_markov = parse_bool("markov", *v);

    if (auto v = get("omega-min")) cfg.omega_min = parse_double("omega-min", *v);
    else cfg.omega_min = toulouse ? 1e-3 : 0.02;
    if (auto v = get("omega-max")) cfg.omega_max = parse_double("omega-max", *v);
    else cfg.omega_max = toulouse ? 1e3 : 4.0;
    if (auto v = get("points")) cfg.n_points = parse_int("points", *v);
    if (auto v = get("alphas")) cfg.alphas = parse_list("alphas", *v);
    else cfg.alphas = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3};

    if (auto v = get("t-max")) cfg.t_max = parse_double("t-max", *v);
    if (auto v = get("samples")) cfg.n_samples = parse_int("samples", *v);
    if (auto v = get("toulouse-gap")) cfg.toulouse_gap = parse_gap(*v);

    if (auto v = get("out")) cfg.output_path = *v;
    if (auto v = get("format")) cfg.format = parse_format(*v);

    cfg.sources = std::move(sources);
    cfg.validate();
    return cfg;
}

}  // namespace usc
