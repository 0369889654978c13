#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "usc/model.hpp"
#include "usc/scattering.hpp"
#include "usc/table.hpp"
#include "usc/toulouse.hpp"

namespace usc {

inline constexpr const char* kToolName = "usc_scatter";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Polaron, Lineshape, Sweep, Emission, Toulouse };

const char* command_name(Command command);

/// Fully resolved run description. Every field is set, defaults included.
struct RunConfig {
    Command command = Command::Lineshape;
    ModelParams model;
    ScatteringConfig scattering;

    /// Scan window in units of Delta~ (lineshape, sweep) or of e Delta^2 / omega_c (toulouse).
    double omega_min = 0.02;
    double omega_max = 4.0;
    int n_points = 400;
    std::vector<double> alphas;

    double t_max = 30.0;  // units of 1/Delta
    int n_samples = 301;
    GapModel toulouse_gap = GapModel::Asymptotic;

    std::filesystem::path output_path = ".";
    OutputFormat format = OutputFormat::Csv;

    /// Where each resolved value came from: "default", "file" or "flag".
    std::map<std::string, std::string> sources;

    void validate() const;
};

/// Thrown by parse_config for --help / --version; `text` goes to stdout.
struct HelpRequested {
    std::string text;
};

/// Flags override the --config file, which overrides built-in defaults.
/// argv[0] is the program name. Throws ValidationError (or IoError for an
/// unreadable config file).
RunConfig parse_config(int argc, const char* const* argv);

/// Executes the command and writes its tables plus manifest.json into
/// config.output_path. Returns the process exit status; typed errors
/// propagate to the caller.
int run(const RunConfig& config, std::ostream& log);

/// Full front end: parse, run, and map errors to exit codes
/// (0 ok, 2 validation, 3 convergence, 4 I/O). Messages go to `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace usc
