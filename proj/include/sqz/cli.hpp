#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqz/estimation.hpp"
#include "sqz/params.hpp"

namespace sqz::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 2,
    exit_numerical_failure = 3,
};

struct Config {
    ShgParams shg;
    OpoParams opo;
    DetectionChain detection;
    double analysis_frequency = reference_analysis_frequency;  // Hz
};

/// Config file problems. problems() holds one entry per violation, each
/// beginning with its key path (e.g. "shg.t1: ...").
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::vector<std::string> problems)
        : std::runtime_error(what), problems_(std::move(problems)) {}
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Name accepted by --config for the bundled reference configuration.
inline constexpr std::string_view paper_defaults_name = "paper-defaults";

/// JSON text of the bundled reference configuration.
std::string_view paper_defaults_json();

/// Strict parse: unknown keys, missing required keys, non-numeric values and
/// parameter invariant violations are all collected and reported together.
/// Only the top-level analysis_frequency is optional.
Config parse_config_text(std::string_view text);

/// Reads a config file. The name "paper-defaults" resolves to the bundled
/// configuration unless a file of that name exists.
Config parse_config(const std::string& path);

/// FNV-1a 64 of the config's canonical JSON form, as 16 hex digits.
std::string config_digest(const Config& cfg);

/// Two-column CSV with a header row.
DataSeries read_data_csv(const std::string& path);
DataSeries parse_data_csv(std::string_view text);

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double v);

/// Runs one CLI invocation; args excludes the program name. CSV goes to out,
/// diagnostics and the run report to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqz::cli
