#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dirtyflash/flash_channel.hpp"

namespace dirtyflash::cli {

/// Invalid configuration: unknown key, unparsable value, or a parameter
/// combination that fails validation.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Setting = std::pair<std::string, std::string>;

struct RunConfig {
    std::string subcommand;
    flash::ChannelParams channel;

    std::uint64_t seed = 1;
    std::uint64_t trials = 100000;
    std::uint64_t min_failures = 100;
    std::uint64_t batch = 1000;
    unsigned threads = 1;

    std::vector<double> alphas{0.4, 0.5, 0.6, 0.7, 0.8};
    std::vector<double> sigmas{0.1};
    std::vector<double> eta_pres{0.0, -1.0, -2.0};
    std::vector<std::size_t> allocations{0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    std::size_t l = 10;  ///< single allocation for `trial` and `histogram`

    double hist_lo = -7.0;
    double hist_hi = 4.0;
    std::size_t bins = 110;

    std::vector<double> epsilons;
    std::vector<double> ps;

    std::string output;  ///< empty: default location
};

/// Built-in defaults for a subcommand (reference channel, plus the sweep
/// recipe the subcommand reproduces). Throws ConfigError for unknown names.
RunConfig defaults_for(const std::string& subcommand);

/// Keys accepted in config files; flags use the same names with '-' for '_'.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines; '#' starts a comment. Throws ConfigError with
/// the line number on malformed lines.
std::vector<Setting> parse_config_text(const std::string& text);

/// Applies one setting. Throws ConfigError on unknown key or bad value.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Checks channel parameters, allocations and sweep sizes.
void validate(const RunConfig& cfg);

/// defaults_for(subcommand), then config-file settings, then flag settings;
/// the result is validated.
RunConfig resolve_config(const std::string& subcommand, const std::vector<Setting>& file_settings,
                         const std::vector<Setting>& flag_settings);

}  // namespace dirtyflash::cli
