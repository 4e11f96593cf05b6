// config.hpp — flat key = value run configuration for the command-line tool

#pragma once

#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "iondecoh/dynamics.hpp"
#include "iondecoh/model.hpp"
#include "iondecoh/reservoir.hpp"

namespace iondecoh {

enum class InitialKind { fock, coherent, thermal };

struct InitialSpec {
    InitialKind kind{InitialKind::fock};
    double value{1.0}; // n, alpha or nbar
};

enum class RunChannel { dipole, vibrational, none, phenom };

struct RunConfig {
    InitialSpec initial{};
    RunChannel channel{RunChannel::dipole};
    double d{0.4};
    double T_tilde{kInfiniteTemperature};
    double gamma0_tilde{0.127 / (2.0 * std::numbers::pi)};
    double nu{0.7};
    double kappa0_nbar0{0.0};
    std::optional<Index> n_max{}; // empty means auto
    double t_max_norm{5.0};
    std::size_t samples{2000};
    Solver solver{Solver::analytic};
    Form form{Form::exact_eq17};
    Sideband sideband{Sideband::blue};
};

// Ordered key -> raw value map of a `key = value` file. '#' starts a comment;
// values may be double-quoted. Duplicate keys are rejected.
std::map<std::string, std::string> parse_key_values(std::string_view text);

// Throws ConfigError naming the offending key for unknown keys, unparsable
// values and values outside their documented range.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);
void validate(const RunConfig& cfg);

// Apply one `key = value` override (used by sweeps).
void set_field(RunConfig& cfg, const std::string& key, const std::string& value);
std::string field_value(const RunConfig& cfg, const std::string& key);

MotionalDistribution make_distribution(const RunConfig& cfg);
ReservoirSpec make_reservoir(const RunConfig& cfg);
SystemParams make_system(const RunConfig& cfg);

// Per-block rate A_n / g for the configured channel (phenom: gamma0 (n+1)^nu).
double configured_rate(const RunConfig& cfg, Index n);

std::string_view to_string(RunChannel c);

// Every field of the configuration as a flat JSON-friendly string map.
std::map<std::string, std::string> describe(const RunConfig& cfg);

RamanInputs parse_raman_config(std::string_view text);

} // namespace iondecoh
