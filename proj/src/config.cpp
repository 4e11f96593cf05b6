// config.cpp — parsing and validation of run configurations

#include "iondecoh/config.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "iondecoh/io.hpp"

namespace iondecoh {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& raw, bool allow_inf = false) {
    if (allow_inf && (raw == "inf" || raw == "+inf" || raw == "infinity"))
        return kInfiniteTemperature;
    double v = 0.0;
    const char* end = raw.data() + raw.size();
    const auto [ptr, ec] = std::from_chars(raw.data(), end, v);
    if (ec != std::errc() || ptr != end || raw.empty() || !std::isfinite(v))
        throw ConfigError(key, key + ": expected a finite number, got '" + raw + "'");
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& raw) {
    std::size_t v = 0;
    const char* end = raw.data() + raw.size();
    const auto [ptr, ec] = std::from_chars(raw.data(), end, v);
    if (ec != std::errc() || ptr != end || raw.empty())
        throw ConfigError(key, key + ": expected a non-negative integer, got '" + raw + "'");
    return v;
}

InitialSpec parse_initial(const std::string& raw) {
    const auto colon = raw.find(':');
    if (colon == std::string::npos)
        throw ConfigError("initial", "initial: expected fock:<n>, coherent:<alpha> or thermal:<nbar>");
    const std::string kind(trim(std::string_view(raw).substr(0, colon)));
    const std::string value(trim(std::string_view(raw).substr(colon + 1)));
    InitialSpec spec;
    if (kind == "fock") {
        spec.kind = InitialKind::fock;
        spec.value = static_cast<double>(parse_count("initial", value));
    } else if (kind == "coherent") {
        spec.kind = InitialKind::coherent;
        spec.value = parse_real("initial", value);
    } else if (kind == "thermal") {
        spec.kind = InitialKind::thermal;
        spec.value = parse_real("initial", value);
    } else {
        throw ConfigError("initial", "initial: unknown kind '" + kind + "'");
    }
    return spec;
}

RunChannel parse_channel(const std::string& raw) {
    if (raw == "dipole") return RunChannel::dipole;
    if (raw == "vibrational" || raw == "vib") return RunChannel::vibrational;
    if (raw == "none") return RunChannel::none;
    if (raw == "phenom") return RunChannel::phenom;
    throw ConfigError("channel", "channel: expected dipole, vibrational, none or phenom, got '" + raw + "'");
}

template <typename F>
auto parse_enum(const std::string& key, const std::string& raw, F&& parse) {
    try {
        return parse(raw);
    } catch (const DomainError&) {
        throw ConfigError(key, key + ": invalid value '" + raw + "'");
    }
}

std::string initial_string(const InitialSpec& s) {
    switch (s.kind) {
    case InitialKind::fock: return "fock:" + std::to_string(static_cast<Index>(s.value));
    case InitialKind::coherent: return "coherent:" + format_number(s.value);
    case InitialKind::thermal: return "thermal:" + format_number(s.value);
    }
    return {};
}

const std::set<std::string>& run_keys() {
    static const std::set<std::string> keys{
        "initial", "channel", "d",          "T_tilde", "gamma0_tilde", "nu",      "kappa0_nbar0",
        "n_max",   "t_max_norm", "samples", "solver",  "form",         "sideband"};
    return keys;
}

} // namespace

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
        if (!out.emplace(key, std::string(value)).second)
            throw ConfigError(key, "duplicate key '" + key + "'");
    }
    return out;
}

void set_field(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "initial") cfg.initial = parse_initial(value);
    else if (key == "channel") cfg.channel = parse_channel(value);
    else if (key == "d") cfg.d = parse_real(key, value);
    else if (key == "T_tilde") cfg.T_tilde = parse_real(key, value, true);
    else if (key == "gamma0_tilde") cfg.gamma0_tilde = parse_real(key, value);
    else if (key == "nu") cfg.nu = parse_real(key, value);
    else if (key == "kappa0_nbar0") cfg.kappa0_nbar0 = parse_real(key, value);
    else if (key == "n_max") cfg.n_max = value == "auto" ? std::nullopt : std::optional<Index>(parse_count(key, value));
    else if (key == "t_max_norm") cfg.t_max_norm = parse_real(key, value);
    else if (key == "samples") cfg.samples = parse_count(key, value);
    else if (key == "solver") cfg.solver = parse_enum(key, value, solver_from_string);
    else if (key == "form") cfg.form = parse_enum(key, value, form_from_string);
    else if (key == "sideband") {
        if (value == "blue") cfg.sideband = Sideband::blue;
        else if (value == "red") cfg.sideband = Sideband::red;
        else throw ConfigError(key, "sideband: expected blue or red, got '" + value + "'");
    } else {
        throw ConfigError(key, "unknown configuration key '" + key + "'");
    }
}

std::string field_value(const RunConfig& cfg, const std::string& key) {
    return describe(cfg).at(key);
}

void validate(const RunConfig& cfg) {
    const double v = cfg.initial.value;
    if (!(v >= 0.0) || !std::isfinite(v))
        throw ConfigError("initial", "initial: parameter must be finite and >= 0");
    if (!std::isfinite(cfg.d)) throw ConfigError("d", "d: must be finite");
    if (!(cfg.T_tilde > 0.0)) throw ConfigError("T_tilde", "T_tilde: must be > 0 or inf");
    if (!(cfg.gamma0_tilde > 0.0) || !std::isfinite(cfg.gamma0_tilde))
        throw ConfigError("gamma0_tilde", "gamma0_tilde: must be positive and finite");
    if (!std::isfinite(cfg.nu)) throw ConfigError("nu", "nu: must be finite");
    if (!(cfg.kappa0_nbar0 >= 0.0) || !std::isfinite(cfg.kappa0_nbar0))
        throw ConfigError("kappa0_nbar0", "kappa0_nbar0: must be finite and >= 0");
    if (cfg.kappa0_nbar0 > 0.0 && cfg.channel != RunChannel::dipole)
        throw ConfigError("kappa0_nbar0", "kappa0_nbar0: only valid for channel = dipole");
    if (!(2.0 * cfg.kappa0_nbar0 < cfg.gamma0_tilde))
        throw ConfigError("kappa0_nbar0", "kappa0_nbar0: 2*kappa0_nbar0 must stay below gamma0_tilde");
    if (cfg.n_max && cfg.initial.kind == InitialKind::fock &&
        static_cast<Index>(cfg.initial.value) > *cfg.n_max)
        throw ConfigError("n_max", "n_max: smaller than the Fock level of the initial state");
    if (cfg.n_max && *cfg.n_max > 100000) throw ConfigError("n_max", "n_max: at most 100000");
    if (!(cfg.t_max_norm > 0.0) || !std::isfinite(cfg.t_max_norm))
        throw ConfigError("t_max_norm", "t_max_norm: must be positive and finite");
    if (cfg.samples < 2) throw ConfigError("samples", "samples: need at least 2");
    if (cfg.samples > 10'000'000) throw ConfigError("samples", "samples: at most 10000000");
}

RunConfig parse_run_config(std::string_view text) {
    RunConfig cfg;
    for (const auto& [key, value] : parse_key_values(text)) {
        if (!run_keys().count(key)) throw ConfigError(key, "unknown configuration key '" + key + "'");
        set_field(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_file(path));
}

MotionalDistribution make_distribution(const RunConfig& cfg) {
    try {
        switch (cfg.initial.kind) {
        case InitialKind::fock: {
            const auto n = static_cast<Index>(cfg.initial.value);
            return fock_dist(n, cfg.n_max.value_or(n));
        }
        case InitialKind::coherent:
            return cfg.n_max ? coherent_dist(cfg.initial.value, *cfg.n_max)
                             : coherent_dist(cfg.initial.value);
        case InitialKind::thermal:
            return cfg.n_max ? thermal_dist(cfg.initial.value, *cfg.n_max)
                             : thermal_dist(cfg.initial.value);
        }
    } catch (const TruncationError& e) {
        throw ConfigError("n_max", std::string("n_max: ") + e.what());
    }
    throw ConfigError("initial", "initial: unsupported kind");
}

ReservoirSpec make_reservoir(const RunConfig& cfg) {
    ReservoirSpec spec;
    spec.T_tilde = cfg.T_tilde;
    spec.d = cfg.d;
    spec.kappa0_nbar0 = cfg.kappa0_nbar0;
    switch (cfg.channel) {
    case RunChannel::dipole: spec.channel = Channel::dipole; break;
    case RunChannel::vibrational: spec.channel = Channel::vibrational; break;
    case RunChannel::none:
    case RunChannel::phenom: spec.channel = Channel::none; break;
    }
    if (spec.channel != Channel::none) spec.a_tilde = calibrate_a(cfg.gamma0_tilde, spec).a_tilde;
    return spec;
}

SystemParams make_system(const RunConfig& cfg) { return SystemParams::normalized(cfg.sideband); }

double configured_rate(const RunConfig& cfg, Index n) {
    if (cfg.channel == RunChannel::phenom)
        return cfg.gamma0_tilde * std::pow(static_cast<double>(n) + 1.0, cfg.nu);
    return rate(n, make_reservoir(cfg), cfg.gamma0_tilde);
}

std::string_view to_string(RunChannel c) {
    switch (c) {
    case RunChannel::dipole: return "dipole";
    case RunChannel::vibrational: return "vibrational";
    case RunChannel::none: return "none";
    case RunChannel::phenom: return "phenom";
    }
    return "none";
}

std::map<std::string, std::string> describe(const RunConfig& cfg) {
    return {{"initial", initial_string(cfg.initial)},
            {"channel", std::string(to_string(cfg.channel))},
            {"d", format_number(cfg.d)},
            {"T_tilde", format_number(cfg.T_tilde)},
            {"gamma0_tilde", format_number(cfg.gamma0_tilde)},
            {"nu", format_number(cfg.nu)},
            {"kappa0_nbar0", format_number(cfg.kappa0_nbar0)},
            {"n_max", cfg.n_max ? std::to_string(*cfg.n_max) : std::string("auto")},
            {"t_max_norm", format_number(cfg.t_max_norm)},
            {"samples", std::to_string(cfg.samples)},
            {"solver", std::string(to_string(cfg.solver))},
            {"form", std::string(to_string(cfg.form))},
            {"sideband", cfg.sideband == Sideband::red ? "red" : "blue"}};
}

RamanInputs parse_raman_config(std::string_view text) {
    static const std::set<std::string> keys{"g01_re", "g01_im", "g02_re", "g02_im", "Delta",
                                            "k1x",    "k2x",    "mass",   "omega_x"};
    const auto kv = parse_key_values(text);
    for (const auto& [key, value] : kv)
        if (!keys.count(key)) throw ConfigError(key, "unknown calibration key '" + key + "'");
    for (const auto& key : keys)
        if (!kv.count(key)) throw ConfigError(key, "missing calibration key '" + key + "'");
    auto num = [&](const char* key) { return parse_real(key, kv.at(key)); };
    RamanInputs in;
    in.g01 = {num("g01_re"), num("g01_im")};
    in.g02 = {num("g02_re"), num("g02_im")};
    in.Delta = num("Delta");
    in.k1x = num("k1x");
    in.k2x = num("k2x");
    in.mass = num("mass");
    in.omega_x = num("omega_x");
    if (in.Delta == 0.0) throw ConfigError("Delta", "Delta: must be nonzero");
    if (!(in.mass > 0.0)) throw ConfigError("mass", "mass: must be positive");
    if (!(in.omega_x > 0.0)) throw ConfigError("omega_x", "omega_x: must be positive");
    return in;
}

} // namespace iondecoh
