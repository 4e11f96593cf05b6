// reservoir.cpp — rate calibration and rate tables

#include "iondecoh/reservoir.hpp"

#include <cmath>
#include <sstream>

namespace iondecoh {

std::string_view to_string(Channel c) {
    switch (c) {
    case Channel::dipole: return "dipole";
    case Channel::vibrational: return "vibrational";
    case Channel::none: return "none";
    }
    return "none";
}

Channel channel_from_string(std::string_view s) {
    if (s == "dipole") return Channel::dipole;
    if (s == "vibrational" || s == "vib") return Channel::vibrational;
    if (s == "none") return Channel::none;
    throw DomainError("unknown channel '" + std::string(s) + "'");
}

void validate(const ReservoirSpec& spec) {
    if (!(spec.T_tilde > 0.0)) throw DomainError("normalized temperature must be > 0 or inf");
    if (!std::isfinite(spec.d)) throw DomainError("spectral power d must be finite");
    if (!(spec.a_tilde >= 0.0) || !std::isfinite(spec.a_tilde))
        throw DomainError("damping constant a_tilde must be finite and >= 0");
    if (!(spec.kappa0_nbar0 >= 0.0) || !std::isfinite(spec.kappa0_nbar0))
        throw DomainError("kappa0_nbar0 must be finite and >= 0");
    if (spec.kappa0_nbar0 > 0.0 && spec.channel != Channel::dipole)
        throw DomainError("kappa0_nbar0 only enters the dipole channel");
}

Calibration calibrate_a(double gamma0_tilde, const ReservoirSpec& spec) {
    validate(spec);
    if (!(gamma0_tilde > 0.0) || !std::isfinite(gamma0_tilde))
        throw DomainError("gamma0_tilde must be positive and finite");

    double effective = gamma0_tilde;
    double channel_factor = 1.0;
    switch (spec.channel) {
    case Channel::dipole:
        effective -= 2.0 * spec.kappa0_nbar0;
        if (!(effective > 0.0))
            throw DomainError("2*kappa0_nbar0 must stay below gamma0_tilde");
        break;
    case Channel::vibrational:
        channel_factor = 2.0;
        break;
    case Channel::none:
        return {0.0, spec.high_temperature()};
    }

    // gamma0 = c^{-1} a 2^d f(0,T), c = 1 (dipole) or 2 (vibrational).
    // At T = inf, f(0,T) -> T/2, so a*T = 2 c gamma0 / 2^d.
    const double omega0_power = std::pow(2.0, spec.d);
    if (spec.high_temperature())
        return {channel_factor * effective * 2.0 / omega0_power, true};
    return {channel_factor * effective / (omega0_power * thermal_factor(0, spec.T_tilde)), false};
}

ReservoirSpec calibrated(const ReservoirSpec& spec, double gamma0_tilde) {
    ReservoirSpec out = spec;
    out.a_tilde = calibrate_a(gamma0_tilde, spec).a_tilde;
    return out;
}

BlockCoupling block_coupling(Index n, const ReservoirSpec& spec, double gamma0_tilde) {
    validate(spec);
    if (spec.channel == Channel::none) return {0.0, 0.0, 1};
    if (!(gamma0_tilde > 0.0)) throw DomainError("gamma0_tilde must be positive");
    const double total = rate(n, spec, gamma0_tilde);
    if (spec.channel == Channel::dipole) {
        const double dephasing = 2.0 * (static_cast<double>(n) + 1.0) * spec.kappa0_nbar0;
        return {total - dephasing, dephasing, 1};
    }
    return {total, 0.0, -1};
}

RateTable make_rate_table(const ReservoirSpec& spec, double gamma0_tilde, Index n_max) {
    validate(spec);
    RateTable table;
    table.spec = spec;
    table.gamma0_tilde = gamma0_tilde;
    const auto size = static_cast<Eigen::Index>(n_max) + 1;
    table.omega_tilde.resize(size);
    table.kappa_tilde.resize(size);
    table.f_ratio.resize(size);
    table.rates.resize(size);

    const double a = spec.channel == Channel::none ? 0.0 : calibrate_a(gamma0_tilde, spec).a_tilde;
    table.spec.a_tilde = a;
    for (Eigen::Index n = 0; n < size; ++n) {
        const auto level = static_cast<Index>(n);
        table.omega_tilde[n] = rabi_freq<double>(level, 1.0);
        table.kappa_tilde[n] = damping_kappa<double>(level, a, spec.d);
        table.f_ratio[n] = thermal_ratio<double>(level, spec.T_tilde);
        table.rates[n] = spec.channel == Channel::none ? 0.0 : rate(level, spec, gamma0_tilde);
    }
    return table;
}

} // namespace iondecoh
