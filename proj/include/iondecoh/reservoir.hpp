// reservoir.hpp — reservoir spectral model, thermal factors and per-block
// decoherence rates for the dipole and vibrational coupling channels

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "iondecoh/errors.hpp"
#include "iondecoh/model.hpp"

namespace iondecoh {

// dipole: reservoir couples through b^dag S+ + b S- (fluctuating Raman
// coupling). vibrational: couples through b^dag b (trap potential noise);
// the S_z coupling yields identical block equations.
enum class Channel { dipole, vibrational, none };

std::string_view to_string(Channel c);
Channel channel_from_string(std::string_view s);

inline constexpr double kInfiniteTemperature = std::numeric_limits<double>::infinity();
inline constexpr double kWeakCouplingWarn = 0.1;

struct ReservoirSpec {
    double T_tilde{kInfiniteTemperature}; // k_B T / (hbar g); +inf is the classical-noise limit
    double d{1.0};                        // spectral power, any real
    double a_tilde{0.0};                  // damping constant; see Calibration for T = inf
    double kappa0_nbar0{0.0};             // zero-frequency reservoir term (dipole only)
    Channel channel{Channel::dipole};

    bool high_temperature() const { return std::isinf(T_tilde); }
};

void validate(const ReservoirSpec& spec);

// f(n,T) = nbar(Omega_n) + 1/2 = coth(sqrt(n+1)/T)/2. Returns +inf at T = inf;
// use thermal_ratio for anything that must stay finite there.
template <typename Scalar>
Scalar thermal_factor(Index n, Scalar T_tilde) {
    using std::sqrt;
    using std::tanh;
    if (!(T_tilde > Scalar(0))) throw DomainError("normalized temperature must be positive");
    if (T_tilde == std::numeric_limits<Scalar>::infinity())
        return std::numeric_limits<Scalar>::infinity();
    return Scalar(0.5) / tanh(sqrt(Scalar(n) + Scalar(1)) / T_tilde);
}

// f(n,T)/f(0,T). The T = inf branch is the analytic limit (n+1)^(-1/2).
template <typename Scalar>
Scalar thermal_ratio(Index n, Scalar T_tilde) {
    using std::sqrt;
    using std::tanh;
    if (!(T_tilde > Scalar(0))) throw DomainError("normalized temperature must be positive");
    const Scalar level = Scalar(n) + Scalar(1);
    if (T_tilde == std::numeric_limits<Scalar>::infinity()) return Scalar(1) / sqrt(level);
    return tanh(Scalar(1) / T_tilde) / tanh(sqrt(level) / T_tilde);
}

// kappa(n) = a (2 sqrt(n+1))^d
template <typename Scalar>
Scalar damping_kappa(Index n, Scalar a_tilde, Scalar d) {
    using std::pow;
    return a_tilde * pow(rabi_freq<Scalar>(n, Scalar(1)), d);
}

inline double damping_kappa(Index n, const ReservoirSpec& spec) {
    return damping_kappa<double>(n, spec.a_tilde, spec.d);
}

// Damping constant fixed by requiring A_0 = gamma0. At T = inf the constant
// itself vanishes while a*T stays finite; `temperature_scaled` marks that the
// returned value is the product a*T.
struct Calibration {
    double a_tilde{0.0};
    bool temperature_scaled{false};
};

Calibration calibrate_a(double gamma0_tilde, const ReservoirSpec& spec);

// Spec with a_tilde filled in from calibrate_a (only meaningful at finite T).
ReservoirSpec calibrated(const ReservoirSpec& spec, double gamma0_tilde);

// Normalized decoherence rate A_n / g anchored at A_0 = gamma0:
//   dipole:      (gamma0 - 2 k0n0) (n+1)^(1+d/2) f(n)/f(0) + 2 (n+1) k0n0
//   vibrational: gamma0 (n+1)^(d/2) f(n)/f(0)
template <typename Scalar>
Scalar rate(Index n, Channel channel, Scalar d, Scalar T_tilde, Scalar gamma0_tilde,
            Scalar kappa0_nbar0 = Scalar(0)) {
    using std::pow;
    const Scalar level = Scalar(n) + Scalar(1);
    switch (channel) {
    case Channel::dipole: {
        const Scalar zero_freq = Scalar(2) * kappa0_nbar0;
        return (gamma0_tilde - zero_freq) * pow(level, Scalar(1) + d / Scalar(2)) *
                   thermal_ratio<Scalar>(n, T_tilde) +
               level * zero_freq;
    }
    case Channel::vibrational:
        return gamma0_tilde * pow(level, d / Scalar(2)) * thermal_ratio<Scalar>(n, T_tilde);
    case Channel::none:
        break;
    }
    return Scalar(0);
}

inline double rate(Index n, const ReservoirSpec& spec, double gamma0_tilde) {
    return rate<double>(n, spec.channel, spec.d, spec.T_tilde, gamma0_tilde, spec.kappa0_nbar0);
}

// High-temperature closed forms gamma0 (n+1)^((d+1)/2) and gamma0 (n+1)^((d-1)/2).
template <typename Scalar>
Scalar rate_highT(Index n, Channel channel, Scalar d, Scalar gamma0_tilde) {
    using std::pow;
    const Scalar level = Scalar(n) + Scalar(1);
    switch (channel) {
    case Channel::dipole:
        return gamma0_tilde * pow(level, (d + Scalar(1)) / Scalar(2));
    case Channel::vibrational:
        return gamma0_tilde * pow(level, (d - Scalar(1)) / Scalar(2));
    case Channel::none:
        break;
    }
    return Scalar(0);
}

// Coefficients of one block equation
//   d rho12/dt = -i Omega rho12 - (K + D) rho12 - s K rho21
// with s = +1 (dipole) or -1 (vibrational). D is the zero-frequency dephasing
// 2 (n+1) k0n0. The decay rate of the block is A = K + D.
struct BlockCoupling {
    double coupling{0.0};
    double dephasing{0.0};
    int sign{1};

    double decay() const { return coupling + dephasing; }
};

inline int channel_sign(Channel c) { return c == Channel::vibrational ? -1 : 1; }

BlockCoupling block_coupling(Index n, const ReservoirSpec& spec, double gamma0_tilde);

struct RateTable {
    Eigen::VectorXd omega_tilde;
    Eigen::VectorXd kappa_tilde; // a*T*Omega^d when the spec is at T = inf
    Eigen::VectorXd f_ratio;
    Eigen::VectorXd rates;
    ReservoirSpec spec;
    double gamma0_tilde{0.0};

    Index size() const { return static_cast<Index>(rates.size()); }
};

RateTable make_rate_table(const ReservoirSpec& spec, double gamma0_tilde, Index n_max);

} // namespace iondecoh
