// dynamics.hpp — time evolution of the dressed-basis coherence blocks and
// assembly of P_down(t) traces

#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "iondecoh/errors.hpp"
#include "iondecoh/model.hpp"
#include "iondecoh/numeric.hpp"
#include "iondecoh/reservoir.hpp"

namespace iondecoh {

// Closed-form propagator of one block. decay = A_n, omega = Omega_n,
// shifted = B_n = sqrt(Omega_n^2 - A_n^2), phase = theta_n = atan(A_n/B_n).
// sign is +1 for the dipole channel and -1 for the vibrational channel: it is
// the sign of the rho21 term in the solution and of theta_n in Re rho12.
template <typename Scalar>
struct BlockPropagator {
    Scalar decay{0};
    Scalar omega{0};
    Scalar shifted{0};
    Scalar phase{0};
    int sign{1};
};

using PropagatorParams = BlockPropagator<double>;

template <typename Scalar>
BlockPropagator<Scalar> make_propagator(Scalar decay, Scalar omega, int sign = 1) {
    using std::atan2;
    using std::sqrt;
    if (!(decay >= Scalar(0))) throw DomainError("decay rate must be >= 0");
    if (!(decay < omega))
        throw OverdampedError("overdamped block: A_n >= Omega_n violates weak coupling");
    BlockPropagator<Scalar> p;
    p.decay = decay;
    p.omega = omega;
    p.shifted = sqrt((omega - decay) * (omega + decay));
    p.phase = atan2(decay, p.shifted);
    p.sign = sign;
    return p;
}

inline PropagatorParams make_propagator(double decay, double omega, Channel channel) {
    return make_propagator<double>(decay, omega, channel_sign(channel));
}

// rho12(t) = e^{-At} [(cos Bt - i (Omega/B) sin Bt) rho12(0) - s (A/B) sin Bt rho21(0)]
// and rho21(t) from the conjugate equation.
template <typename Scalar>
std::pair<std::complex<Scalar>, std::complex<Scalar>>
propagate_block_analytic(const BlockPropagator<Scalar>& p, std::complex<Scalar> rho12_0,
                         std::complex<Scalar> rho21_0, Scalar t) {
    using std::cos;
    using std::exp;
    using std::sin;
    if (t == Scalar(0)) return {rho12_0, rho21_0};
    const Scalar envelope = exp(-p.decay * t);
    const Scalar c = cos(p.shifted * t);
    const Scalar sn = sin(p.shifted * t);
    const Scalar rotate = p.omega / p.shifted * sn;
    const Scalar mix = Scalar(p.sign) * p.decay / p.shifted * sn;
    const std::complex<Scalar> diag12(c, -rotate);
    const std::complex<Scalar> diag21(c, rotate);
    return {envelope * (diag12 * rho12_0 - mix * rho21_0),
            envelope * (diag21 * rho21_0 - mix * rho12_0)};
}

// Re rho12(t) = (w/2) e^{-At} sqrt(1+(A/B)^2) cos(Bt + s theta) for a real
// symmetric initial block rho12(0) = rho21(0) = w/2.
template <typename Scalar>
Scalar real_coherence(const BlockPropagator<Scalar>& p, Scalar weight, Scalar t) {
    using std::cos;
    using std::exp;
    using std::sqrt;
    const Scalar ratio = p.decay / p.shifted;
    return weight / Scalar(2) * exp(-p.decay * t) * sqrt(Scalar(1) + ratio * ratio) *
           cos(p.shifted * t + Scalar(p.sign) * p.phase);
}

// 2x2 generator M of d/dt (rho12, rho21) = M (rho12, rho21).
Eigen::Matrix2cd block_generator(const BlockCoupling& c, double omega);

// exp(M t) applied to the initial pair via the eigendecomposition of M.
Eigen::Vector2cd propagate_block_expm(const BlockCoupling& c, double omega,
                                      const Eigen::Vector2cd& initial, double t);

struct OdeOptions {
    double rel_tol{1e-10};
    double abs_tol{1e-12};
    double initial_step{1e-3};
    std::size_t max_steps_between_samples{1'000'000};
};

// Sampled trajectories: rows are time samples, columns are blocks n.
struct BlockTrajectories {
    Eigen::MatrixXcd rho12;
    Eigen::MatrixXcd rho21;
    Eigen::VectorXd rho00;
};

// Integrates each block pair (and d rho00/dt = 0) independently with an
// adaptive Dormand-Prince 5(4) stepper. `times` are in units of 1/g.
BlockTrajectories integrate_blocks_ode(const BlockState& initial,
                                       std::span<const BlockCoupling> couplings,
                                       std::span<const double> omegas,
                                       std::span<const double> times,
                                       const OdeOptions& options = {});

enum class Solver { analytic, ode };
enum class Form { exact_eq17, approx_eq34 };

std::string_view to_string(Solver s);
std::string_view to_string(Form f);
Solver solver_from_string(std::string_view s);
Form form_from_string(std::string_view s);

struct TimeSeries {
    Eigen::VectorXd times;   // g t / 2 pi
    Eigen::VectorXd p_down;  // reported population (P_up for the red sideband)
    Eigen::MatrixXcd rho12;  // samples x blocks; empty for closed-form traces
    Eigen::MatrixXcd rho21;
    Eigen::VectorXd rho00;
    Sideband sideband{Sideband::blue};
    std::string channel;
    std::vector<std::string> warnings;

    Index size() const { return static_cast<Index>(times.size()); }
};

inline double to_time_units(double t_norm, double g = 1.0) { return two_pi<double> * t_norm / g; }

// samples points uniformly spaced over [0, t_max_norm], endpoints included.
std::vector<double> uniform_grid(double t_max_norm, std::size_t samples);
inline std::vector<double> default_grid() { return uniform_grid(5.0, 2000); }

struct TraceOptions {
    Solver solver{Solver::analytic};
    Form form{Form::exact_eq17};
    OdeOptions ode{};
};

// P_down(t) under a microscopic channel; rates come from `spec` anchored at
// gamma0_tilde (ignored for Channel::none). approx_eq34 is the closed form
// (1/2){1 + sum_n w_n cos(Omega_n t) e^{-A_n t}} and does not use the solver.
TimeSeries pdown_trace(const BlockState& initial, const SystemParams& params,
                       const ReservoirSpec& spec, double gamma0_tilde,
                       std::span<const double> t_norm, const TraceOptions& options = {});

// (1/2){1 + sum_n p_n cos(2 g t sqrt(n+1)) e^{-gamma0 (n+1)^nu t}}
TimeSeries phenom_trace(const MotionalDistribution& dist, double gamma0, double nu, double g,
                        std::span<const double> t_norm);

} // namespace iondecoh
