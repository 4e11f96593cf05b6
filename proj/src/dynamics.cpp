// dynamics.cpp — block propagation (closed form, matrix exponential, adaptive
// ODE) and P_down trace assembly

#include "iondecoh/dynamics.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

namespace iondecoh {

namespace odeint = boost::numeric::odeint;

std::string_view to_string(Solver s) { return s == Solver::ode ? "ode" : "analytic"; }

std::string_view to_string(Form f) { return f == Form::approx_eq34 ? "approx_eq34" : "exact_eq17"; }

Solver solver_from_string(std::string_view s) {
    if (s == "analytic") return Solver::analytic;
    if (s == "ode") return Solver::ode;
    throw DomainError("unknown solver '" + std::string(s) + "'");
}

Form form_from_string(std::string_view s) {
    if (s == "exact_eq17") return Form::exact_eq17;
    if (s == "approx_eq34") return Form::approx_eq34;
    throw DomainError("unknown form '" + std::string(s) + "'");
}

Eigen::Matrix2cd block_generator(const BlockCoupling& c, double omega) {
    using cd = std::complex<double>;
    const double diag = c.decay();
    const double off = static_cast<double>(c.sign) * c.coupling;
    Eigen::Matrix2cd m;
    m << cd(-diag, -omega), cd(-off, 0.0),
         cd(-off, 0.0), cd(-diag, omega);
    return m;
}

Eigen::Vector2cd propagate_block_expm(const BlockCoupling& c, double omega,
                                      const Eigen::Vector2cd& initial, double t) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(block_generator(c, omega));
    if (es.info() != Eigen::Success) throw IntegrationError("eigendecomposition of block failed");
    const Eigen::Matrix2cd& v = es.eigenvectors();
    const Eigen::Vector2cd growth = (es.eigenvalues() * t).array().exp();
    const Eigen::Vector2cd coeffs = v.partialPivLu().solve(initial);
    return v * growth.cwiseProduct(coeffs);
}

namespace {

// Real layout (Re rho12, Im rho12, Re rho21, Im rho21). The rho21 components
// mirror the rho12 ones term by term, so Hermitian data stays Hermitian.
using BlockVector = std::array<double, 4>;

struct BlockRhs {
    double omega;
    double diag;
    double off;

    void operator()(const BlockVector& x, BlockVector& dxdt, double /*t*/) const {
        dxdt[0] = omega * x[1] - diag * x[0] - off * x[2];
        dxdt[1] = -omega * x[0] - diag * x[1] - off * x[3];
        dxdt[2] = -omega * x[3] - diag * x[2] - off * x[0];
        dxdt[3] = omega * x[2] - diag * x[3] - off * x[1];
    }
};

using ScalarState = std::array<double, 1>;

template <typename State, typename Rhs, typename Observer>
void integrate_sampled(const Rhs& rhs, State x, std::span<const double> times,
                       const OdeOptions& options, Observer observe, const std::string& label) {
    using Stepper = odeint::runge_kutta_dopri5<State>;
    auto stepper = odeint::make_controlled<Stepper>(options.abs_tol, options.rel_tol);
    try {
        odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), options.initial_step,
                                [&](const State& s, double t) {
                                    for (double v : s) {
                                        if (!std::isfinite(v)) {
                                            std::ostringstream os;
                                            os << label << ": non-finite state at t=" << t;
                                            throw IntegrationError(os.str());
                                        }
                                    }
                                    observe(s, t);
                                },
                                odeint::max_step_checker(
                                    static_cast<int>(options.max_steps_between_samples)));
    } catch (const odeint::step_adjustment_error& e) {
        throw IntegrationError(label + ": step size underflow (" + e.what() + ")");
    } catch (const odeint::no_progress_error& e) {
        throw IntegrationError(label + ": no progress (" + e.what() + ")");
    }
}

void check_grid(std::span<const double> times) {
    if (times.empty()) throw DomainError("time grid is empty");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) throw DomainError("time grid contains a non-finite value");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw DomainError("time grid must be strictly increasing");
    }
}

} // namespace

BlockTrajectories integrate_blocks_ode(const BlockState& initial,
                                       std::span<const BlockCoupling> couplings,
                                       std::span<const double> omegas,
                                       std::span<const double> times,
                                       const OdeOptions& options) {
    check_grid(times);
    const auto blocks = static_cast<Eigen::Index>(initial.blocks());
    if (couplings.size() != initial.blocks() || omegas.size() != initial.blocks())
        throw DomainError("rate and frequency tables must match the number of blocks");

    const auto samples = static_cast<Eigen::Index>(times.size());
    BlockTrajectories out;
    out.rho12 = Eigen::MatrixXcd::Zero(samples, blocks);
    out.rho21 = Eigen::MatrixXcd::Zero(samples, blocks);
    out.rho00 = Eigen::VectorXd::Zero(samples);

    for (Eigen::Index n = 0; n < blocks; ++n) {
        const std::complex<double> a = initial.rho12[n];
        const std::complex<double> b = initial.rho21[n];
        if (a == 0.0 && b == 0.0) continue;
        const BlockCoupling& c = couplings[static_cast<std::size_t>(n)];
        const BlockRhs rhs{omegas[static_cast<std::size_t>(n)], c.decay(),
                           static_cast<double>(c.sign) * c.coupling};
        Eigen::Index row = 0;
        integrate_sampled(rhs, BlockVector{a.real(), a.imag(), b.real(), b.imag()}, times, options,
                          [&](const BlockVector& s, double) {
                              out.rho12(row, n) = {s[0], s[1]};
                              out.rho21(row, n) = {s[2], s[3]};
                              ++row;
                          },
                          "block n=" + std::to_string(n));
    }

    Eigen::Index row = 0;
    integrate_sampled([](const ScalarState&, ScalarState& d, double) { d[0] = 0.0; },
                      ScalarState{initial.rho00}, times, options,
                      [&](const ScalarState& s, double) { out.rho00[row++] = s[0]; }, "rho00");
    return out;
}

std::vector<double> uniform_grid(double t_max_norm, std::size_t samples) {
    if (!(t_max_norm > 0.0) || !std::isfinite(t_max_norm))
        throw DomainError("t_max must be positive and finite");
    if (samples < 2) throw DomainError("a time grid needs at least 2 samples");
    std::vector<double> grid(samples);
    const double step = t_max_norm / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) grid[i] = step * static_cast<double>(i);
    grid.back() = t_max_norm;
    return grid;
}

namespace {

std::string trace_label(const ReservoirSpec& spec) { return std::string(to_string(spec.channel)); }

double sum_ascending(std::vector<double>& scratch) {
    return pairwise_sum(std::span<const double>(scratch));
}

} // namespace

TimeSeries pdown_trace(const BlockState& initial, const SystemParams& params,
                       const ReservoirSpec& spec, double gamma0_tilde,
                       std::span<const double> t_norm, const TraceOptions& options) {
    validate(params);
    validate(spec);
    check_grid(t_norm);
    const auto blocks = static_cast<Eigen::Index>(initial.blocks());
    const auto samples = static_cast<Eigen::Index>(t_norm.size());

    TimeSeries ts;
    ts.sideband = params.sideband;
    ts.channel = trace_label(spec);
    ts.times = Eigen::Map<const Eigen::VectorXd>(t_norm.data(), samples);
    ts.p_down.resize(samples);

    // Rates are multiples of g; Omega_n and A_n in physical units scale with g.
    std::vector<BlockCoupling> couplings(static_cast<std::size_t>(blocks));
    std::vector<double> omegas(static_cast<std::size_t>(blocks));
    for (Eigen::Index n = 0; n < blocks; ++n) {
        BlockCoupling c = block_coupling(static_cast<Index>(n), spec, gamma0_tilde);
        c.coupling *= params.g;
        c.dephasing *= params.g;
        couplings[static_cast<std::size_t>(n)] = c;
        omegas[static_cast<std::size_t>(n)] = rabi_freq(static_cast<Index>(n), params);
    }
    std::vector<double> times(t_norm.size());
    for (std::size_t i = 0; i < t_norm.size(); ++i) times[i] = to_time_units(t_norm[i], params.g);

    std::vector<double> scratch(static_cast<std::size_t>(blocks));

    if (options.form == Form::approx_eq34) {
        for (Eigen::Index i = 0; i < samples; ++i) {
            const double t = times[static_cast<std::size_t>(i)];
            for (Eigen::Index n = 0; n < blocks; ++n) {
                const auto k = static_cast<std::size_t>(n);
                const double w = 2.0 * initial.rho12[n].real();
                scratch[k] = w * std::cos(omegas[k] * t) * std::exp(-couplings[k].decay() * t);
            }
            ts.p_down[i] = 0.5 * (1.0 - initial.rho00 + sum_ascending(scratch));
        }
        return ts;
    }

    if (options.solver == Solver::ode) {
        BlockTrajectories traj = integrate_blocks_ode(initial, couplings, omegas, times, options.ode);
        ts.rho12 = std::move(traj.rho12);
        ts.rho21 = std::move(traj.rho21);
        ts.rho00 = std::move(traj.rho00);
    } else {
        if (spec.channel == Channel::dipole && spec.kappa0_nbar0 > 0.0)
            ts.warnings.push_back(
                "closed-form propagator is approximate for kappa0_nbar0 > 0; use the ode solver");
        ts.rho12.resize(samples, blocks);
        ts.rho21.resize(samples, blocks);
        ts.rho00 = Eigen::VectorXd::Constant(samples, initial.rho00);
        for (Eigen::Index n = 0; n < blocks; ++n) {
            const auto k = static_cast<std::size_t>(n);
            const PropagatorParams prop =
                make_propagator<double>(couplings[k].decay(), omegas[k], couplings[k].sign);
            for (Eigen::Index i = 0; i < samples; ++i) {
                const auto [r12, r21] = propagate_block_analytic(
                    prop, initial.rho12[n], initial.rho21[n], times[static_cast<std::size_t>(i)]);
                ts.rho12(i, n) = r12;
                ts.rho21(i, n) = r21;
            }
        }
    }

    for (Eigen::Index i = 0; i < samples; ++i) {
        for (Eigen::Index n = 0; n < blocks; ++n)
            scratch[static_cast<std::size_t>(n)] = 2.0 * ts.rho12(i, n).real();
        ts.p_down[i] = 0.5 * (1.0 - ts.rho00[i] + sum_ascending(scratch));
    }
    return ts;
}

TimeSeries phenom_trace(const MotionalDistribution& dist, double gamma0, double nu, double g,
                        std::span<const double> t_norm) {
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) throw DomainError("gamma0 must be >= 0");
    if (!std::isfinite(nu)) throw DomainError("nu must be finite");
    if (!(g > 0.0)) throw DomainError("g must be positive");
    check_grid(t_norm);
    const auto samples = static_cast<Eigen::Index>(t_norm.size());
    const Eigen::VectorXd& p = dist.probabilities();

    TimeSeries ts;
    ts.channel = "phenom";
    ts.times = Eigen::Map<const Eigen::VectorXd>(t_norm.data(), samples);
    ts.p_down.resize(samples);
    std::vector<double> scratch(static_cast<std::size_t>(p.size()));
    for (Eigen::Index i = 0; i < samples; ++i) {
        const double t = to_time_units(t_norm[static_cast<std::size_t>(i)], g);
        for (Eigen::Index n = 0; n < p.size(); ++n) {
            const double level = static_cast<double>(n) + 1.0;
            scratch[static_cast<std::size_t>(n)] =
                p[n] * std::cos(2.0 * g * t * std::sqrt(level)) *
                std::exp(-gamma0 * std::pow(level, nu) * t);
        }
        ts.p_down[i] = 0.5 * (1.0 + sum_ascending(scratch));
    }
    return ts;
}

} // namespace iondecoh
