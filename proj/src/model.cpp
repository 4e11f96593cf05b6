// model.cpp — motional distributions, Raman calibration and block-state setup

#include "iondecoh/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iondecoh/numeric.hpp"

namespace iondecoh {

namespace {

double simplex_sum(const Eigen::VectorXd& p) {
    return pairwise_sum(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

// Divide by the total, then nudge the largest entry until the pairwise sum is
// exactly one. p_down relies on this to report 1 for the initial |down> state.
void normalize_exact(Eigen::VectorXd& p) {
    p /= simplex_sum(p);
    Eigen::Index top = 0;
    p.maxCoeff(&top);
    for (int iter = 0; iter < 8; ++iter) {
        const double s = simplex_sum(p);
        if (s == 1.0) break;
        p[top] += 1.0 - s;
    }
}

std::string describe(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

void validate(const SystemParams& params) {
    if (!(params.g > 0.0) || !std::isfinite(params.g))
        throw DomainError("coupling g must be positive and finite, got " + describe(params.g));
    if (!(params.omega_x > 0.0) || !std::isfinite(params.omega_x))
        throw DomainError("trap frequency must be positive and finite, got " +
                          describe(params.omega_x));
}

MotionalDistribution::MotionalDistribution(Eigen::VectorXd p) : p_(std::move(p)) {
    if (p_.size() == 0) throw DomainError("motional distribution must have at least one entry");
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_[i]) || p_[i] < 0.0)
            throw DomainError("probability p_" + std::to_string(i) + " is negative or not finite");
    }
    if (!(simplex_sum(p_) > 0.0)) throw DomainError("motional distribution has zero total mass");
    normalize_exact(p_);
}

Index default_coherent_n_max(double alpha) {
    return static_cast<Index>(std::ceil(alpha * alpha + 8.0 * alpha + 10.0));
}

Index default_thermal_n_max(double nbar) {
    return static_cast<Index>(std::ceil(nbar * 40.0)) + 10;
}

MotionalDistribution fock_dist(Index n, Index n_max) {
    if (n > n_max)
        throw RangeError("Fock level " + std::to_string(n) + " exceeds n_max = " +
                         std::to_string(n_max));
    Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_max) + 1);
    p[static_cast<Eigen::Index>(n)] = 1.0;
    return MotionalDistribution(std::move(p));
}

MotionalDistribution coherent_dist(double alpha, Index n_max) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw DomainError("coherent amplitude must be finite and >= 0, got " + describe(alpha));
    const auto size = static_cast<Eigen::Index>(n_max) + 1;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(size);
    if (alpha == 0.0) {
        p[0] = 1.0;
        return MotionalDistribution(std::move(p));
    }
    const double mean = alpha * alpha;
    const double log_alpha2 = std::log(mean);
    for (Eigen::Index n = 0; n < size; ++n) {
        const auto nd = static_cast<double>(n);
        p[n] = std::exp(-mean + nd * log_alpha2 - std::lgamma(nd + 1.0));
    }
    const double tail = std::max(0.0, 1.0 - simplex_sum(p));
    if (tail >= kTailTolerance) {
        const Index suggested = std::max(default_coherent_n_max(alpha), n_max + 1);
        throw TruncationError("coherent state alpha=" + describe(alpha) + " truncated at n_max=" +
                                  std::to_string(n_max) + " loses mass " + describe(tail) +
                                  "; use n_max >= " + std::to_string(suggested),
                              tail, suggested);
    }
    return MotionalDistribution(std::move(p));
}

MotionalDistribution coherent_dist(double alpha) {
    return coherent_dist(alpha, default_coherent_n_max(alpha));
}

MotionalDistribution thermal_dist(double nbar, Index n_max) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar))
        throw DomainError("mean phonon number must be finite and >= 0, got " + describe(nbar));
    const auto size = static_cast<Eigen::Index>(n_max) + 1;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(size);
    const double ratio = nbar / (nbar + 1.0);
    double term = 1.0 / (nbar + 1.0);
    for (Eigen::Index n = 0; n < size; ++n) {
        p[n] = term;
        term *= ratio;
    }
    const double tail = std::pow(ratio, static_cast<double>(size));
    if (tail >= kTailTolerance) {
        const Index suggested = std::max(default_thermal_n_max(nbar), n_max + 1);
        throw TruncationError("thermal state nbar=" + describe(nbar) + " truncated at n_max=" +
                                  std::to_string(n_max) + " loses mass " + describe(tail) +
                                  "; use n_max >= " + std::to_string(suggested),
                              tail, suggested);
    }
    return MotionalDistribution(std::move(p));
}

MotionalDistribution thermal_dist(double nbar) {
    return thermal_dist(nbar, default_thermal_n_max(nbar));
}

RamanCoupling raman_coupling(const RamanInputs& in) {
    if (in.Delta == 0.0) throw DomainError("Raman detuning Delta must be nonzero");
    if (!(in.mass > 0.0)) throw DomainError("ion mass must be positive");
    if (!(in.omega_x > 0.0)) throw DomainError("trap frequency must be positive");

    RamanCoupling out;
    const double dk = in.k2x - in.k1x;
    out.x0 = std::sqrt(kHbar / (2.0 * in.mass * in.omega_x));
    out.eta = std::abs(dk) * out.x0;
    out.Delta1 = std::norm(in.g01) / in.Delta;
    out.Delta2 = std::norm(in.g02) / in.Delta;
    out.g = std::complex<double>(0.0, 1.0) * std::conj(in.g01) * in.g02 * dk * out.x0 / in.Delta;

    const double largest = std::max(std::abs(in.g01), std::abs(in.g02));
    if (largest > kDetuningWarnRatio * std::abs(in.Delta)) {
        out.warnings.push_back("large-detuning condition weak: max|g0l|/|Delta| = " +
                               describe(largest / std::abs(in.Delta)) + " > " +
                               describe(kDetuningWarnRatio));
    }
    if (out.eta >= kLambDickeWarn) {
        out.warnings.push_back("outside Lamb-Dicke regime: eta = " + describe(out.eta) + " >= 1");
    } else if (out.eta >= kLambDickeGood) {
        out.warnings.push_back("Lamb-Dicke parameter marginal: eta = " + describe(out.eta));
    }
    return out;
}

BlockState BlockState::isolate(Index n) const {
    BlockState out = *this;
    for (Eigen::Index m = 0; m < rho12.size(); ++m) {
        if (static_cast<Index>(m) == n) continue;
        out.rho12[m] = 0.0;
        out.rho21[m] = 0.0;
        out.weights[m] = 0.0;
    }
    return out;
}

BlockState initial_block_state(const MotionalDistribution& dist, InternalState internal) {
    const auto size = static_cast<Eigen::Index>(dist.size());
    BlockState state;
    state.rho12 = Eigen::VectorXcd::Zero(size);
    state.rho21 = Eigen::VectorXcd::Zero(size);
    state.weights = Eigen::VectorXd::Zero(size);
    const Eigen::VectorXd& p = dist.probabilities();

    if (internal == InternalState::down) {
        // |down,n> = (|phi(n,1)> + |phi(n,2)>)/sqrt(2)
        for (Eigen::Index n = 0; n < size; ++n) {
            state.rho12[n] = p[n] / 2.0;
            state.rho21[n] = p[n] / 2.0;
            state.weights[n] = p[n];
        }
        return state;
    }

    if (p[0] > 0.0)
        throw UnsupportedInitialState(
            "initial |up> with p_0 > 0 populates |up,0>; only the |down> product state and |up> "
            "states with p_0 = 0 are supported");
    // |up,n+1> = (|phi(n,1)> - |phi(n,2)>)/sqrt(2) occupies block n.
    for (Eigen::Index n = 1; n < size; ++n) {
        state.rho12[n - 1] = -p[n] / 2.0;
        state.rho21[n - 1] = -p[n] / 2.0;
        state.weights[n - 1] = p[n];
    }
    return state;
}

double p_down(const BlockState& state) {
    std::vector<double> twice_re(static_cast<std::size_t>(state.rho12.size()));
    for (Eigen::Index n = 0; n < state.rho12.size(); ++n)
        twice_re[static_cast<std::size_t>(n)] = 2.0 * state.rho12[n].real();
    const double coherent = pairwise_sum(std::span<const double>(twice_re));
    return 0.5 * (1.0 - state.rho00 + coherent);
}

} // namespace iondecoh
