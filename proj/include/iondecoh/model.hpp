// model.hpp — system parameters, motional distributions and dressed-basis
// bookkeeping for the anti-Jaynes-Cummings ion model

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "iondecoh/errors.hpp"

namespace iondecoh {

using Index = std::size_t;

enum class Sideband { blue, red };

// Coupling g and trap frequency. In normalized mode g = 1 and every rate is a
// multiple of g.
struct SystemParams {
    double g{1.0};
    double omega_x{1.0};
    Sideband sideband{Sideband::blue};

    static SystemParams normalized(Sideband sb = Sideband::blue) { return {1.0, 1.0, sb}; }
};

void validate(const SystemParams& params);

// Probability vector over Fock states 0..n_max.
class MotionalDistribution {
public:
    MotionalDistribution() = default;
    // Renormalizes `p` onto the unit simplex; rejects negative or non-finite
    // entries and vanishing total mass.
    explicit MotionalDistribution(Eigen::VectorXd p);

    const Eigen::VectorXd& probabilities() const { return p_; }
    double operator[](Index n) const { return p_[static_cast<Eigen::Index>(n)]; }
    Index n_max() const { return static_cast<Index>(p_.size()) - 1; }
    Index size() const { return static_cast<Index>(p_.size()); }

private:
    Eigen::VectorXd p_;
};

// Truncation tolerance: mass beyond n_max must stay below this.
inline constexpr double kTailTolerance = 1e-8;

Index default_coherent_n_max(double alpha);
Index default_thermal_n_max(double nbar);

MotionalDistribution fock_dist(Index n, Index n_max);
MotionalDistribution coherent_dist(double alpha, Index n_max);
MotionalDistribution coherent_dist(double alpha);
MotionalDistribution thermal_dist(double nbar, Index n_max);
MotionalDistribution thermal_dist(double nbar);

// Dressed eigenstates |phi(n,1)>, |phi(n,2)> and the uncoupled |up,0>.
enum class Branch { plus, minus };

struct DressedIndex {
    Index n{0};
    Branch branch{Branch::plus};
    bool special{false};

    static DressedIndex up_ground() { return {0, Branch::plus, true}; }
};

template <typename Scalar>
Scalar eigenvalue(const DressedIndex& idx, Scalar g) {
    using std::sqrt;
    if (idx.special) return Scalar(0);
    const Scalar level = g * sqrt(Scalar(idx.n) + Scalar(1));
    return idx.branch == Branch::plus ? level : -level;
}

// Dressed-pair splitting Omega_n = E_n^+ - E_n^- = 2 g sqrt(n+1).
template <typename Scalar>
Scalar rabi_freq(Index n, Scalar g) {
    using std::sqrt;
    return Scalar(2) * g * sqrt(Scalar(n) + Scalar(1));
}

inline double rabi_freq(Index n, const SystemParams& params) { return rabi_freq(n, params.g); }

// Inputs of the two-photon Raman calibration (SI units, angular frequencies).
struct RamanInputs {
    std::complex<double> g01;
    std::complex<double> g02;
    double Delta{0.0};
    double k1x{0.0};
    double k2x{0.0};
    double mass{0.0};
    double omega_x{0.0};
};

struct RamanCoupling {
    std::complex<double> g;
    double Delta1{0.0};
    double Delta2{0.0};
    double x0{0.0};
    double eta{0.0};
    std::vector<std::string> warnings;
};

inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kDetuningWarnRatio = 0.1;
inline constexpr double kLambDickeGood = 0.3;
inline constexpr double kLambDickeWarn = 1.0;

RamanCoupling raman_coupling(const RamanInputs& in);

// Rate given in 1/s, coupling given as g/2pi in Hz: returns rate / g.
inline double normalized_rate(double rate_per_second, double g_over_two_pi_hz) {
    return rate_per_second / (2.0 * std::numbers::pi * g_over_two_pi_hz);
}

enum class InternalState { down, up };

// Elements of the dressed-basis density operator that P_down depends on:
// rho12^{nn}, rho21^{nn} for every block and the scalar rho00 of |up,0>.
struct BlockState {
    Eigen::VectorXcd rho12;
    Eigen::VectorXcd rho21;
    Eigen::VectorXd weights;
    double rho00{0.0};

    Index blocks() const { return static_cast<Index>(rho12.size()); }

    // Copy with every block except n zeroed; rho00 is kept.
    BlockState isolate(Index n) const;
};

BlockState initial_block_state(const MotionalDistribution& dist,
                               InternalState internal = InternalState::down);

// P_down = (1 - rho00 + 2 sum_n Re rho12^{nn}) / 2. For the red sideband the
// same number is the upper-state population.
double p_down(const BlockState& state);

} // namespace iondecoh
