// analysis.hpp — decay-rate extraction, power-law fits and collapse/revival
// detection on simulated traces

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "iondecoh/dynamics.hpp"
#include "iondecoh/model.hpp"

namespace iondecoh {

struct DecayEstimate {
    double rate{0.0};
    double std_error{0.0};
    std::size_t extrema{0};
};

// Envelope decay of a damped oscillation: picks the extrema of |values|
// (refined by a parabola through the three samples around each), then fits
// log|peak| against time by least squares. `times` are in units of 1/g and
// `omega` is the nominal angular frequency of the oscillation.
DecayEstimate extract_decay(std::span<const double> times, std::span<const double> values,
                            double omega);

struct RatePoint {
    Index n{0};
    double rate{0.0};
};

struct PowerLawFit {
    double gamma0_hat{0.0};
    double nu_hat{0.0};
    double residual_rms{0.0}; // RMS of log-space residuals
    Index n_min{0};
    Index n_max{0};

    double evaluate(Index n) const;
};

// Least squares for log A_n = log gamma0 + nu log(n+1).
PowerLawFit fit_power_law(std::span<const RatePoint> rates);

struct RevivalOptions {
    double collapse_fraction{0.1};
    double revival_fraction{0.05};
    double window_periods{2.0};
};

struct RevivalReport {
    std::optional<double> collapse_time;  // g t / 2 pi
    std::vector<double> revival_times;    // g t / 2 pi
    std::vector<double> revival_amplitudes; // relative to the initial amplitude
};

// Works on the rolling oscillation amplitude sqrt(2 <(P - 1/2)^2>) over a
// centered window of `window_periods` oscillation periods, the period being
// estimated from the first zero crossings of P - 1/2. Collapse is the first
// time the amplitude drops below collapse_fraction of |P(0) - 1/2|. After the
// amplitude has also dropped below revival_fraction, each later excursion
// above that level contributes its maximum as one revival. Requires a
// uniformly sampled trace.
RevivalReport revival_report(const TimeSeries& trace, const RevivalOptions& options = {});

} // namespace iondecoh
