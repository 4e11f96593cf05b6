// analysis.cpp — envelope regression, power-law fitting, revival detection

#include "iondecoh/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace iondecoh {

namespace {

struct Peak {
    double time;
    double height;
};

// Straight-line least squares y = c0 + c1 x; returns (c0, c1, se(c1), rms).
struct LineFit {
    double intercept;
    double slope;
    double slope_error;
    double rms;
};

LineFit fit_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::MatrixXd design(x.size(), 2);
    design.col(0).setOnes();
    design.col(1) = x;
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd resid = y - design * coef;
    const auto m = static_cast<double>(x.size());
    const double ssr = resid.squaredNorm();
    const double sxx = (x.array() - x.mean()).square().sum();
    const double slope_error = m > 2.0 ? std::sqrt(ssr / (m - 2.0) / sxx) : 0.0;
    return {coef[0], coef[1], slope_error, std::sqrt(ssr / m)};
}

} // namespace

DecayEstimate extract_decay(std::span<const double> times, std::span<const double> values,
                            double omega) {
    if (times.size() != values.size()) throw DomainError("times and values differ in length");
    if (!(omega > 0.0)) throw DomainError("oscillation frequency must be positive");
    if (times.size() < 3) throw InsufficientDataError("need at least 3 samples");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw DomainError("times must be strictly increasing");

    const double period = 2.0 * std::numbers::pi / omega;
    const double span = times.back() - times.front();
    if (span < 5.0 * period)
        throw InsufficientDataError("samples span fewer than 5 oscillation periods");

    // |cos| peaks repeat every pi/B ~ pi/Omega; closer candidates are ripple.
    const double min_separation = 0.25 * period;
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        const double lo = std::abs(values[i - 1]);
        const double mid = std::abs(values[i]);
        const double hi = std::abs(values[i + 1]);
        if (!(mid > lo && mid >= hi)) continue;
        const double curvature = lo - 2.0 * mid + hi;
        double shift = 0.0;
        double height = mid;
        if (curvature < 0.0) {
            shift = 0.5 * (lo - hi) / curvature;
            height = mid - 0.25 * (lo - hi) * shift;
        }
        const double h = 0.5 * (times[i + 1] - times[i - 1]);
        const Peak peak{times[i] + shift * h, height};
        if (!(peak.height > 0.0)) continue;
        if (!peaks.empty() && peak.time - peaks.back().time < min_separation) {
            if (peak.height > peaks.back().height) peaks.back() = peak;
            continue;
        }
        peaks.push_back(peak);
    }
    if (peaks.size() < 4)
        throw InsufficientDataError("found " + std::to_string(peaks.size()) +
                                    " envelope extrema, need at least 4");

    Eigen::VectorXd t(static_cast<Eigen::Index>(peaks.size()));
    Eigen::VectorXd logh(t.size());
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        t[k] = peaks[static_cast<std::size_t>(k)].time;
        logh[k] = std::log(peaks[static_cast<std::size_t>(k)].height);
    }
    const LineFit line = fit_line(t, logh);
    return {-line.slope, line.slope_error, peaks.size()};
}

double PowerLawFit::evaluate(Index n) const {
    return gamma0_hat * std::pow(static_cast<double>(n) + 1.0, nu_hat);
}

PowerLawFit fit_power_law(std::span<const RatePoint> rates) {
    if (rates.size() < 3) throw InsufficientDataError("power-law fit needs at least 3 points");
    Eigen::VectorXd x(static_cast<Eigen::Index>(rates.size()));
    Eigen::VectorXd y(x.size());
    Index n_min = rates.front().n;
    Index n_max = rates.front().n;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const RatePoint& r = rates[static_cast<std::size_t>(k)];
        if (!(r.rate > 0.0) || !std::isfinite(r.rate))
            throw DomainError("rate at n=" + std::to_string(r.n) + " is not positive");
        x[k] = std::log(static_cast<double>(r.n) + 1.0);
        y[k] = std::log(r.rate);
        n_min = std::min(n_min, r.n);
        n_max = std::max(n_max, r.n);
    }
    if (n_min == n_max) throw InsufficientDataError("power-law fit needs distinct n values");
    const LineFit line = fit_line(x, y);
    return {std::exp(line.intercept), line.slope, line.rms, n_min, n_max};
}

RevivalReport revival_report(const TimeSeries& trace, const RevivalOptions& options) {
    const auto size = static_cast<std::size_t>(trace.times.size());
    if (static_cast<std::size_t>(trace.p_down.size()) != size)
        throw DomainError("trace times and populations differ in length");
    if (size < 16) throw InsufficientDataError("trace has fewer than 16 samples");

    const double dt = trace.times[1] - trace.times[0];
    if (!(dt > 0.0)) throw DomainError("trace times must be increasing");
    for (std::size_t i = 1; i < size; ++i) {
        const double step = trace.times[static_cast<Eigen::Index>(i)] -
                            trace.times[static_cast<Eigen::Index>(i - 1)];
        if (std::abs(step - dt) > 1e-6 * dt)
            throw DomainError("revival detection needs uniformly sampled traces");
    }

    std::vector<double> x(size);
    for (std::size_t i = 0; i < size; ++i) x[i] = trace.p_down[static_cast<Eigen::Index>(i)] - 0.5;
    const double initial = std::abs(x[0]);
    if (!(initial > 0.0)) throw InsufficientDataError("trace starts without oscillation amplitude");

    // Zero crossings as (sample index, fractional offset) so the spacing does
    // not depend on where the trace starts.
    std::vector<std::pair<std::size_t, double>> crossings;
    for (std::size_t i = 0; i + 1 < size && crossings.size() < 4; ++i) {
        if (x[i] * x[i + 1] < 0.0 || (x[i] != 0.0 && x[i + 1] == 0.0))
            crossings.emplace_back(i, x[i] / (x[i] - x[i + 1]));
    }
    if (crossings.size() < 4)
        throw InsufficientDataError("trace too short: fewer than 4 zero crossings of P - 1/2");
    const double half_period =
        (static_cast<double>(crossings[3].first - crossings[0].first) +
         (crossings[3].second - crossings[0].second)) /
        3.0;
    const auto half_width = static_cast<std::size_t>(
        std::max(1.0, std::round(options.window_periods * half_period)));
    if (size < 4 * half_width + 2)
        throw InsufficientDataError("trace too short for the envelope window");

    std::vector<double> envelope(size);
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t lo = i >= half_width ? i - half_width : 0;
        const std::size_t hi = std::min(size - 1, i + half_width);
        double acc = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) acc += x[j] * x[j];
        envelope[i] = std::sqrt(2.0 * acc / static_cast<double>(hi - lo + 1));
    }

    RevivalReport report;
    const double collapse_level = options.collapse_fraction * initial;
    const double revival_level = options.revival_fraction * initial;
    std::size_t i = 0;
    while (i < size && envelope[i] >= collapse_level) ++i;
    if (i == size) return report;
    report.collapse_time = trace.times[static_cast<Eigen::Index>(i)];

    while (i < size && envelope[i] >= revival_level) ++i;
    while (i < size) {
        while (i < size && envelope[i] <= revival_level) ++i;
        if (i == size) break;
        std::size_t best = i;
        while (i < size && envelope[i] > revival_level) {
            if (envelope[i] > envelope[best]) best = i;
            ++i;
        }
        // A maximum on the last sample may still be rising.
        if (best == size - 1) break;
        report.revival_times.push_back(trace.times[static_cast<Eigen::Index>(best)]);
        report.revival_amplitudes.push_back(envelope[best] / initial);
    }
    return report;
}

} // namespace iondecoh
