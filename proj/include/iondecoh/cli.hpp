// cli.hpp — command-line front end (simulate, rates, fit-nu, sweep, calibrate)

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iondecoh/analysis.hpp"
#include "iondecoh/config.hpp"
#include "iondecoh/io.hpp"

namespace iondecoh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

// Exact and extracted per-n rates of a fit-nu run. Extraction is skipped for
// blocks that do not oscillate long enough to resolve an envelope.
struct FitRow {
    Index n{0};
    double rate{0.0};
    std::optional<double> extracted;
};

struct FitResult {
    PowerLawFit fit;
    std::optional<PowerLawFit> extracted_fit; // needs 3 extracted rates
    std::vector<FitRow> rows;
};

TimeSeries simulate(const RunConfig& cfg);
FitResult fit_nu(const RunConfig& cfg, Index n_min, Index n_max);

// Runs the tool; argv[0] is the program name. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace iondecoh::cli
