// io.hpp — CSV and JSON serialization of traces, rate tables and fit reports

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "iondecoh/analysis.hpp"
#include "iondecoh/dynamics.hpp"
#include "iondecoh/model.hpp"
#include "iondecoh/reservoir.hpp"

namespace iondecoh {

using Json = nlohmann::ordered_json;

// 15 significant digits; infinities print as "inf".
std::string format_number(double v);

// Header `t_norm,p_down` (`t_norm,p_up` for the red sideband).
void write_csv(std::ostream& os, const TimeSeries& ts);

// Header `n,omega_tilde,kappa_tilde,f_ratio,rate_tilde`.
void write_csv(std::ostream& os, const RateTable& table);

// {params, channel, series: [[t, p], ...]}
Json as_json(const TimeSeries& ts, const Json& params = Json::object());
TimeSeries timeseries_from_json(const Json& doc);

Json as_json(const PowerLawFit& fit);
Json as_json(const RevivalReport& report);
Json as_json(const RamanCoupling& coupling);

void write_file(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

} // namespace iondecoh
