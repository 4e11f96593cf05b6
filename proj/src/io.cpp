// io.cpp — artifact serialization

#include "iondecoh/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace iondecoh {

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void write_csv(std::ostream& os, const TimeSeries& ts) {
    os << (ts.sideband == Sideband::red ? "t_norm,p_up\n" : "t_norm,p_down\n");
    for (Eigen::Index i = 0; i < ts.times.size(); ++i)
        os << format_number(ts.times[i]) << ',' << format_number(ts.p_down[i]) << '\n';
}

void write_csv(std::ostream& os, const RateTable& table) {
    os << "n,omega_tilde,kappa_tilde,f_ratio,rate_tilde\n";
    for (Eigen::Index n = 0; n < table.rates.size(); ++n) {
        os << n << ',' << format_number(table.omega_tilde[n]) << ','
           << format_number(table.kappa_tilde[n]) << ',' << format_number(table.f_ratio[n]) << ','
           << format_number(table.rates[n]) << '\n';
    }
}

Json as_json(const TimeSeries& ts, const Json& params) {
    Json doc;
    doc["params"] = params;
    doc["channel"] = ts.channel;
    doc["sideband"] = ts.sideband == Sideband::red ? "red" : "blue";
    Json series = Json::array();
    for (Eigen::Index i = 0; i < ts.times.size(); ++i)
        series.push_back(Json::array({ts.times[i], ts.p_down[i]}));
    doc["series"] = std::move(series);
    if (!ts.warnings.empty()) doc["warnings"] = ts.warnings;
    return doc;
}

TimeSeries timeseries_from_json(const Json& doc) {
    TimeSeries ts;
    try {
        ts.channel = doc.at("channel").get<std::string>();
        if (doc.contains("sideband") && doc.at("sideband").get<std::string>() == "red")
            ts.sideband = Sideband::red;
        const Json& series = doc.at("series");
        const auto size = static_cast<Eigen::Index>(series.size());
        ts.times.resize(size);
        ts.p_down.resize(size);
        for (Eigen::Index i = 0; i < size; ++i) {
            const Json& row = series.at(static_cast<std::size_t>(i));
            ts.times[i] = row.at(0).get<double>();
            ts.p_down[i] = row.at(1).get<double>();
        }
        if (doc.contains("warnings")) ts.warnings = doc.at("warnings").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed time-series document: ") + e.what());
    }
    return ts;
}

Json as_json(const PowerLawFit& fit) {
    return Json{{"gamma0_hat", fit.gamma0_hat},
                {"nu_hat", fit.nu_hat},
                {"residual_rms", fit.residual_rms},
                {"n_range", Json::array({fit.n_min, fit.n_max})}};
}

Json as_json(const RevivalReport& report) {
    Json doc;
    doc["collapse_time"] = report.collapse_time ? Json(*report.collapse_time) : Json(nullptr);
    doc["revival_times"] = report.revival_times;
    doc["revival_amplitudes"] = report.revival_amplitudes;
    return doc;
}

Json as_json(const RamanCoupling& c) {
    return Json{{"g_re", c.g.real()},   {"g_im", c.g.imag()},     {"g_abs", std::abs(c.g)},
                {"Delta1", c.Delta1},   {"Delta2", c.Delta2},     {"x0", c.x0},
                {"eta", c.eta},         {"warnings", c.warnings}};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace iondecoh
