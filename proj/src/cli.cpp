// cli.cpp — subcommand dispatch and artifact writing

#include "iondecoh/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace iondecoh::cli {

namespace fs = std::filesystem;

namespace {

Json config_json(const RunConfig& cfg) {
    Json j = Json::object();
    for (const auto& [k, v] : describe(cfg)) j[k] = v;
    return j;
}

RunConfig config_from(const std::string& path) {
    return path.empty() ? RunConfig{} : load_run_config(path);
}

void emit(const std::string& output, const std::string& contents, std::ostream& out) {
    if (output.empty() || output == "-") {
        out << contents;
        return;
    }
    write_file(output, contents);
}

std::vector<std::string> split_values(const std::string& list) {
    std::vector<std::string> values;
    std::string item;
    std::istringstream in(list);
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        values.push_back(item.substr(first, last - first + 1));
    }
    return values;
}

// Coherence of the isolated block n, sampled long enough for A_n t ~ 4.
std::vector<double> block_samples(const RunConfig& cfg, Index n, double decay,
                                  std::vector<double>& times) {
    const double omega = rabi_freq<double>(n, 1.0);
    const double period = two_pi<double> / omega;
    const double span = std::max(4.0 / decay, 6.0 * period);
    const auto samples = static_cast<std::size_t>(std::max(400.0, std::ceil(40.0 * span / period)));
    times.resize(samples);
    for (std::size_t i = 0; i < samples; ++i)
        times[i] = span * static_cast<double>(i) / static_cast<double>(samples - 1);

    BlockCoupling coupling{decay, 0.0, 1};
    if (cfg.channel == RunChannel::dipole || cfg.channel == RunChannel::vibrational)
        coupling = block_coupling(n, make_reservoir(cfg), cfg.gamma0_tilde);

    std::vector<double> values(samples);
    if (cfg.solver == Solver::ode) {
        BlockState single;
        single.rho12 = Eigen::VectorXcd::Constant(1, 0.5);
        single.rho21 = single.rho12;
        single.weights = Eigen::VectorXd::Ones(1);
        const BlockTrajectories traj = integrate_blocks_ode(
            single, std::span<const BlockCoupling>(&coupling, 1), std::span<const double>(&omega, 1),
            times);
        for (std::size_t i = 0; i < samples; ++i)
            values[i] = traj.rho12(static_cast<Eigen::Index>(i), 0).real();
    } else {
        const PropagatorParams prop = make_propagator<double>(coupling.decay(), omega, coupling.sign);
        for (std::size_t i = 0; i < samples; ++i)
            values[i] = propagate_block_analytic<double>(prop, 0.5, 0.5, times[i]).first.real();
    }
    return values;
}

Json fit_json(const RunConfig& cfg, const FitResult& r) {
    Json doc;
    doc["params"] = config_json(cfg);
    doc["fit"] = as_json(r.fit);
    doc["extracted_fit"] = r.extracted_fit ? as_json(*r.extracted_fit) : Json(nullptr);
    Json table = Json::array();
    for (const FitRow& row : r.rows)
        table.push_back(Json{{"n", row.n},
                             {"rate_tilde", row.rate},
                             {"extracted_tilde", row.extracted ? Json(*row.extracted) : Json(nullptr)},
                             {"fit_tilde", r.fit.evaluate(row.n)}});
    doc["table"] = std::move(table);
    return doc;
}

std::string fit_csv(const FitResult& r) {
    std::ostringstream os;
    os << "n,rate_tilde,extracted_tilde,fit_tilde\n";
    for (const FitRow& row : r.rows)
        os << row.n << ',' << format_number(row.rate) << ','
           << (row.extracted ? format_number(*row.extracted) : std::string()) << ','
           << format_number(r.fit.evaluate(row.n)) << '\n';
    return os.str();
}

void require_format(const std::string& format) {
    if (format != "csv" && format != "json")
        throw ConfigError("format", "--format must be csv or json");
}

struct Options {
    std::string config;
    std::string output;
    std::string format{"csv"};
    std::string axis;
    std::string values;
    std::optional<Index> n_min;
    std::optional<Index> n_max;
};

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    require_format(o.format);
    const RunConfig cfg = config_from(o.config);
    const TimeSeries ts = simulate(cfg);
    for (const auto& w : ts.warnings) err << "warning: " << w << '\n';
    std::ostringstream os;
    if (o.format == "json") os << as_json(ts, config_json(cfg)).dump(1) << '\n';
    else write_csv(os, ts);
    emit(o.output, os.str(), out);
    return kExitOk;
}

int cmd_rates(const Options& o, std::ostream& out) {
    require_format(o.format);
    const RunConfig cfg = config_from(o.config);
    if (cfg.channel == RunChannel::phenom)
        throw ConfigError("channel", "rates: channel phenom has no reservoir model");
    const Index n_max = o.n_max.value_or(cfg.n_max.value_or(20));
    const RateTable table = make_rate_table(make_reservoir(cfg), cfg.gamma0_tilde, n_max);
    std::ostringstream os;
    if (o.format == "json") {
        Json doc;
        doc["params"] = config_json(cfg);
        Json rows = Json::array();
        for (Eigen::Index n = 0; n < table.rates.size(); ++n)
            rows.push_back(Json{{"n", n},
                                {"omega_tilde", table.omega_tilde[n]},
                                {"kappa_tilde", table.kappa_tilde[n]},
                                {"f_ratio", table.f_ratio[n]},
                                {"rate_tilde", table.rates[n]}});
        doc["rates"] = std::move(rows);
        os << doc.dump(1) << '\n';
    } else {
        write_csv(os, table);
    }
    emit(o.output, os.str(), out);
    return kExitOk;
}

int cmd_fit_nu(const Options& o, std::ostream& out) {
    require_format(o.format);
    const RunConfig cfg = config_from(o.config);
    const FitResult r = fit_nu(cfg, o.n_min.value_or(0), o.n_max.value_or(20));
    emit(o.output, o.format == "json" ? fit_json(cfg, r).dump(1) + "\n" : fit_csv(r), out);
    return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const RunConfig base = config_from(o.config);
    if (o.axis != "d" && o.axis != "T_tilde" && o.axis != "alpha")
        throw ConfigError("axis", "--axis must be d, T_tilde or alpha");
    const std::vector<std::string> values = split_values(o.values);
    if (values.empty()) throw ConfigError("values", "--values must list at least one value");
    if (o.output.empty()) throw ConfigError("output", "sweep needs --output <directory>");

    std::vector<RunConfig> points;
    for (const std::string& v : values) {
        RunConfig cfg = base;
        if (o.axis == "alpha") set_field(cfg, "initial", "coherent:" + v);
        else set_field(cfg, o.axis, v);
        validate(cfg);
        points.push_back(cfg);
    }

    std::error_code ec;
    fs::create_directories(o.output, ec);
    if (ec) throw IoError("cannot create directory '" + o.output + "': " + ec.message());

    Json index;
    index["axis"] = o.axis;
    index["values"] = values;
    Json files = Json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const RunConfig& cfg = points[i];
        Json doc;
        doc["axis"] = o.axis;
        doc["value"] = values[i];
        doc["params"] = config_json(cfg);
        doc["fit"] = as_json(fit_nu(cfg, 0, 20).fit);
        const TimeSeries ts = simulate(cfg);
        try {
            doc["revival"] = as_json(revival_report(ts));
        } catch (const InsufficientDataError& e) {
            doc["revival"] = nullptr;
            doc["revival_error"] = e.what();
        }
        char name[32];
        std::snprintf(name, sizeof name, "point_%03zu.json", i);
        write_file(fs::path(o.output) / name, doc.dump(1) + "\n");
        files.push_back(name);
    }
    index["files"] = std::move(files);
    write_file(fs::path(o.output) / "index.json", index.dump(1) + "\n");
    out << "wrote " << points.size() << " sweep points to " << o.output << '\n';
    return kExitOk;
}

int cmd_calibrate(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.config.empty()) throw ConfigError("config", "calibrate needs --config <path>");
    const RamanCoupling c = raman_coupling(parse_raman_config(read_file(o.config)));
    for (const auto& w : c.warnings) err << "warning: " << w << '\n';
    emit(o.output, as_json(c).dump(1) + "\n", out);
    return kExitOk;
}

} // namespace

TimeSeries simulate(const RunConfig& cfg) {
    validate(cfg);
    const MotionalDistribution dist = make_distribution(cfg);
    const std::vector<double> grid = uniform_grid(cfg.t_max_norm, cfg.samples);
    if (cfg.channel == RunChannel::phenom) {
        TimeSeries ts = phenom_trace(dist, cfg.gamma0_tilde, cfg.nu, 1.0, grid);
        ts.sideband = cfg.sideband;
        return ts;
    }
    TraceOptions opts;
    opts.solver = cfg.solver;
    opts.form = cfg.form;
    return pdown_trace(initial_block_state(dist), make_system(cfg), make_reservoir(cfg),
                       cfg.gamma0_tilde, grid, opts);
}

FitResult fit_nu(const RunConfig& cfg, Index n_min, Index n_max) {
    validate(cfg);
    if (cfg.channel == RunChannel::none)
        throw ConfigError("channel", "fit-nu: channel none has no decay to fit");
    if (n_max < n_min + 2) throw ConfigError("n_max", "fit-nu: n range needs at least 3 levels");
    FitResult r;
    std::vector<RatePoint> exact;
    std::vector<RatePoint> extracted;
    std::vector<double> times;
    for (Index n = n_min; n <= n_max; ++n) {
        const double a = configured_rate(cfg, n);
        exact.push_back({n, a});
        FitRow row{n, a, std::nullopt};
        if (a < rabi_freq<double>(n, 1.0)) {
            const std::vector<double> values = block_samples(cfg, n, a, times);
            try {
                row.extracted = extract_decay(times, values, rabi_freq<double>(n, 1.0)).rate;
                extracted.push_back({n, *row.extracted});
            } catch (const InsufficientDataError&) {
                // Too few envelope extrema: leave the row without an estimate.
            }
        }
        r.rows.push_back(row);
    }
    r.fit = fit_power_law(exact);
    if (extracted.size() >= 3) r.extracted_fit = fit_power_law(extracted);
    return r;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decoherence-without-dissipation dynamics of a trapped-ion anti-Jaynes-Cummings "
                 "system"};
    app.require_subcommand(1);
    Options o;

    auto* simulate_cmd = app.add_subcommand("simulate", "write the P_down(t) trace");
    auto* rates_cmd = app.add_subcommand("rates", "write the per-n decoherence rate table");
    auto* fit_cmd = app.add_subcommand("fit-nu", "fit gamma0 (n+1)^nu to the per-n rates");
    auto* sweep_cmd = app.add_subcommand("sweep", "fit and simulate over a parameter axis");
    auto* calibrate_cmd = app.add_subcommand("calibrate", "Raman coupling constants");
    for (auto* sub : {simulate_cmd, rates_cmd, fit_cmd, sweep_cmd, calibrate_cmd}) {
        sub->add_option("--config", o.config, "key = value configuration file");
        sub->add_option("--output", o.output, "output path (stdout when omitted)");
        sub->add_option("--format", o.format, "csv or json");
    }
    rates_cmd->add_option("--n-max", o.n_max, "highest Fock level in the table");
    fit_cmd->add_option("--n-min", o.n_min, "lowest level of the fit window (default 0)");
    fit_cmd->add_option("--n-max", o.n_max, "highest level of the fit window (default 20)");
    sweep_cmd->add_option("--axis", o.axis, "d, T_tilde or alpha")->required();
    sweep_cmd->add_option("--values", o.values, "comma-separated values")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (*simulate_cmd) return cmd_simulate(o, out, err);
        if (*rates_cmd) return cmd_rates(o, out);
        if (*fit_cmd) {
            if (o.format == "csv" && !fit_cmd->count("--format")) o.format = "json";
            return cmd_fit_nu(o, out);
        }
        if (*sweep_cmd) return cmd_sweep(o, out);
        if (*calibrate_cmd) return cmd_calibrate(o, out, err);
    } catch (const ConfigError& e) {
        err << "config error";
        if (!e.key.empty()) err << " [" << e.key << "]";
        err << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace iondecoh::cli
