// run.hpp — Run configuration, parameter sweeps, and command implementations

#pragma once

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qslb/dynamics.hpp"
#include "qslb/errors.hpp"
#include "qslb/io.hpp"
#include "qslb/metrics.hpp"
#include "qslb/spectral.hpp"
#include "qslb/spectrum.hpp"

namespace qslb {

// ------------------------------ Configuration -------------------------------

struct SweepAxis {
    std::string name;
    double min{0.0};
    double max{0.0};
    int points{1};
};

// Flat sectioned key-value configuration. All frequencies are in units of
// omega_c and times in 1/omega_c; the written form carries that declaration
// in its header.
struct RunConfig {
    // [system]
    double omega0 = 0.1;
    // [environment]
    std::string model = "ohmic";  // ohmic | array | discrete-file
    double eta = 0.2;
    double s = 1.0;
    double omega_c = 1.0;
    double g = 0.1;
    double xi = 0.05;
    int n_modes = 800;
    std::string discrete_file;
    double weight_threshold = 1e-3;
    // [solver]
    double tau = 800.0;
    double dt = 0.02;
    std::string method = "volterra";  // volterra | eigen | both
    int disc_modes = 4000;
    double disc_omega_max = 20.0;
    // [sweep]
    std::vector<SweepAxis> axes;
    // [output]
    std::string out_dir = "out";
    std::string format = "csv";  // csv | json-lines
    int jobs = 0;                // 0 = resolve from environment/hardware

    void validate() const;
    std::string serialize() const;
    static RunConfig parse_text(const std::string& text);
    static RunConfig parse_file(const std::filesystem::path& path);

    EnvironmentModel make_environment() const;
    double param(const std::string& name) const;
    void set_param(const std::string& name, double value);
};

namespace detail {

inline double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos])))
            ++pos;
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw config_error("line " + std::to_string(line) +
                           ": expected a number, got '" + v + "'");
    }
}

inline int parse_int(const std::string& v, int line) {
    const double d = parse_double(v, line);
    const int i = static_cast<int>(std::llround(d));
    if (std::abs(d - i) > 0.0)
        throw config_error("line " + std::to_string(line) +
                           ": expected an integer, got '" + v + "'");
    return i;
}

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace detail

inline void RunConfig::validate() const {
    if (model != "ohmic" && model != "array" && model != "discrete-file")
        throw config_error("environment.model must be ohmic, array or "
                           "discrete-file; got '" + model + "'");
    if (method != "volterra" && method != "eigen" && method != "both")
        throw config_error("solver.method must be volterra, eigen or both; got '" +
                           method + "'");
    if (format != "csv" && format != "json-lines")
        throw config_error("output.format must be csv or json-lines; got '" +
                           format + "'");
    if (!(omega0 > 0.0)) throw config_error("system.omega0 must be > 0");
    if (!(omega_c > 0.0)) throw config_error("environment.omega_c must be > 0");
    if (!(tau > 0.0) || !(dt > 0.0))
        throw config_error("solver.tau and solver.dt must be > 0");
    const double ratio = tau / dt;
    if (std::abs(ratio - std::llround(ratio)) > 1e-9 || ratio < 2)
        throw config_error("solver.tau/dt must be an integer >= 2");
    if (model == "ohmic" && !(eta >= 0.0))
        throw config_error("environment.eta must be >= 0");
    if (model == "ohmic" && !(s > 0.0))
        throw config_error("environment.s must be > 0");
    if (model == "array" && (n_modes < 2 || n_modes % 2 != 0))
        throw config_error("environment.n_modes must be a positive even integer");
    if (model == "discrete-file" && discrete_file.empty())
        throw config_error("environment.discrete_file is required for "
                           "model = discrete-file");
    if (axes.size() > 2) throw config_error("at most two sweep axes supported");

    std::set<std::string> allowed;
    if (model == "ohmic") allowed = {"eta", "s", "omega0"};
    else if (model == "array") allowed = {"g", "xi", "omega0"};
    else allowed = {"omega0"};
    for (const auto& ax : axes) {
        if (!allowed.count(ax.name))
            throw config_error("sweep axis '" + ax.name +
                               "' is not a parameter of model " + model);
        if (ax.points < 1)
            throw config_error("sweep axis '" + ax.name + "': points must be >= 1");
        if (ax.points > 1 && !(ax.max > ax.min))
            throw config_error("sweep axis '" + ax.name + "': max must exceed min");
    }
}

inline std::string RunConfig::serialize() const {
    std::ostringstream o;
    o << io::units_comment;
    o << "[system]\n";
    o << "omega0 = " << io::exact(omega0) << "\n\n";
    o << "[environment]\n";
    o << "model = " << model << '\n';
    o << "omega_c = " << io::exact(omega_c) << '\n';
    if (model == "ohmic") {
        o << "eta = " << io::exact(eta) << '\n';
        o << "s = " << io::exact(s) << '\n';
    } else if (model == "array") {
        o << "g = " << io::exact(g) << '\n';
        o << "xi = " << io::exact(xi) << '\n';
        o << "n_modes = " << n_modes << '\n';
    } else {
        o << "discrete_file = " << discrete_file << '\n';
    }
    o << "weight_threshold = " << io::exact(weight_threshold) << "\n\n";
    o << "[solver]\n";
    o << "tau = " << io::exact(tau) << '\n';
    o << "dt = " << io::exact(dt) << '\n';
    o << "method = " << method << '\n';
    o << "disc_modes = " << disc_modes << '\n';
    o << "disc_omega_max = " << io::exact(disc_omega_max) << "\n\n";
    if (!axes.empty()) {
        o << "[sweep]\n";
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const std::string sfx = (i == 0) ? "" : "2";
            o << "axis" << sfx << " = " << axes[i].name << '\n';
            o << "min" << sfx << " = " << io::exact(axes[i].min) << '\n';
            o << "max" << sfx << " = " << io::exact(axes[i].max) << '\n';
            o << "points" << sfx << " = " << axes[i].points << '\n';
        }
        o << '\n';
    }
    o << "[output]\n";
    o << "dir = " << out_dir << '\n';
    o << "format = " << format << '\n';
    o << "jobs = " << jobs << '\n';
    return o.str();
}

inline RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig cfg;
    cfg.axes.clear();
    SweepAxis ax1, ax2;
    bool have1 = false, have2 = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s_line = detail::trim(raw);
        if (s_line.empty()) continue;
        if (s_line.front() == '[') {
            if (s_line.back() != ']')
                throw config_error("line " + std::to_string(line) +
                                   ": malformed section header");
            section = s_line.substr(1, s_line.size() - 2);
            if (section != "system" && section != "environment" &&
                section != "solver" && section != "sweep" && section != "output")
                throw config_error("line " + std::to_string(line) +
                                   ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = s_line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line) +
                               ": expected 'key = value'");
        const std::string key = detail::trim(s_line.substr(0, eq));
        const std::string val = detail::trim(s_line.substr(eq + 1));
        if (section.empty())
            throw config_error("line " + std::to_string(line) +
                               ": key '" + key + "' outside any section");

        auto unknown = [&]() -> config_error {
            return config_error("line " + std::to_string(line) + ": unknown key '" +
                                key + "' in section [" + section + "]");
        };
        if (section == "system") {
            if (key == "omega0") cfg.omega0 = detail::parse_double(val, line);
            else throw unknown();
        } else if (section == "environment") {
            if (key == "model") cfg.model = val;
            else if (key == "eta") cfg.eta = detail::parse_double(val, line);
            else if (key == "s") cfg.s = detail::parse_double(val, line);
            else if (key == "omega_c") cfg.omega_c = detail::parse_double(val, line);
            else if (key == "g") cfg.g = detail::parse_double(val, line);
            else if (key == "xi") cfg.xi = detail::parse_double(val, line);
            else if (key == "n_modes") cfg.n_modes = detail::parse_int(val, line);
            else if (key == "discrete_file") cfg.discrete_file = val;
            else if (key == "weight_threshold")
                cfg.weight_threshold = detail::parse_double(val, line);
            else throw unknown();
        } else if (section == "solver") {
            if (key == "tau") cfg.tau = detail::parse_double(val, line);
            else if (key == "dt") cfg.dt = detail::parse_double(val, line);
            else if (key == "method") cfg.method = val;
            else if (key == "disc_modes") cfg.disc_modes = detail::parse_int(val, line);
            else if (key == "disc_omega_max")
                cfg.disc_omega_max = detail::parse_double(val, line);
            else throw unknown();
        } else if (section == "sweep") {
            if (key == "axis") { ax1.name = val; have1 = true; }
            else if (key == "min") ax1.min = detail::parse_double(val, line);
            else if (key == "max") ax1.max = detail::parse_double(val, line);
            else if (key == "points") ax1.points = detail::parse_int(val, line);
            else if (key == "axis2") { ax2.name = val; have2 = true; }
            else if (key == "min2") ax2.min = detail::parse_double(val, line);
            else if (key == "max2") ax2.max = detail::parse_double(val, line);
            else if (key == "points2") ax2.points = detail::parse_int(val, line);
            else throw unknown();
        } else {  // output
            if (key == "dir") cfg.out_dir = val;
            else if (key == "format") cfg.format = val;
            else if (key == "jobs") cfg.jobs = detail::parse_int(val, line);
            else throw unknown();
        }
    }
    if (have2 && !have1)
        throw config_error("sweep axis2 given without a primary axis");
    if (have1) cfg.axes.push_back(ax1);
    if (have2) cfg.axes.push_back(ax2);
    cfg.validate();
    return cfg;
}

inline RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot read config file: " + path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_text(buf.str());
}

// Plain-text mode list for model = discrete-file: one "omega g" (or
// "omega,g") pair per line, '#' comments allowed.
inline DiscreteBath read_discrete_bath(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot read discrete bath file: " + path.string());
    std::vector<double> freqs, gs;
    std::string raw;
    int line = 0;
    while (std::getline(f, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        for (auto& ch : raw)
            if (ch == ',') ch = ' ';
        std::istringstream ls(raw);
        double w, gk;
        if (!(ls >> w)) continue;
        if (!(ls >> gk))
            throw config_error(path.string() + ":" + std::to_string(line) +
                               ": expected 'omega g' pair");
        freqs.push_back(w);
        gs.push_back(gk);
    }
    try {
        return DiscreteBath(std::move(freqs), std::move(gs));
    } catch (const std::invalid_argument& e) {
        throw config_error(path.string() + ": " + e.what());
    }
}

inline EnvironmentModel RunConfig::make_environment() const {
    if (model == "ohmic") return OhmicFamily(eta, s, omega_c);
    if (model == "array") return ResonatorArray(g, xi, omega_c, n_modes);
    return read_discrete_bath(discrete_file);
}

inline double RunConfig::param(const std::string& name) const {
    if (name == "eta") return eta;
    if (name == "s") return s;
    if (name == "omega0") return omega0;
    if (name == "g") return g;
    if (name == "xi") return xi;
    throw config_error("unknown sweep parameter '" + name + "'");
}

inline void RunConfig::set_param(const std::string& name, double value) {
    if (name == "eta") eta = value;
    else if (name == "s") s = value;
    else if (name == "omega0") omega0 = value;
    else if (name == "g") g = value;
    else if (name == "xi") xi = value;
    else throw config_error("unknown sweep parameter '" + name + "'");
}

// ------------------------------- Parallel map -------------------------------

inline int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QSLB_DEFAULT_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(0..n-1) over a small worker pool. Results must be written to
// per-index slots; the work items share no mutable state.
template <class Fn>
inline void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    if (n == 0) return;
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&]() {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    for (auto& th : pool) th.join();
}

// ------------------------------ Point evaluation ----------------------------

// Everything a sweep records about one parameter point. `status` is one of
// ok | undefined-QSL | solver-error; failures never abort the sweep.
struct PointResult {
    std::string status = "ok";
    std::string message;
    double final_population{0.0};
    double qsl_ratio{0.0};
    double non_markovianity{0.0};
    bool n_converged{true};
    double dn_dtau{0.0};
    std::vector<BoundState> bound_states;
    double solver_deviation{-1.0};  // < 0 when only one solver ran
};

namespace detail {

// Bound-state content for reporting: continuum secular roots for the Ohmic
// family, isolated eigenvalues of the finite model for discrete baths.
inline std::vector<BoundState> point_bound_states(const RunConfig& cfg,
                                                  const EnvironmentModel& env) {
    if (cfg.model == "ohmic")
        return find_bound_states(env, cfg.omega0, cfg.weight_threshold);
    EigenSystem eig;
    DiscreteBath bath = (cfg.model == "array")
                            ? to_discrete_bath(std::get<ResonatorArray>(env))
                            : std::get<DiscreteBath>(env);
    eig = (cfg.model == "array")
              ? array_eigensystem(std::get<ResonatorArray>(env), cfg.omega0)
              : arrowhead_eigensystem(bath, cfg.omega0);
    std::vector<BoundState> out;
    for (auto i : isolated_indices(eig, bath, cfg.weight_threshold))
        out.push_back({eig.energies[i], eig.system_weights[i]});
    return out;
}

inline EigenSystem point_eigensystem(const RunConfig& cfg,
                                     const EnvironmentModel& env) {
    if (cfg.model == "ohmic") {
        const auto& oh = std::get<OhmicFamily>(env);
        return arrowhead_eigensystem(
            discretize(oh, cfg.disc_modes, cfg.disc_omega_max * cfg.omega_c),
            cfg.omega0);
    }
    if (cfg.model == "array")
        return array_eigensystem(std::get<ResonatorArray>(env), cfg.omega0);
    return arrowhead_eigensystem(std::get<DiscreteBath>(env), cfg.omega0);
}

struct PointTrajectories {
    Trajectory primary;            // drives the metrics
    Trajectory secondary;          // only with method = both
    bool has_secondary{false};
    double deviation{-1.0};
};

inline PointTrajectories point_trajectories(const RunConfig& cfg,
                                            const EnvironmentModel& env) {
    PointTrajectories out;
    if (cfg.method == "volterra" || cfg.method == "both")
        out.primary = solve_volterra(env, cfg.omega0, cfg.tau, cfg.dt);
    if (cfg.method == "eigen") {
        out.primary = propagate_eigen(point_eigensystem(cfg, env), cfg.tau, cfg.dt);
    } else if (cfg.method == "both") {
        out.secondary = propagate_eigen(point_eigensystem(cfg, env), cfg.tau, cfg.dt);
        out.has_secondary = true;
        double worst = 0.0;
        for (std::size_t i = 0; i < out.primary.size(); ++i)
            worst = std::max(worst, std::abs(out.primary.amplitudes[i] -
                                             out.secondary.amplitudes[i]));
        out.deviation = worst;
    }
    return out;
}

} // namespace detail

inline PointResult compute_point(const RunConfig& cfg) {
    PointResult res;
    try {
        const EnvironmentModel env = cfg.make_environment();
        res.bound_states = detail::point_bound_states(cfg, env);
        auto trajs = detail::point_trajectories(cfg, env);
        res.solver_deviation = trajs.deviation;
        const QslReport rep = qsl_report(trajs.primary);
        res.final_population = rep.final_population;
        res.qsl_ratio = rep.qsl_time / rep.tau;
        res.non_markovianity = rep.non_markovianity;
        res.n_converged = rep.n_converged;
        res.dn_dtau = rep.dn_dtau;
    } catch (const undefined_qsl_error& e) {
        res.status = "undefined-QSL";
        res.message = e.what();
    } catch (const numerical_error& e) {
        res.status = "solver-error";
        res.message = e.what();
    }
    return res;
}

// --------------------------------- Commands ---------------------------------

namespace detail {

inline std::vector<double> axis_values(const SweepAxis& ax) {
    std::vector<double> v(ax.points);
    if (ax.points == 1) {
        v[0] = ax.min;
        return v;
    }
    const double step = (ax.max - ax.min) / (ax.points - 1);
    for (int i = 0; i < ax.points; ++i) v[i] = ax.min + step * i;
    return v;
}

inline void append_point_columns(std::vector<std::string>& row,
                                 const PointResult& r) {
    row.push_back(r.status);
    row.push_back(io::sci(r.qsl_ratio));
    row.push_back(io::sci(r.non_markovianity));
    row.push_back(r.n_converged ? "1" : "0");
    row.push_back(io::sci(r.dn_dtau));
    row.push_back(std::to_string(r.bound_states.size()));
    for (std::size_t b = 0; b < 2; ++b) {
        if (b < r.bound_states.size()) {
            row.push_back(io::sci(r.bound_states[b].energy));
            row.push_back(io::sci(r.bound_states[b].weight));
        } else {
            row.emplace_back();
            row.emplace_back();
        }
    }
    row.push_back(io::sci(r.final_population));
    row.push_back(r.solver_deviation >= 0.0 ? io::sci(r.solver_deviation)
                                            : std::string());
}

inline const std::vector<std::string>& point_column_names() {
    static const std::vector<std::string> names = {
        "status",      "qsl_ratio",   "non_markovianity", "n_converged",
        "dn_dtau",     "bound_count", "bs_energy_1",      "bs_weight_1",
        "bs_energy_2", "bs_weight_2", "final_population", "solver_deviation"};
    return names;
}

inline void write_table(const RunConfig& cfg, const std::string& stem,
                        const io::Table& table) {
    const std::filesystem::path dir(cfg.out_dir);
    if (cfg.format == "csv")
        io::write_table_csv(dir / (stem + ".csv"), table);
    else
        io::write_table_jsonl(dir / (stem + ".jsonl"), table);
}

} // namespace detail

// Single-point run: trajectory table(s) plus a key-per-line summary report.
inline io::Report cmd_solve(const RunConfig& cfg) {
    cfg.validate();
    if (!cfg.axes.empty())
        throw config_error("solve takes no sweep axes; use sweep/phase-diagram");

    const EnvironmentModel env = cfg.make_environment();
    const auto bound = detail::point_bound_states(cfg, env);
    auto trajs = detail::point_trajectories(cfg, env);
    const QslReport rep = qsl_report(trajs.primary);
    const SteadyStatePrediction steady = steady_state_prediction(bound);

    io::Report report;
    report.emplace_back("model", cfg.model);
    report.emplace_back("omega0", io::exact(cfg.omega0));
    report.emplace_back("omega_c", io::exact(cfg.omega_c));
    if (cfg.model == "ohmic") {
        report.emplace_back("eta", io::exact(cfg.eta));
        report.emplace_back("s", io::exact(cfg.s));
        report.emplace_back("eta_critical",
                            io::sci(critical_coupling(cfg.s, cfg.omega0, cfg.omega_c)));
    } else if (cfg.model == "array") {
        report.emplace_back("g", io::exact(cfg.g));
        report.emplace_back("xi", io::exact(cfg.xi));
        report.emplace_back("n_modes", std::to_string(cfg.n_modes));
    } else {
        report.emplace_back("discrete_file", cfg.discrete_file);
    }
    report.emplace_back("tau", io::exact(cfg.tau));
    report.emplace_back("dt", io::exact(cfg.dt));
    report.emplace_back("method", cfg.method);

    report.emplace_back("bound_state_count", std::to_string(bound.size()));
    for (std::size_t b = 0; b < bound.size(); ++b) {
        const std::string sfx = "_" + std::to_string(b + 1);
        report.emplace_back("bs_energy" + sfx, io::sci(bound[b].energy));
        report.emplace_back("bs_weight" + sfx, io::sci(bound[b].weight));
    }
    switch (steady.kind) {
    case SteadyStateKind::DecayToZero:
        report.emplace_back("steady_state", "decay-to-zero");
        report.emplace_back("steady_plateau", io::sci(0.0));
        break;
    case SteadyStateKind::ConstantPlateau:
        report.emplace_back("steady_state", "constant-plateau");
        report.emplace_back("steady_plateau", io::sci(steady.plateau));
        break;
    case SteadyStateKind::TwoStateOscillation:
        report.emplace_back("steady_state", "two-state-oscillation");
        report.emplace_back("osc_mean", io::sci(steady.osc_mean));
        report.emplace_back("osc_amplitude", io::sci(steady.osc_amplitude));
        report.emplace_back("osc_frequency", io::sci(steady.osc_frequency));
        break;
    }

    report.emplace_back("final_population", io::sci(rep.final_population));
    report.emplace_back("action_integral", io::sci(rep.action_integral));
    report.emplace_back("qsl_time", io::sci(rep.qsl_time));
    report.emplace_back("qsl_ratio", io::sci(rep.qsl_time / rep.tau));
    report.emplace_back("non_markovianity", io::sci(rep.non_markovianity));
    report.emplace_back("n_converged", rep.n_converged ? "1" : "0");
    report.emplace_back("dn_dtau", io::sci(rep.dn_dtau));
    report.emplace_back("identity_residual", io::sci(rep.identity_residual));
    if (trajs.has_secondary)
        report.emplace_back("solver_deviation", io::sci(trajs.deviation));

    const std::filesystem::path dir(cfg.out_dir);
    const bool csv = (cfg.format == "csv");
    auto traj_path = [&](const std::string& stem) {
        return dir / (stem + (csv ? ".csv" : ".jsonl"));
    };
    if (trajs.has_secondary) {
        if (csv) {
            io::write_trajectory_csv(traj_path("trajectory_volterra"), trajs.primary);
            io::write_trajectory_csv(traj_path("trajectory_eigen"), trajs.secondary);
        } else {
            io::write_trajectory_jsonl(traj_path("trajectory_volterra"), trajs.primary);
            io::write_trajectory_jsonl(traj_path("trajectory_eigen"), trajs.secondary);
        }
    } else {
        if (csv) io::write_trajectory_csv(traj_path("trajectory"), trajs.primary);
        else io::write_trajectory_jsonl(traj_path("trajectory"), trajs.primary);
    }
    if (csv) io::write_report_txt(dir / "report.txt", report);
    else io::write_report_jsonl(dir / "report.jsonl", report);
    return report;
}

// One-axis sweep; points run independently over the worker pool and the
// output ordering follows the axis values.
inline io::Table cmd_sweep(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.axes.size() != 1)
        throw config_error("sweep requires exactly one sweep axis");

    const auto values = detail::axis_values(cfg.axes[0]);
    std::vector<PointResult> results(values.size());
    parallel_for(values.size(), resolve_jobs(cfg.jobs), [&](std::size_t i) {
        RunConfig point = cfg;
        point.axes.clear();
        point.set_param(cfg.axes[0].name, values[i]);
        results[i] = compute_point(point);
    });

    io::Table table;
    table.header.push_back(cfg.axes[0].name);
    for (const auto& c : detail::point_column_names()) table.header.push_back(c);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::vector<std::string> row{io::sci(values[i])};
        detail::append_point_columns(row, results[i]);
        table.rows.push_back(std::move(row));
    }
    detail::write_table(cfg, "sweep", table);
    return table;
}

// Two-axis grid; rows ordered axis1-major. Each row also carries the
// analytic bound-state boundary omega0 = eta omega_c Gamma(s) for its
// parameters.
inline io::Table cmd_phase_diagram(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.axes.size() != 2)
        throw config_error("phase-diagram requires exactly two sweep axes");

    const auto v1 = detail::axis_values(cfg.axes[0]);
    const auto v2 = detail::axis_values(cfg.axes[1]);
    const std::size_t n = v1.size() * v2.size();
    std::vector<PointResult> results(n);
    std::vector<RunConfig> points(n);
    for (std::size_t i = 0; i < v1.size(); ++i)
        for (std::size_t j = 0; j < v2.size(); ++j) {
            RunConfig point = cfg;
            point.axes.clear();
            point.set_param(cfg.axes[0].name, v1[i]);
            point.set_param(cfg.axes[1].name, v2[j]);
            points[i * v2.size() + j] = point;
        }
    parallel_for(n, resolve_jobs(cfg.jobs),
                 [&](std::size_t k) { results[k] = compute_point(points[k]); });

    io::Table table;
    table.header.push_back(cfg.axes[0].name);
    table.header.push_back(cfg.axes[1].name);
    for (const auto& c : detail::point_column_names()) table.header.push_back(c);
    table.header.push_back("omega0_critical");
    for (std::size_t i = 0; i < v1.size(); ++i)
        for (std::size_t j = 0; j < v2.size(); ++j) {
            const std::size_t k = i * v2.size() + j;
            std::vector<std::string> row{io::sci(v1[i]), io::sci(v2[j])};
            detail::append_point_columns(row, results[k]);
            if (points[k].model == "ohmic")
                row.push_back(io::sci(points[k].eta * points[k].omega_c *
                                      std::tgamma(points[k].s)));
            else
                row.emplace_back();
            table.rows.push_back(std::move(row));
        }
    detail::write_table(cfg, "phase_diagram", table);
    return table;
}

// Energy-spectrum tables: bound-state branches versus the swept coupling for
// continuum models, the full eigenvalue list with isolation flags for
// discrete ones.
inline io::Table cmd_spectrum(const RunConfig& cfg) {
    cfg.validate();
    io::Table table;
    if (cfg.model == "ohmic") {
        if (cfg.axes.size() > 1)
            throw config_error("spectrum takes at most one sweep axis");
        std::vector<double> values =
            cfg.axes.empty() ? std::vector<double>{cfg.param("eta")}
                             : detail::axis_values(cfg.axes[0]);
        const std::string axis_name = cfg.axes.empty() ? "eta" : cfg.axes[0].name;
        table.header = {axis_name,     "bound_count", "bs_energy_1",
                        "bs_weight_1", "bs_energy_2", "bs_weight_2",
                        "support_min", "support_max"};
        std::vector<std::vector<BoundState>> found(values.size());
        parallel_for(values.size(), resolve_jobs(cfg.jobs), [&](std::size_t i) {
            RunConfig point = cfg;
            point.axes.clear();
            point.set_param(axis_name, values[i]);
            found[i] = find_bound_states(point.make_environment(), point.omega0,
                                         point.weight_threshold);
        });
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::vector<std::string> row{io::sci(values[i]),
                                         std::to_string(found[i].size())};
            for (std::size_t b = 0; b < 2; ++b) {
                if (b < found[i].size()) {
                    row.push_back(io::sci(found[i][b].energy));
                    row.push_back(io::sci(found[i][b].weight));
                } else {
                    row.emplace_back();
                    row.emplace_back();
                }
            }
            row.push_back(io::sci(0.0));
            row.push_back("inf");
            table.rows.push_back(std::move(row));
        }
    } else {
        if (!cfg.axes.empty())
            throw config_error(
                "spectrum sweeps apply to continuum models; discrete models "
                "list the full eigensystem at the configured point");
        const EnvironmentModel env = cfg.make_environment();
        const DiscreteBath bath =
            (cfg.model == "array")
                ? to_discrete_bath(std::get<ResonatorArray>(env))
                : std::get<DiscreteBath>(env);
        const EigenSystem eig =
            (cfg.model == "array")
                ? array_eigensystem(std::get<ResonatorArray>(env), cfg.omega0)
                : arrowhead_eigensystem(bath, cfg.omega0);
        const auto iso = isolated_indices(eig, bath, cfg.weight_threshold);
        std::vector<char> flags(eig.size(), 0);
        for (auto i : iso) flags[i] = 1;
        table.header = {"index", "energy", "weight", "isolated"};
        for (std::size_t i = 0; i < eig.size(); ++i)
            table.rows.push_back({std::to_string(i), io::sci(eig.energies[i]),
                                  io::sci(eig.system_weights[i]),
                                  flags[i] ? "1" : "0"});
    }
    detail::write_table(cfg, "spectrum", table);
    return table;
}

} // namespace qslb
