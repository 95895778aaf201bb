// qslb.cpp — Command-line front end: single solves, sweeps, phase diagrams,
// spectrum tables, and the built-in verification suite.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "qslb/run.hpp"
#include "qslb/selftest.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::string method;
    std::string format;
    int jobs = -1;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "Run-configuration file");
    cmd->add_option("--out", o.out_dir, "Output directory (overrides config)");
    cmd->add_option("--jobs", o.jobs,
                    "Worker count for sweep points (default: QSLB_DEFAULT_JOBS "
                    "or hardware)");
    cmd->add_option("--method", o.method, "volterra | eigen | both")
        ->check(CLI::IsMember({"volterra", "eigen", "both"}));
    cmd->add_option("--format", o.format, "csv | json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
}

// Precedence: flags > config file > built-in defaults.
qslb::RunConfig assemble(const CliOverrides& o) {
    qslb::RunConfig cfg;
    if (!o.config_path.empty())
        cfg = qslb::RunConfig::parse_file(o.config_path);
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (!o.method.empty()) cfg.method = o.method;
    if (!o.format.empty()) cfg.format = o.format;
    if (o.jobs >= 0) cfg.jobs = o.jobs;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative two-level system: exact non-Markovian dynamics, "
                 "bound states, and quantum-speed-limit diagnostics"};
    app.require_subcommand(1);

    CliOverrides solve_o, sweep_o, phase_o, spectrum_o;
    bool selftest_full = false;
    int selftest_jobs = 0;

    auto* cmd_solve = app.add_subcommand(
        "solve", "Single run: trajectory table plus summary report");
    add_common_options(cmd_solve, solve_o);
    auto* cmd_sweep = app.add_subcommand(
        "sweep", "One-axis parameter sweep to a grid file");
    add_common_options(cmd_sweep, sweep_o);
    auto* cmd_phase = app.add_subcommand(
        "phase-diagram", "Two-axis grid with the analytic bound-state boundary");
    add_common_options(cmd_phase, phase_o);
    auto* cmd_spectrum = app.add_subcommand(
        "spectrum", "Bound-state branches or the full discrete eigensystem");
    add_common_options(cmd_spectrum, spectrum_o);
    auto* cmd_selftest = app.add_subcommand(
        "selftest", "Run the fast subset of the verification suite");
    cmd_selftest->add_flag("--full", selftest_full,
                           "Run every check at production parameters");
    cmd_selftest->add_option("--jobs", selftest_jobs, "Worker count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_solve->parsed()) {
            const auto cfg = assemble(solve_o);
            const auto report = qslb::cmd_solve(cfg);
            for (const auto& [k, v] : report)
                std::printf("%s = %s\n", k.c_str(), v.c_str());
        } else if (cmd_sweep->parsed()) {
            const auto cfg = assemble(sweep_o);
            const auto table = qslb::cmd_sweep(cfg);
            std::printf("wrote %zu sweep points to %s\n", table.rows.size(),
                        cfg.out_dir.c_str());
        } else if (cmd_phase->parsed()) {
            const auto cfg = assemble(phase_o);
            const auto table = qslb::cmd_phase_diagram(cfg);
            std::printf("wrote %zu grid points to %s\n", table.rows.size(),
                        cfg.out_dir.c_str());
        } else if (cmd_spectrum->parsed()) {
            const auto cfg = assemble(spectrum_o);
            const auto table = qslb::cmd_spectrum(cfg);
            std::printf("wrote %zu spectrum rows to %s\n", table.rows.size(),
                        cfg.out_dir.c_str());
        } else if (cmd_selftest->parsed()) {
            const auto results = qslb::selftest::run(
                selftest_full ? qslb::selftest::Level::full
                              : qslb::selftest::Level::quick,
                selftest_jobs);
            const int fails = qslb::selftest::print_and_count_failures(results);
            return fails == 0 ? 0 : 2;
        }
        return 0;
    } catch (const qslb::undefined_qsl_error& e) {
        std::fprintf(stderr, "undefined-QSL: %s\n", e.what());
        return 3;
    } catch (const qslb::numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 2;
    } catch (const qslb::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
