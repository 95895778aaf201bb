// selftest.hpp — End-to-end verification checks runnable from the CLI and CI

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qslb/dynamics.hpp"
#include "qslb/metrics.hpp"
#include "qslb/run.hpp"
#include "qslb/spectral.hpp"
#include "qslb/spectrum.hpp"

namespace qslb::selftest {

enum class Level { quick, full };

struct CheckResult {
    std::string name;
    bool pass{false};
    std::string detail;
};

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

struct Suite {
    Level level;
    int jobs;
    std::vector<double> identity_residual_ratios;  // |resid|/tau per trajectory
    Trajectory eta02_long;                         // shared by plateau check

    void track(const QslReport& rep) {
        identity_residual_ratios.push_back(rep.identity_residual /
                                           std::max(rep.tau, 1e-300));
    }
};

// 1 — eta_c(s=1, w0=0.1) equals 0.1 exactly and the bound state appears
// only above it.
inline CheckResult critical_coupling_threshold(Suite&) {
    CheckResult r{"critical-coupling-threshold", false, ""};
    const double etac = critical_coupling(1.0, 0.1, 1.0);
    const bool exact = std::abs(etac - 0.1) < 1e-10;
    const auto below =
        find_bound_states(EnvironmentModel(OhmicFamily(0.099, 1.0, 1.0)), 0.1);
    const auto above =
        find_bound_states(EnvironmentModel(OhmicFamily(0.101, 1.0, 1.0)), 0.1);
    r.pass = exact && below.empty() && above.size() == 1;
    r.detail = fmt("eta_c=%.12f, states(0.099)=%.0f, states(0.101)=%.0f", etac,
                   static_cast<double>(below.size()),
                   static_cast<double>(above.size()));
    return r;
}

// 2 — coupling sweep across the threshold: no speedup and no memory below
// eta_c, pronounced speedup and finite N above it.
inline CheckResult coupling_sweep_regimes(Suite& suite) {
    CheckResult r{"coupling-sweep-regimes", true, ""};
    const std::vector<double> etas{0.02, 0.04, 0.06, 0.08, 0.12, 0.16, 0.2};
    std::vector<Trajectory> trajs(etas.size());
    parallel_for(etas.size(), suite.jobs, [&](std::size_t i) {
        trajs[i] =
            solve_volterra(OhmicFamily(etas[i], 1.0, 1.0), 0.1, 800.0, 0.02);
    });
    std::ostringstream d;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const QslReport rep = qsl_report(trajs[i]);
        suite.track(rep);
        const double ratio = rep.qsl_time / rep.tau;
        const bool ok = (etas[i] <= 0.08)
                            ? (ratio >= 0.98 && rep.non_markovianity <= 1e-3)
                            : (ratio <= 0.9 && rep.non_markovianity >= 1e-2);
        if (!ok) r.pass = false;
        d << (i ? " " : "") << "eta=" << etas[i] << ":" << (ok ? "ok" : "BAD");
        if (etas[i] == 0.2) suite.eta02_long = std::move(trajs[i]);
    }
    r.detail = d.str();
    return r;
}

// 3 — late-time population plateau equals the bound-state weight squared.
inline CheckResult steady_plateau(Suite& suite) {
    CheckResult r{"steady-plateau", false, ""};
    const OhmicFamily env(0.2, 1.0, 1.0);
    if (suite.eta02_long.size() == 0)
        suite.eta02_long = solve_volterra(env, 0.1, 800.0, 0.02);
    const Trajectory& traj = suite.eta02_long;
    double mean = 0.0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < traj.size(); ++i)
        if (traj.times[i] >= 700.0) {
            mean += traj.populations[i];
            ++cnt;
        }
    mean /= static_cast<double>(cnt);
    const auto bs = find_bound_states(EnvironmentModel(env), 0.1);
    const double predicted =
        bs.empty() ? 0.0 : bs[0].weight * bs[0].weight;
    r.pass = bs.size() == 1 && std::abs(mean - predicted) < 0.02;
    r.detail = fmt("mean(700..800)=%.6f, d0^4=%.6f, diff=%.2e", mean, predicted,
                   mean - predicted);
    return r;
}

// 4 — Volterra and eigen-expansion solvers agree on the same continuum bath.
inline CheckResult solver_cross_check(Suite& suite) {
    CheckResult r{"solver-cross-check", true, ""};
    const bool quick = (suite.level == Level::quick);
    const std::vector<double> etas =
        quick ? std::vector<double>{0.2} : std::vector<double>{0.05, 0.2};
    const double tau = quick ? 50.0 : 100.0;
    const int n_modes = quick ? 1500 : 4000;
    std::ostringstream d;
    std::vector<double> worst(etas.size());
    parallel_for(etas.size(), suite.jobs, [&](std::size_t i) {
        const OhmicFamily env(etas[i], 1.0, 1.0);
        const auto tv = solve_volterra(env, 0.1, tau, 0.02);
        const auto eig =
            arrowhead_eigensystem(discretize(env, n_modes, 20.0), 0.1);
        const auto te = propagate_eigen(eig, tv.times);
        double w = 0.0;
        for (std::size_t k = 0; k < tv.size(); ++k)
            w = std::max(w, std::abs(tv.amplitudes[k] - te.amplitudes[k]));
        worst[i] = w;
    });
    for (std::size_t i = 0; i < etas.size(); ++i) {
        if (!(worst[i] < 1e-3)) r.pass = false;
        d << (i ? ", " : "") << "eta=" << etas[i]
          << fmt(": max|dc|=%.2e", worst[i]);
    }
    r.detail = d.str();
    return r;
}

// 5 — the algebraic identity linking the QSL time, N and the final
// population holds to 1e-10 tau on every trajectory the suite produced.
inline CheckResult qsl_identity(Suite& suite) {
    CheckResult r{"qsl-identity", false, ""};
    double worst = 0.0;
    for (double v : suite.identity_residual_ratios) worst = std::max(worst, v);
    r.pass = !suite.identity_residual_ratios.empty() && worst < 1e-10;
    r.detail = fmt("trajectories=%g, worst residual/tau=%.2e",
                   static_cast<double>(suite.identity_residual_ratios.size()),
                   worst);
    return r;
}

// 6 — weak-coupling comparison against the flat-decay form exp(-pi J(w0) t)
// down to |c| = 1/e.
inline CheckResult weak_coupling_limit(Suite& suite) {
    CheckResult r{"weak-coupling-limit", false, ""};
    const double pi = 3.14159265358979323846;
    const OhmicFamily env(0.01, 1.0, 1.0);
    const double omega0 = 0.1;
    const double piJ = pi * env.density(omega0);
    const double horizon = 1.0 / piJ;  // where exp(-pi J t) = 1/e
    const double tau = std::ceil(horizon / 0.02) * 0.02;
    const auto traj = solve_volterra(env, omega0, tau, 0.02);
    suite.track(qsl_report(traj));
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double ref = std::exp(-piJ * traj.times[i]);
        if (ref < std::exp(-1.0)) break;
        worst = std::max(worst,
                         std::abs(std::abs(traj.amplitudes[i]) - ref) / ref);
    }
    r.pass = worst <= 0.05;
    // The exact amplitude decays at the level-shifted rate pi J(w0 - dw); at
    // w0 = 0.1 w_c that sits ~10% below pi J(w0), so the discrepancy against
    // the flat-decay reference is physical, not numerical.
    const double dw = principal_value_shift(env, omega0);
    const double predicted =
        std::exp((piJ - pi * env.density(omega0 - dw)) * horizon) - 1.0;
    r.detail = fmt("worst rel dev=%.4f (limit 0.05; level-shift prediction %.4f)",
                   worst, predicted);
    return r;
}

// 7 — exactly solvable single resonant mode: |c|^2 = cos^2(gt).
inline CheckResult rabi_oracle(Suite& suite) {
    CheckResult r{"rabi-oracle", false, ""};
    const double gq = 0.1, omega0 = 1.0;
    const DiscreteBath mode({omega0}, {gq});
    const double dt = 0.01, tau = 20.0;  // dt*g = 1e-3
    const auto tv = solve_volterra(mode, omega0, tau, dt);
    suite.track(qsl_report(tv));
    const auto eig = arrowhead_eigensystem(mode, omega0);
    const auto te = propagate_eigen(eig, tv.times);
    double worst_v = 0.0, worst_e = 0.0;
    for (std::size_t i = 0; i < tv.size(); ++i) {
        const double c2 = std::cos(gq * tv.times[i]) * std::cos(gq * tv.times[i]);
        worst_v = std::max(worst_v, std::abs(tv.populations[i] - c2));
        worst_e = std::max(worst_e, std::abs(te.populations[i] - c2));
    }
    r.pass = worst_v < 1e-6 && worst_e < 1e-12;
    r.detail = fmt("volterra err=%.2e (limit 1e-6), eigen err=%.2e", worst_v,
                   worst_e);
    return r;
}

// 8 — resonator-array regimes: isolated-eigenvalue count steps 0 -> 1 -> 2
// with the coupling; with two isolated states the late-time population beats
// at their energy splitting and N keeps growing with tau.
inline CheckResult array_regimes(Suite& suite) {
    CheckResult r{"array-regimes", true, ""};
    std::ostringstream d;
    const std::vector<double> gs{0.005, 0.04, 0.1};
    const std::vector<std::size_t> expected{0, 1, 2};
    for (std::size_t k = 0; k < gs.size(); ++k) {
        const ResonatorArray arr(gs[k], 0.05, 1.0, 800);
        const auto eig = array_eigensystem(arr, 1.08);
        const auto bright = to_discrete_bath(arr);
        const auto iso = isolated_indices(eig, bright);
        bool ok = (iso.size() == expected[k]) && (eig.size() == 801);
        const auto traj = propagate_eigen(eig, 800.0, 0.02);
        const QslReport rep = qsl_report(traj);
        suite.track(rep);
        if (gs[k] == 0.005 && !(rep.qsl_time / rep.tau >= 0.95)) ok = false;
        if (iso.size() == 2) {
            const auto peak = oscillation_frequency_check(traj, 600.0, 800.0);
            const double de = eig.energies[iso[1]] - eig.energies[iso[0]];
            if (!peak.found ||
                std::abs(peak.angular_frequency - de) > peak.bin_width)
                ok = false;
            if (rep.n_converged || !(rep.dn_dtau > 0.0)) ok = false;
            d << fmt(" [peak=%.4f vs dE=%.4f, dN/dtau=%.3e]",
                     peak.angular_frequency, de, rep.dn_dtau);
        }
        if (!ok) r.pass = false;
        d << " g=" << gs[k] << ":" << iso.size() << (ok ? "" : "(BAD)");
    }
    r.detail = "isolated counts" + d.str();
    return r;
}

// 9 — numerical hygiene: second-order convergence of the integrator,
// interlacing/completeness on random baths, weight integral as the
// E-derivative of the self-energy.
inline CheckResult numerical_hygiene(Suite& suite) {
    CheckResult r{"numerical-hygiene", true, ""};
    const bool quick = (suite.level == Level::quick);
    std::ostringstream d;

    {
        const OhmicFamily env(0.2, 1.0, 1.0);
        const double tau = quick ? 25.0 : 50.0;
        const auto a = solve_volterra(env, 0.1, tau, 0.02);
        const auto b = solve_volterra(env, 0.1, tau, 0.01);
        const auto c = solve_volterra(env, 0.1, tau, 0.005);
        double e1 = 0.0, e2 = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            e1 = std::max(e1, std::abs(a.amplitudes[i] - b.amplitudes[2 * i]));
        for (std::size_t i = 0; i < b.size(); ++i)
            e2 = std::max(e2, std::abs(b.amplitudes[i] - c.amplitudes[2 * i]));
        const double ratio = e1 / e2;
        if (!(ratio > 3.2 && ratio < 4.8)) r.pass = false;
        d << fmt("dt-halving ratio=%.2f;", ratio);
    }

    {
        std::mt19937 rng(20240917u);
        std::uniform_real_distribution<double> freq(0.5, 2.0);
        std::uniform_real_distribution<double> coup(0.001, 0.1);
        std::uniform_real_distribution<double> w0d(0.3, 2.2);
        std::uniform_int_distribution<int> size_d(2, quick ? 64 : 200);
        const int n_baths = quick ? 6 : 20;
        double worst_comp = 0.0;
        bool interlaced = true;
        for (int b = 0; b < n_baths; ++b) {
            const int m = size_d(rng);
            std::vector<double> fs(m), gs(m);
            for (auto& f : fs) f = freq(rng);
            std::sort(fs.begin(), fs.end());
            for (int i = 1; i < m; ++i)
                if (fs[i] - fs[i - 1] < 1e-9) fs[i] = fs[i - 1] + 1e-9;
            for (auto& gk : gs) gk = coup(rng);
            const DiscreteBath bath(fs, gs);
            const auto eig = arrowhead_eigensystem(bath, w0d(rng));
            double comp = 0.0;
            for (double w : eig.system_weights) comp += w;
            worst_comp = std::max(worst_comp, std::abs(comp - 1.0));
            for (int i = 0; i < m; ++i)
                if (!(eig.energies[i] < fs[i] && fs[i] < eig.energies[i + 1]))
                    interlaced = false;
        }
        if (!(worst_comp < 1e-10) || !interlaced) r.pass = false;
        d << fmt(" completeness err=%.1e, interlacing=", worst_comp)
          << (interlaced ? "ok;" : "BAD;");
    }

    {
        std::mt19937 rng(77001u);
        std::uniform_real_distribution<double> eta_d(0.05, 0.3);
        std::uniform_real_distribution<double> s_d(0.5, 3.0);
        std::uniform_real_distribution<double> e_d(-2.0, -0.05);
        const int samples = quick ? 4 : 10;
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            const OhmicFamily env(eta_d(rng), s_d(rng), 1.0);
            const double E = e_d(rng);
            const double h = 1e-4 * std::abs(E);
            const double deriv = (self_energy(env, E + h) -
                                  self_energy(env, E - h)) /
                                 (2.0 * h);
            const double wint = weight_integral(env, E);
            worst = std::max(worst, std::abs(deriv - wint) / wint);
        }
        if (!(worst < 1e-4)) r.pass = false;
        d << fmt(" dSigma/dE vs weight rel err=%.1e", worst);
    }
    r.detail = d.str();
    return r;
}

} // namespace detail

// The quick level exercises the fast subset (thresholds, exact oracles,
// identity, hygiene at reduced sizes); the full level runs every check at
// production parameters.
inline std::vector<CheckResult> run(Level level, int jobs = 0) {
    detail::Suite suite{level, resolve_jobs(jobs), {}, {}};
    std::vector<CheckResult> out;
    out.push_back(detail::critical_coupling_threshold(suite));
    if (level == Level::full) {
        out.push_back(detail::coupling_sweep_regimes(suite));
        out.push_back(detail::steady_plateau(suite));
    }
    out.push_back(detail::solver_cross_check(suite));
    out.push_back(detail::rabi_oracle(suite));
    if (level == Level::full) {
        out.push_back(detail::weak_coupling_limit(suite));
        out.push_back(detail::array_regimes(suite));
    }
    out.push_back(detail::numerical_hygiene(suite));
    // Identity check runs last so it sees every trajectory produced above.
    out.push_back(detail::qsl_identity(suite));
    return out;
}

inline int print_and_count_failures(const std::vector<CheckResult>& results) {
    int fails = 0;
    for (const auto& r : results) {
        std::printf("[%s] %s — %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++fails;
    }
    return fails;
}

} // namespace qslb::selftest
