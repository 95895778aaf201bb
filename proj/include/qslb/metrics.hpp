// metrics.hpp — QSL time, non-Markovianity, steady-state predictions

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qslb/dynamics.hpp"
#include "qslb/errors.hpp"
#include "qslb/numerics.hpp"
#include "qslb/spectrum.hpp"

namespace qslb {

// Summary of a finished trajectory:
//   action_integral  A = ∫ |d_t |c|^2| dt          (trapezoid over pop_rates)
//   non_markovianity N = 1/2 [|c(tau)|^2 - 1 + A]  (== total population increase)
//   qsl_time         tau (1-|c(tau)|^2) / (1-|c(tau)|^2 + 2N)
// The two N formulations coincide segment by segment, which keeps N exactly
// zero (and qsl_time exactly tau) on trajectories that never gain population.
struct QslReport {
    double tau{0.0};
    double final_population{0.0};
    double action_integral{0.0};
    double qsl_time{0.0};
    double non_markovianity{0.0};
    double identity_residual{0.0};
    bool n_converged{true};   // |N(tau) - N(0.9 tau)| < 1e-3
    double dn_dtau{0.0};      // growth rate over the trailing 10% of the run
};

inline QslReport qsl_report(const Trajectory& traj) {
    const std::size_t n = traj.size();
    if (n < 2)
        throw std::invalid_argument("qsl_report: trajectory needs >= 2 points");
    if (std::abs(traj.amplitudes.front() - std::complex<double>(1.0, 0.0)) > 1e-8)
        throw std::invalid_argument("qsl_report: trajectory must start at c(0)=1");

    double action = 0.0, increases = 0.0;
    const std::size_t i90 = (9 * (n - 1)) / 10;
    double increases_90 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double seg = 0.5 * (traj.pop_rates[i] + traj.pop_rates[i + 1]) *
                           (traj.times[i + 1] - traj.times[i]);
        action += std::abs(seg);
        if (seg > 0.0) {
            increases += seg;
            if (i < i90) increases_90 += seg;
        }
    }

    QslReport rep;
    rep.tau = traj.times.back() - traj.times.front();
    rep.final_population = traj.populations.back();
    rep.action_integral = action;
    rep.non_markovianity = increases;

    const double dist = std::max(0.0, 1.0 - rep.final_population);
    const double denom = dist + 2.0 * rep.non_markovianity;
    if (denom < 1e-15)
        throw undefined_qsl_error(
            "qsl_report: no evolution (|c(tau)|^2 = 1 with zero action); "
            "the QSL time is a 0/0 expression");
    rep.qsl_time = rep.tau * dist / denom;
    rep.identity_residual =
        std::abs(rep.qsl_time - rep.tau * dist / (dist + 2.0 * rep.non_markovianity));

    if (i90 > 0 && i90 + 1 < n) {
        const double dN = increases - increases_90;
        rep.n_converged = dN < 1e-3;
        const double window = traj.times[n - 1] - traj.times[i90];
        rep.dn_dtau = (window > 0.0) ? dN / window : 0.0;
    }
    return rep;
}

// ------------------------- Steady-state predictions --------------------------

enum class SteadyStateKind { DecayToZero, ConstantPlateau, TwoStateOscillation };

// Long-time population forecast from the bound-state content: zero without a
// bound state, d0^4 with one, and a persistent two-frequency beat with two.
struct SteadyStatePrediction {
    SteadyStateKind kind{SteadyStateKind::DecayToZero};
    double plateau{0.0};           // d0^4 (one bound state)
    double osc_mean{0.0};          // d1^4 + d2^4
    double osc_amplitude{0.0};     // 2 d1^2 d2^2
    double osc_frequency{0.0};     // |E_BS1 - E_BS2|

    double osc_min() const { return osc_mean - osc_amplitude; }
    double osc_max() const { return osc_mean + osc_amplitude; }
};

inline SteadyStatePrediction
steady_state_prediction(const std::vector<BoundState>& bound_states) {
    SteadyStatePrediction p;
    switch (bound_states.size()) {
    case 0:
        p.kind = SteadyStateKind::DecayToZero;
        break;
    case 1:
        p.kind = SteadyStateKind::ConstantPlateau;
        p.plateau = bound_states[0].weight * bound_states[0].weight;
        break;
    case 2: {
        p.kind = SteadyStateKind::TwoStateOscillation;
        const double w1 = bound_states[0].weight;
        const double w2 = bound_states[1].weight;
        p.osc_mean = w1 * w1 + w2 * w2;
        p.osc_amplitude = 2.0 * w1 * w2;
        p.osc_frequency =
            std::abs(bound_states[1].energy - bound_states[0].energy);
        break;
    }
    default:
        throw std::invalid_argument(
            "steady_state_prediction: more than two bound states is not a "
            "supported model");
    }
    return p;
}

// Reduced state at a grid point in the {excited, ground} basis:
// diag(|c|^2, 1-|c|^2), clamped to [0,1] so the matrix stays positive
// semidefinite under the small discretization overshoot allowed on |c|^2.
inline std::array<std::array<std::complex<double>, 2>, 2>
density_matrix(const Trajectory& traj, std::size_t index) {
    if (index >= traj.size())
        throw std::invalid_argument("density_matrix: index out of range");
    const double p = std::clamp(traj.populations[index], 0.0, 1.0);
    std::array<std::array<std::complex<double>, 2>, 2> rho{};
    rho[0][0] = p;
    rho[1][1] = 1.0 - p;
    return rho;
}

// ------------------------ Late-time oscillation probe ------------------------

struct OscillationPeak {
    bool found{false};
    double angular_frequency{0.0};
    double amplitude{0.0};
    double bin_width{0.0};
};

// Dominant oscillation frequency of |c(t)|^2 over [t_lo, t_hi]: Hann-tapered,
// mean-subtracted DFT over the trailing power-of-two samples of the window.
// A peak must be a local spectral maximum away from the lowest bins with
// amplitude above `amplitude_floor`; otherwise the signal counts as flat.
inline OscillationPeak oscillation_frequency_check(const Trajectory& traj,
                                                   double t_lo, double t_hi,
                                                   double amplitude_floor = 1e-6) {
    if (traj.size() < 8)
        throw std::invalid_argument("oscillation_frequency_check: trajectory too short");
    if (!(t_lo < t_hi) || t_lo < traj.times.front() - 1e-12 ||
        t_hi > traj.times.back() + 1e-12)
        throw std::invalid_argument(
            "oscillation_frequency_check: window outside trajectory span");

    const double dt = traj.dt;
    auto index_of = [&](double t) {
        return static_cast<std::size_t>(
            std::clamp(std::llround((t - traj.times.front()) / dt),
                       static_cast<long long>(0),
                       static_cast<long long>(traj.size() - 1)));
    };
    const std::size_t ia = index_of(t_lo), ib = index_of(t_hi);
    const std::size_t m = ib - ia + 1;
    if (m < 8)
        throw std::invalid_argument("oscillation_frequency_check: window too short");

    std::size_t p = 1;
    while (p * 2 <= m) p *= 2;
    const std::size_t start = ib + 1 - p;

    double mean = 0.0;
    for (std::size_t i = 0; i < p; ++i) mean += traj.populations[start + i];
    mean /= static_cast<double>(p);

    const double pi = 3.14159265358979323846;
    std::vector<std::complex<double>> buf(p);
    double wsum = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        const double w =
            0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(i) /
                                  static_cast<double>(p - 1)));
        wsum += w;
        buf[i] = w * (traj.populations[start + i] - mean);
    }
    fft::transform(buf);

    OscillationPeak peak;
    peak.bin_width = 2.0 * pi / (static_cast<double>(p) * dt);
    double best = 0.0;
    std::size_t best_k = 0;
    for (std::size_t k = 2; k < p / 2; ++k) {
        const double mag = std::abs(buf[k]);
        if (mag > best && mag >= std::abs(buf[k - 1]) &&
            mag >= std::abs(buf[k + 1])) {
            best = mag;
            best_k = k;
        }
    }
    if (best_k == 0) return peak;
    peak.amplitude = 2.0 * best / wsum;
    if (peak.amplitude < amplitude_floor) return peak;
    peak.found = true;
    peak.angular_frequency = static_cast<double>(best_k) * peak.bin_width;
    return peak;
}

} // namespace qslb
