// dynamics.hpp — Exact amplitude dynamics c(t) and master-equation rates

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qslb/errors.hpp"
#include "qslb/spectral.hpp"
#include "qslb/spectrum.hpp"

namespace qslb {

// Time-dependent decay rate and frequency shift, Gamma + i Omega = -2 cdot/c.
// Invalid (flagged) where |c| drops below the rate floor and the ratio is
// genuinely singular.
struct RateResult {
    double gamma{0.0};
    double omega_shift{0.0};
    bool valid{false};
};

inline constexpr double rate_floor = 1e-6;

inline RateResult derive_rates(std::complex<double> c,
                               std::complex<double> c_dot) {
    if (std::norm(c) < rate_floor * rate_floor) return {0.0, 0.0, false};
    const std::complex<double> ratio = -2.0 * c_dot / c;
    return {ratio.real(), ratio.imag(), true};
}

// Uniform-grid record of the amplitude, its derivative, and derived
// observables. pop_rates comes from 2 Re(c* cdot), never from differencing
// the populations.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::complex<double>> amplitudes;
    std::vector<std::complex<double>> derivatives;
    std::vector<double> populations;
    std::vector<double> pop_rates;
    std::vector<double> gamma;
    std::vector<double> omega_shift;
    std::vector<std::uint8_t> rate_valid;
    double dt{0.0};

    std::size_t size() const { return times.size(); }
};

namespace detail {

inline void fill_derived(Trajectory& traj) {
    const std::size_t n = traj.amplitudes.size();
    traj.populations.resize(n);
    traj.pop_rates.resize(n);
    traj.gamma.resize(n);
    traj.omega_shift.resize(n);
    traj.rate_valid.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = traj.amplitudes[i];
        const auto d = traj.derivatives[i];
        traj.populations[i] = std::norm(c);
        traj.pop_rates[i] = 2.0 * (c.real() * d.real() + c.imag() * d.imag());
        const RateResult r = derive_rates(c, d);
        traj.gamma[i] = r.gamma;
        traj.omega_shift[i] = r.omega_shift;
        traj.rate_valid[i] = r.valid ? 1 : 0;
    }
}

inline std::vector<double> uniform_grid(double tau, double dt) {
    if (!(tau > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("solve grid: tau and dt must be > 0");
    const double ratio = tau / dt;
    const auto n_steps = static_cast<std::size_t>(std::llround(ratio));
    if (n_steps < 2 || std::abs(ratio - static_cast<double>(n_steps)) > 1e-9)
        throw std::invalid_argument(
            "solve grid: tau/dt must be an integer >= 2");
    std::vector<double> t(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) t[i] = dt * static_cast<double>(i);
    return t;
}

} // namespace detail

// Integrates cdot + i omega0 c + ∫_0^t f(t-u) c(u) du = 0 with c(0) = 1 on a
// uniform grid. Works in the frame c~ = c e^{i omega0 t}, where the kernel
// picks up the counter-phase and the decoupled case stays exactly on 1.
// History convolution by full trapezoid weights (endpoint carried at the
// predictor value); stepping is an explicit predictor with trapezoidal
// corrector, globally second order. The stored derivative is the equation's
// right-hand side at the corrected amplitude.
inline Trajectory solve_volterra(const EnvironmentModel& env, double omega0,
                                 double tau, double dt) {
    Trajectory traj;
    traj.times = detail::uniform_grid(tau, dt);
    traj.dt = dt;
    const std::size_t n = traj.times.size();

    // Kernel table in the rotating frame: K_j = f(j dt) e^{+i omega0 j dt}.
    std::vector<double> kr(n), ki(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = traj.times[j];
        const std::complex<double> f = correlation(env, x);
        const std::complex<double> k =
            f * std::complex<double>(std::cos(omega0 * x), std::sin(omega0 * x));
        if (!std::isfinite(k.real()) || !std::isfinite(k.imag()))
            throw numerical_error("solve_volterra: non-finite kernel value at x=" +
                                  std::to_string(x));
        kr[j] = k.real();
        ki[j] = k.imag();
    }

    std::vector<double> cr(n), ci(n), dr(n), di(n);
    cr[0] = 1.0; ci[0] = 0.0;
    dr[0] = 0.0; di[0] = 0.0;

    const double half_k0_r = 0.5 * dt * kr[0];
    const double half_k0_i = 0.5 * dt * ki[0];
    constexpr double blowup = (1.0 + 1e-3) * (1.0 + 1e-3);

    for (std::size_t i = 1; i < n; ++i) {
        // Trapezoid history sum over u = 0 .. t_{i-1}.
        double sr = 0.5 * (kr[i] * cr[0] - ki[i] * ci[0]);
        double si = 0.5 * (kr[i] * ci[0] + ki[i] * cr[0]);
        for (std::size_t j = 1; j < i; ++j) {
            const double ar = kr[i - j], ai = ki[i - j];
            sr += ar * cr[j] - ai * ci[j];
            si += ar * ci[j] + ai * cr[j];
        }
        sr *= dt; si *= dt;

        const double pr = cr[i - 1] + dt * dr[i - 1];
        const double pi = ci[i - 1] + dt * di[i - 1];
        const double dpr = -(sr + half_k0_r * pr - half_k0_i * pi);
        const double dpi = -(si + half_k0_r * pi + half_k0_i * pr);

        cr[i] = cr[i - 1] + 0.5 * dt * (dr[i - 1] + dpr);
        ci[i] = ci[i - 1] + 0.5 * dt * (di[i - 1] + dpi);
        dr[i] = -(sr + half_k0_r * cr[i] - half_k0_i * ci[i]);
        di[i] = -(si + half_k0_r * ci[i] + half_k0_i * cr[i]);

        if (!(cr[i] * cr[i] + ci[i] * ci[i] <= blowup))
            throw numerical_error(
                "solve_volterra: |c| exceeded 1+1e-3 at t=" +
                std::to_string(traj.times[i]) + "; reduce dt");
    }

    // Back to the lab frame: c = c~ e^{-i omega0 t}, cdot = (c~' - i w0 c~) e^{-i w0 t}.
    traj.amplitudes.resize(n);
    traj.derivatives.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = omega0 * traj.times[i];
        const std::complex<double> rot(std::cos(ph), -std::sin(ph));
        const std::complex<double> ct(cr[i], ci[i]);
        const std::complex<double> dt_(dr[i], di[i]);
        traj.amplitudes[i] = ct * rot;
        traj.derivatives[i] =
            (dt_ - std::complex<double>(0.0, omega0) * ct) * rot;
    }
    detail::fill_derived(traj);
    return traj;
}

// Exact propagation from an eigendecomposition:
// c(t) = sum_a |q_a|^2 e^{-i E_a t}. Weighted phasors advance by per-mode
// rotation factors, so the cost is O(modes) per grid point.
inline Trajectory propagate_eigen(const EigenSystem& eig,
                                  const std::vector<double>& times) {
    if (eig.size() == 0)
        throw std::invalid_argument("propagate_eigen: empty eigensystem");
    if (times.size() < 2)
        throw std::invalid_argument("propagate_eigen: need at least 2 points");
    const double dt = times[1] - times[0];
    if (!(dt > 0.0))
        throw std::invalid_argument("propagate_eigen: times must ascend");

    const std::size_t m = eig.size();
    const std::size_t n = times.size();
    std::vector<double> vr(m), vi(m), rotr(m), roti(m), en(m);
    for (std::size_t k = 0; k < m; ++k) {
        vr[k] = eig.system_weights[k];
        vi[k] = 0.0;
        en[k] = eig.energies[k];
        const double ph = en[k] * dt;
        rotr[k] = std::cos(ph);
        roti[k] = -std::sin(ph);
    }

    Trajectory traj;
    traj.times = times;
    traj.dt = dt;
    traj.amplitudes.resize(n);
    traj.derivatives.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double cre = 0.0, cim = 0.0, dre = 0.0, dim = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            cre += vr[k];
            cim += vi[k];
            dre += en[k] * vi[k];
            dim -= en[k] * vr[k];
        }
        traj.amplitudes[i] = {cre, cim};
        traj.derivatives[i] = {dre, dim};
        for (std::size_t k = 0; k < m; ++k) {
            const double nr = vr[k] * rotr[k] - vi[k] * roti[k];
            vi[k] = vr[k] * roti[k] + vi[k] * rotr[k];
            vr[k] = nr;
        }
    }
    detail::fill_derived(traj);
    return traj;
}

inline Trajectory propagate_eigen(const EigenSystem& eig, double tau, double dt) {
    return propagate_eigen(eig, detail::uniform_grid(tau, dt));
}

// Weak-coupling comparator c(t) = exp[-i(omega0 - dw) t - pi J(omega0) t]
// with the Lamb shift dw from the principal-value integral. Rates are the
// constants Gamma = 2 pi J(omega0), Omega = 2 (omega0 - dw).
inline Trajectory markovian_approximation(const OhmicFamily& env, double omega0,
                                          const std::vector<double>& times) {
    if (times.size() < 2)
        throw std::invalid_argument("markovian_approximation: need >= 2 points");
    const double pi = 3.14159265358979323846;
    const double dw = principal_value_shift(env, omega0);
    const double decay = pi * (omega0 > 0.0 ? env.density(omega0) : 0.0);
    const std::complex<double> exponent(-decay, -(omega0 - dw));

    Trajectory traj;
    traj.times = times;
    traj.dt = times[1] - times[0];
    const std::size_t n = times.size();
    traj.amplitudes.resize(n);
    traj.derivatives.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> c = std::exp(exponent * times[i]);
        traj.amplitudes[i] = c;
        traj.derivatives[i] = exponent * c;
    }
    detail::fill_derived(traj);
    return traj;
}

inline Trajectory markovian_approximation(const OhmicFamily& env, double omega0,
                                          double tau, double dt) {
    return markovian_approximation(env, omega0, detail::uniform_grid(tau, dt));
}

} // namespace qslb
