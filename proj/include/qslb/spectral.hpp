// spectral.hpp — Environment models: spectral density, correlation kernel, spectral integrals

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qslb/numerics.hpp"

namespace qslb {

// --------------------------- Environment models -----------------------------

// Power-law spectral density with exponential cutoff,
// J(w) = eta * w^s * omega_c^(1-s) * exp(-w/omega_c).
struct OhmicFamily {
    double eta{0.1};      // dimensionless coupling constant, >= 0
    double s{1.0};        // spectral power index (ohmic=1, sub<1, super>1)
    double omega_c{1.0};  // cutoff frequency, the global frequency unit

    OhmicFamily() = default;
    OhmicFamily(double eta_, double s_, double omega_c_)
        : eta(eta_), s(s_), omega_c(omega_c_) {
        if (!(eta >= 0.0))
            throw std::invalid_argument("OhmicFamily: eta must be >= 0");
        if (!(s > 0.0))
            throw std::invalid_argument("OhmicFamily: s must be > 0");
        if (!(omega_c > 0.0))
            throw std::invalid_argument("OhmicFamily: omega_c must be > 0");
    }

    double density(double w) const {
        if (w < 0.0)
            throw std::domain_error("OhmicFamily: density undefined for w < 0");
        if (w == 0.0) return 0.0;
        return eta * std::pow(w, s) * std::pow(omega_c, 1.0 - s) *
               std::exp(-w / omega_c);
    }
};

// Qubit coupled to site 0 of an N-site ring of hopping resonators.
// Momentum modes disperse as eps_k = omega_c + 2 xi cos(k x0) and each
// couples with strength g/sqrt(N).
struct ResonatorArray {
    double g{0.1};        // qubit-resonator coupling
    double xi{0.05};      // inter-resonator hopping
    double omega_c{1.0};  // bare resonator frequency
    int n_modes{800};     // number of array modes, positive even

    ResonatorArray() = default;
    ResonatorArray(double g_, double xi_, double omega_c_, int n_modes_)
        : g(g_), xi(xi_), omega_c(omega_c_), n_modes(n_modes_) {
        if (!(g >= 0.0))
            throw std::invalid_argument("ResonatorArray: g must be >= 0");
        if (!(xi > 0.0))
            throw std::invalid_argument("ResonatorArray: xi must be > 0");
        if (!(omega_c > 0.0))
            throw std::invalid_argument("ResonatorArray: omega_c must be > 0");
        if (n_modes < 2 || n_modes % 2 != 0)
            throw std::invalid_argument(
                "ResonatorArray: n_modes must be a positive even integer");
    }

    double band_min() const { return omega_c - 2.0 * xi; }
    double band_max() const { return omega_c + 2.0 * xi; }

    // Continuum-limit density of the band: g^2 / (pi sqrt(4 xi^2 - (w-wc)^2))
    // inside the band, zero outside.
    double density(double w) const {
        const double d = w - omega_c;
        const double rad = 4.0 * xi * xi - d * d;
        if (rad <= 0.0) return (rad == 0.0 && g > 0.0)
                                   ? std::numeric_limits<double>::infinity()
                                   : 0.0;
        const double pi = 3.14159265358979323846;
        return g * g / (pi * std::sqrt(rad));
    }
};

// Explicit list of environment modes; frequencies strictly ascending.
struct DiscreteBath {
    std::vector<double> mode_freqs;
    std::vector<double> couplings;

    DiscreteBath(std::vector<double> freqs, std::vector<double> gs)
        : mode_freqs(std::move(freqs)), couplings(std::move(gs)) {
        if (mode_freqs.empty() || mode_freqs.size() != couplings.size())
            throw std::invalid_argument(
                "DiscreteBath: freqs/couplings must be equal-length and non-empty");
        for (std::size_t k = 0; k + 1 < mode_freqs.size(); ++k)
            if (!(mode_freqs[k] < mode_freqs[k + 1]))
                throw std::invalid_argument(
                    "DiscreteBath: mode_freqs must be strictly ascending");
        for (double gk : couplings)
            if (!(gk >= 0.0))
                throw std::invalid_argument("DiscreteBath: couplings must be >= 0");
    }

    std::size_t size() const { return mode_freqs.size(); }
};

using EnvironmentModel = std::variant<OhmicFamily, ResonatorArray, DiscreteBath>;

// ------------------------- Array mode bookkeeping ---------------------------

// The ring has pairwise-degenerate +/-k modes. Only the symmetric (cosine)
// combination of each pair couples to the qubit, with the couplings added in
// quadrature; the antisymmetric partner decouples entirely. `bright` is the
// strictly-ascending coupled bath, `dark_freqs` the decoupled leftovers.
struct ArrayModes {
    DiscreteBath bright;
    std::vector<double> dark_freqs;
};

inline ArrayModes array_modes(const ResonatorArray& arr) {
    const int n = arr.n_modes;
    const double per_mode = arr.g / std::sqrt(static_cast<double>(n));
    const double pi = 3.14159265358979323846;

    std::vector<double> freqs, gs, dark;
    freqs.reserve(n / 2 + 1);
    gs.reserve(n / 2 + 1);
    // m = 0 and m = n/2 are self-paired; every other eps appears twice.
    for (int m = n / 2; m >= 0; --m) {
        const double eps =
            arr.omega_c + 2.0 * arr.xi * std::cos(2.0 * pi * m / n);
        const int mult = (m == 0 || m == n / 2) ? 1 : 2;
        freqs.push_back(eps);
        gs.push_back(per_mode * std::sqrt(static_cast<double>(mult)));
        if (mult == 2) dark.push_back(eps);
    }
    return {DiscreteBath(std::move(freqs), std::move(gs)), std::move(dark)};
}

inline DiscreteBath to_discrete_bath(const ResonatorArray& arr) {
    return array_modes(arr).bright;
}

// --------------------------- Spectral operations ----------------------------

// J(omega); zero outside the support. Not defined for explicit discrete baths.
inline double density_at(const EnvironmentModel& env, double omega) {
    return std::visit(
        [omega](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DiscreteBath>)
                throw std::invalid_argument(
                    "density_at: discrete bath has no pointwise spectral density");
            else
                return m.density(omega);
        },
        env);
}

namespace detail {

inline std::complex<double> correlation_sum(const DiscreteBath& bath, double x) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = 0; k < bath.size(); ++k) {
        const double g2 = bath.couplings[k] * bath.couplings[k];
        const double ph = bath.mode_freqs[k] * x;
        acc += g2 * std::complex<double>(std::cos(ph), -std::sin(ph));
    }
    return acc;
}

} // namespace detail

// Correlation kernel f(x) = ∫ J(w) e^{-iwx} dw. Closed form for the Ohmic
// family, mode sum for discrete baths (the array reduces to its bright modes).
inline std::complex<double> correlation(const EnvironmentModel& env, double x) {
    if (x < 0.0)
        throw std::domain_error("correlation: x must be >= 0");
    return std::visit(
        [x](const auto& m) -> std::complex<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, OhmicFamily>) {
                if (m.eta == 0.0) return {0.0, 0.0};
                const std::complex<double> z(1.0 / m.omega_c, x);
                return m.eta * std::pow(m.omega_c, 1.0 - m.s) *
                       std::tgamma(m.s + 1.0) *
                       std::pow(z, -(m.s + 1.0));
            } else if constexpr (std::is_same_v<T, ResonatorArray>) {
                return detail::correlation_sum(to_discrete_bath(m), x);
            } else {
                return detail::correlation_sum(m, x);
            }
        },
        env);
}

// ∫ J(w)/(w - E) dw for E strictly outside the support (positive below it).
inline double self_energy(const EnvironmentModel& env, double E) {
    return std::visit(
        [E](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, OhmicFamily>) {
                if (!(E < 0.0))
                    throw std::domain_error(
                        "self_energy: Ohmic support is [0,inf); need E < 0");
                if (m.eta == 0.0) return 0.0;
                return quad::integrate_semi_infinite(
                    [&m, E](double w) { return m.density(w) / (w - E); }, 0.0,
                    m.omega_c);
            } else if constexpr (std::is_same_v<T, ResonatorArray>) {
                const double b = E - m.omega_c;
                const double rad = b * b - 4.0 * m.xi * m.xi;
                if (!(rad > 0.0))
                    throw std::domain_error(
                        "self_energy: E inside or on the band boundary");
                const double mag = m.g * m.g / std::sqrt(rad);
                return (E < m.omega_c) ? mag : -mag;
            } else {
                for (double wk : m.mode_freqs)
                    if (wk == E)
                        throw std::domain_error(
                            "self_energy: E coincides with a bath mode");
                double acc = 0.0;
                for (std::size_t k = 0; k < m.size(); ++k)
                    acc += m.couplings[k] * m.couplings[k] /
                           (m.mode_freqs[k] - E);
                return acc;
            }
        },
        env);
}

// ∫ J(w)/(E - w)^2 dw for E strictly outside the support. Values within
// 1e-9 omega_c of a band edge report the genuine divergence as +inf.
inline double weight_integral(const EnvironmentModel& env, double E) {
    return std::visit(
        [E](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, OhmicFamily>) {
                if (!(E < 0.0))
                    throw std::domain_error(
                        "weight_integral: Ohmic support is [0,inf); need E < 0");
                if (m.eta == 0.0) return 0.0;
                return quad::integrate_semi_infinite(
                    [&m, E](double w) {
                        const double d = E - w;
                        return m.density(w) / (d * d);
                    },
                    0.0, m.omega_c);
            } else if constexpr (std::is_same_v<T, ResonatorArray>) {
                const double b = E - m.omega_c;
                const double rad = b * b - 4.0 * m.xi * m.xi;
                if (!(rad > 0.0))
                    throw std::domain_error(
                        "weight_integral: E inside or on the band boundary");
                const double edge_dist =
                    std::abs(b) - 2.0 * m.xi;  // > 0 outside the band
                if (edge_dist < 1e-9 * m.omega_c)
                    return std::numeric_limits<double>::infinity();
                return m.g * m.g * std::abs(b) / (rad * std::sqrt(rad));
            } else {
                for (double wk : m.mode_freqs)
                    if (wk == E)
                        throw std::domain_error(
                            "weight_integral: E coincides with a bath mode");
                double acc = 0.0;
                for (std::size_t k = 0; k < m.size(); ++k) {
                    const double d = E - m.mode_freqs[k];
                    acc += m.couplings[k] * m.couplings[k] / (d * d);
                }
                return acc;
            }
        },
        env);
}

// Cauchy principal value P∫ J(w)/(w - omega0) dw by symmetric-interval
// subtraction: on [omega0-h, omega0+h] the pole term integrates to zero and
// the remainder [J(w) - J(omega0)]/(w - omega0) is regular.
inline double principal_value_shift(const OhmicFamily& env, double omega0) {
    if (!(omega0 > 0.0))
        throw std::domain_error("principal_value_shift: omega0 must be > 0");
    if (env.eta == 0.0) return 0.0;

    const double h = 0.5 * std::min(omega0, env.omega_c);
    const double j0 = env.density(omega0);
    auto regularized = [&](double w) {
        return (env.density(w) - j0) / (w - omega0);
    };
    // Split at the pole so no panel is centered on it.
    double result = quad::integrate(regularized, omega0 - h, omega0);
    result += quad::integrate(regularized, omega0, omega0 + h);
    auto plain = [&](double w) { return env.density(w) / (w - omega0); };
    if (omega0 - h > 0.0)
        result += quad::integrate(plain, 0.0, omega0 - h);
    result += quad::integrate_semi_infinite(plain, omega0 + h, env.omega_c);
    return result;
}

// Uniform-grid discretization on (0, omega_max]: w_k = k*dw,
// g_k = sqrt(J(w_k) dw). Enables eigen-expansion solvers for continuum baths.
inline DiscreteBath discretize(const OhmicFamily& env, int n_modes,
                               double omega_max) {
    if (n_modes < 2)
        throw std::invalid_argument("discretize: n_modes must be >= 2");
    if (!(omega_max > 0.0))
        throw std::invalid_argument("discretize: omega_max must be > 0");
    const double dw = omega_max / n_modes;
    std::vector<double> freqs(n_modes), gs(n_modes);
    for (int k = 0; k < n_modes; ++k) {
        freqs[k] = dw * (k + 1);
        gs[k] = std::sqrt(env.density(freqs[k]) * dw);
    }
    return DiscreteBath(std::move(freqs), std::move(gs));
}

} // namespace qslb
