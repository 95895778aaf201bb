// spectrum.hpp — Bound states, critical coupling, arrowhead eigensolver for discrete baths

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qslb/numerics.hpp"
#include "qslb/spectral.hpp"

namespace qslb {

// An isolated eigenvalue of the coupled system outside the environmental
// continuum, with its overlap weight d0^2 on the excited-system state.
struct BoundState {
    double energy{0.0};
    double weight{0.0};  // d0^2 in (0, 1]
};

// Single-excitation eigendecomposition: ascending energies with the system
// weights |q_alpha|^2 = |<phi_alpha|+,vac>|^2.
struct EigenSystem {
    std::vector<double> energies;
    std::vector<double> system_weights;

    std::size_t size() const { return energies.size(); }
};

// Threshold coupling for bound-state formation, eta_c = omega0/(omega_c Gamma(s)).
inline double critical_coupling(double s, double omega0, double omega_c) {
    if (!(s > 0.0) || !(omega0 > 0.0) || !(omega_c > 0.0))
        throw std::invalid_argument(
            "critical_coupling: s, omega0, omega_c must be > 0");
    return omega0 / (omega_c * std::tgamma(s));
}

// d0^2 = [1 + ∫ J/(E-w)^2 dw]^-1; zero at a band edge where the integral diverges.
inline double bound_state_weight(const EnvironmentModel& env, double E) {
    const double wi = weight_integral(env, E);
    if (std::isinf(wi)) return 0.0;
    return 1.0 / (1.0 + wi);
}

namespace detail {

// Secular root below the Ohmic continuum: F(E) = omega0 - Sigma(E) - E is
// strictly decreasing on E < 0 with F -> +inf as E -> -inf, so a sign change
// against the near-zero endpoint pins the unique root.
inline std::vector<BoundState> ohmic_bound_states(const OhmicFamily& env,
                                                  double omega0) {
    if (env.eta == 0.0 ||
        env.eta <= critical_coupling(env.s, omega0, env.omega_c))
        return {};

    auto F = [&](double E) {
        return omega0 - self_energy(env, E) - E;
    };
    const double e_hi = -1e-10 * env.omega_c;
    if (!(F(e_hi) < 0.0)) return {};  // root indistinguishable from threshold

    double e_lo = -(omega0 + 10.0 * env.omega_c);
    e_lo -= self_energy(env, e_lo);
    int expansions = 0;
    while (!(F(e_lo) > 0.0)) {
        e_lo *= 2.0;
        if (++expansions > 60)
            throw numerical_error(
                "find_bound_states: no sign change while expanding bracket to " +
                std::to_string(e_lo));
    }
    const double root = roots::brent(F, e_lo, e_hi, 1e-12 * env.omega_c);
    return {BoundState{root, bound_state_weight(env, root)}};
}

// Band-model secular roots, parametrized by the distance delta from the edge
// so that roots exponentially close to it stay resolvable. At distance delta,
// |Sigma| = g^2 / sqrt(delta (4 xi + delta)) on either side.
inline std::vector<BoundState> band_bound_states(const ResonatorArray& env,
                                                 double omega0,
                                                 double weight_threshold) {
    std::vector<BoundState> out;
    if (env.g == 0.0) return out;

    const double g2 = env.g * env.g;
    const double fourxi = 4.0 * env.xi;

    // side = -1: root below band_min; side = +1: root above band_max.
    auto solve_side = [&](int side) -> BoundState {
        const double edge = (side < 0) ? env.band_min() : env.band_max();
        const double c0 = (side < 0) ? (omega0 - edge) : (edge - omega0);
        // G(log delta) is strictly decreasing from +inf to -inf.
        auto G = [&](double y) {
            const double d = std::exp(y);
            return g2 / std::sqrt(d * (fourxi + d)) - c0 - d;
        };
        double y_hi = std::log(std::max({std::abs(c0), env.xi, env.g, 1e-3}));
        int n = 0;
        while (!(G(y_hi) < 0.0)) {
            y_hi += 2.0;
            if (++n > 400)
                throw numerical_error("find_bound_states: band bracket expansion failed");
        }
        double y_lo = y_hi - 2.0;
        n = 0;
        while (!(G(y_lo) > 0.0)) {
            y_lo -= 2.0;
            if (++n > 400)
                throw numerical_error("find_bound_states: band bracket expansion failed");
        }
        const double y = roots::brent(G, y_lo, y_hi, 1e-13);
        const double delta = std::exp(y);
        const double E = edge + side * delta;
        const double wi = g2 * (2.0 * env.xi + delta) /
                          std::pow(delta * (fourxi + delta), 1.5);
        return BoundState{E, 1.0 / (1.0 + wi)};
    };

    for (int side : {-1, +1}) {
        BoundState bs = solve_side(side);
        if (bs.weight > weight_threshold) out.push_back(bs);
    }
    std::sort(out.begin(), out.end(),
              [](const BoundState& a, const BoundState& b) {
                  return a.energy < b.energy;
              });
    return out;
}

} // namespace detail

// Roots of y(E) = E outside the continuum. For the Ohmic family there is at
// most one (below the support, existing iff eta > eta_c). For the array band
// a root formally hugs each edge at any coupling; only roots whose weight
// exceeds `weight_threshold` carry dynamical signature and are reported.
inline std::vector<BoundState> find_bound_states(const EnvironmentModel& env,
                                                 double omega0,
                                                 double weight_threshold = 1e-3) {
    if (!(omega0 > 0.0))
        throw std::invalid_argument("find_bound_states: omega0 must be > 0");
    return std::visit(
        [&](const auto& m) -> std::vector<BoundState> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, OhmicFamily>)
                return detail::ohmic_bound_states(m, omega0);
            else if constexpr (std::is_same_v<T, ResonatorArray>)
                return detail::band_bound_states(m, omega0, weight_threshold);
            else
                throw std::invalid_argument(
                    "find_bound_states: use arrowhead_eigensystem for explicit "
                    "discrete baths");
        },
        env);
}

namespace detail {

// Secular function with the pole at `anchor` held exactly: for E = w_a + mu
// the anchored term is g_a^2/mu with no cancellation, which keeps eigenvalues
// pinned against poles accurate to full relative precision.
struct AnchoredSecular {
    const std::vector<double>& freqs;
    const std::vector<double>& gs;
    double omega0;
    double anchor_freq;
    std::vector<double> diffs;  // w_a - w_k

    AnchoredSecular(const std::vector<double>& f, const std::vector<double>& g,
                    double w0, std::size_t a)
        : freqs(f), gs(g), omega0(w0), anchor_freq(f[a]), diffs(f.size()) {
        for (std::size_t k = 0; k < f.size(); ++k) diffs[k] = f[a] - f[k];
    }

    double operator()(double mu) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < freqs.size(); ++k)
            sum += gs[k] * gs[k] / (diffs[k] + mu);
        return anchor_freq + mu - omega0 - sum;
    }

    double weight(double mu) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < freqs.size(); ++k) {
            const double d = diffs[k] + mu;
            sum += gs[k] * gs[k] / (d * d);
        }
        return 1.0 / (1.0 + sum);
    }
};

// Root of an increasing function on (0, hi] whose limit at 0+ is -inf
// (or on [lo, 0) with +inf at 0-, via sign of `hi`). Plain bisection
// narrows the bracket, Brent polishes to machine precision.
template <class F>
inline double solve_from_pole(F&& f, double hi) {
    double lo = 0.0;  // virtual endpoint; f(0) is the pole, sign known
    double flo_known_negative = (hi > 0.0);
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    // If f(hi) has the pole's sign the root lies beyond; caller guarantees not.
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        const bool mid_neg = (fm < 0.0);
        if (mid_neg == flo_known_negative) {
            lo = mid;
            if (lo != 0.0 && std::abs(hi - lo) < 1e-6 * std::abs(hi - 0.0))
                return roots::brent(f, lo, hi, 0.0);
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

// Exact eigendecomposition of the single-excitation arrowhead block
// (diagonal omega0, w_1..w_N; border g_1..g_N): one eigenvalue in each
// interlacing interval plus one below and one above the bath frequencies.
// Zero-coupling modes are pruned and re-inserted as trivial eigenpairs.
inline EigenSystem arrowhead_eigensystem(const DiscreteBath& bath,
                                         double omega0) {
    for (std::size_t k = 0; k + 1 < bath.size(); ++k)
        if (bath.mode_freqs[k] == bath.mode_freqs[k + 1])
            throw std::invalid_argument(
                "arrowhead_eigensystem: duplicate mode frequencies; merge "
                "couplings in quadrature first");

    std::vector<double> freqs, gs, dark;
    freqs.reserve(bath.size());
    gs.reserve(bath.size());
    for (std::size_t k = 0; k < bath.size(); ++k) {
        if (bath.couplings[k] > 0.0) {
            freqs.push_back(bath.mode_freqs[k]);
            gs.push_back(bath.couplings[k]);
        } else {
            dark.push_back(bath.mode_freqs[k]);
        }
    }

    EigenSystem eig;
    const std::size_t m = freqs.size();
    eig.energies.reserve(m + 1 + dark.size());
    eig.system_weights.reserve(m + 1 + dark.size());

    if (m == 0) {
        eig.energies.push_back(omega0);
        eig.system_weights.push_back(1.0);
    } else {
        double gnorm = 0.0;
        for (double g : gs) gnorm += g * g;
        gnorm = std::sqrt(gnorm);

        // Exterior root below freqs[0]: anchored there, mu < 0.
        {
            detail::AnchoredSecular S(freqs, gs, omega0, 0);
            double span = std::abs(freqs[0] - omega0) + gnorm +
                          (freqs[m - 1] - freqs[0]) + 1.0;
            while (!(S(-span) < 0.0)) span *= 2.0;
            const double mu = detail::solve_from_pole(S, -span);
            eig.energies.push_back(freqs[0] + mu);
            eig.system_weights.push_back(S.weight(mu));
        }
        // Interior intervals (freqs[j], freqs[j+1]): anchor at the nearer pole.
        for (std::size_t j = 0; j + 1 < m; ++j) {
            const double width = freqs[j + 1] - freqs[j];
            detail::AnchoredSecular left(freqs, gs, omega0, j);
            double mu;
            bool use_left = (left(0.5 * width) > 0.0);
            if (use_left) {
                mu = detail::solve_from_pole(left, 0.5 * width);
                eig.energies.push_back(freqs[j] + mu);
                eig.system_weights.push_back(left.weight(mu));
            } else {
                detail::AnchoredSecular right(freqs, gs, omega0, j + 1);
                mu = detail::solve_from_pole(right, -0.5 * width);
                eig.energies.push_back(freqs[j + 1] + mu);
                eig.system_weights.push_back(right.weight(mu));
            }
        }
        // Exterior root above freqs[m-1]: anchored there, mu > 0.
        {
            detail::AnchoredSecular S(freqs, gs, omega0, m - 1);
            double span = std::abs(freqs[m - 1] - omega0) + gnorm +
                          (freqs[m - 1] - freqs[0]) + 1.0;
            while (!(S(span) > 0.0)) span *= 2.0;
            const double mu = detail::solve_from_pole(S, span);
            eig.energies.push_back(freqs[m - 1] + mu);
            eig.system_weights.push_back(S.weight(mu));
        }
    }

    // Re-insert pruned modes as trivial eigenpairs, keeping energies sorted.
    for (double wd : dark) {
        auto pos = std::lower_bound(eig.energies.begin(), eig.energies.end(), wd);
        const auto idx = pos - eig.energies.begin();
        eig.energies.insert(pos, wd);
        eig.system_weights.insert(eig.system_weights.begin() + idx, 0.0);
    }
    return eig;
}

// Full spectrum of the finite array: arrowhead over the bright modes plus the
// decoupled (antisymmetric) partners as weight-zero eigenpairs, N+1 in total.
inline EigenSystem array_eigensystem(const ResonatorArray& arr, double omega0) {
    ArrayModes modes = array_modes(arr);
    EigenSystem eig = arrowhead_eigensystem(modes.bright, omega0);
    for (double wd : modes.dark_freqs) {
        auto pos = std::lower_bound(eig.energies.begin(), eig.energies.end(), wd);
        const auto idx = pos - eig.energies.begin();
        eig.energies.insert(pos, wd);
        eig.system_weights.insert(eig.system_weights.begin() + idx, 0.0);
    }
    return eig;
}

// Operational bound-state test for finite baths: an eigenvalue is isolated
// when its gap to the nearest other eigenvalue exceeds `gap_factor` times the
// mean level spacing of the bath and its system weight is non-negligible.
inline std::vector<std::size_t> isolated_indices(const EigenSystem& eig,
                                                 const DiscreteBath& bath,
                                                 double weight_threshold = 1e-3,
                                                 double gap_factor = 5.0) {
    std::vector<std::size_t> out;
    if (eig.size() < 2 || bath.size() < 2) return out;
    const double mean_spacing =
        (bath.mode_freqs.back() - bath.mode_freqs.front()) /
        static_cast<double>(bath.size() - 1);
    for (std::size_t i = 0; i < eig.size(); ++i) {
        double gap = std::numeric_limits<double>::infinity();
        if (i > 0) gap = std::min(gap, eig.energies[i] - eig.energies[i - 1]);
        if (i + 1 < eig.size())
            gap = std::min(gap, eig.energies[i + 1] - eig.energies[i]);
        if (gap > gap_factor * mean_spacing &&
            eig.system_weights[i] > weight_threshold)
            out.push_back(i);
    }
    return out;
}

} // namespace qslb
