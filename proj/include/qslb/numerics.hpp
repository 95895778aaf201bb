// numerics.hpp — Adaptive Gauss–Kronrod quadrature, bracketed root finding, radix-2 FFT

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "qslb/errors.hpp"

namespace qslb::quad {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK constants).
inline constexpr double kr15_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kr15_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights apply to the even-index Kronrod nodes (1, 3, 5, 7).
inline constexpr double g7_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
    double a, b;
    double integral;
    double error;
};

namespace detail {

// One G7/K15 evaluation on [a, b]; error estimate follows QUADPACK's
// resasc-scaled heuristic.
template <class F>
inline Interval gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kr15_nodes[i];
        fv[i] = f(c - dx);
        fv[14 - i] = f(c + dx);
    }

    double res_k = kr15_weights[7] * fv[7];
    double res_g = g7_weights[3] * fv[7];
    double res_abs = kr15_weights[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        res_k += kr15_weights[i] * (fv[i] + fv[14 - i]);
        res_abs += kr15_weights[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1)
            res_g += g7_weights[i / 2] * (fv[i] + fv[14 - i]);
    }

    const double mean = 0.5 * res_k;
    double res_asc = kr15_weights[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        res_asc += kr15_weights[i] *
                   (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));

    const double integral = res_k * h;
    res_abs *= std::abs(h);
    res_asc *= std::abs(h);

    double err = std::abs((res_k - res_g) * h);
    if (res_asc != 0.0 && err != 0.0)
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    const double round = 50.0 * std::numeric_limits<double>::epsilon() * res_abs;
    err = std::max(err, round);

    return {a, b, integral, err};
}

} // namespace detail

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-8;
};

// Globally adaptive integration on a finite interval: repeatedly bisect the
// interval with the largest error estimate until the total error satisfies
// max(abs, rel·|I|).
template <class F>
inline double integrate(F&& f, double a, double b, Tolerance tol = {},
                        std::size_t max_intervals = 4000) {
    if (a == b) return 0.0;
    std::vector<Interval> segs;
    segs.reserve(128);
    segs.push_back(detail::gk15(f, a, b));

    while (true) {
        double total = 0.0, err = 0.0;
        for (const auto& s : segs) {
            total += s.integral;
            err += s.error;
        }
        if (err <= std::max(tol.abs, tol.rel * std::abs(total))) return total;
        if (segs.size() >= max_intervals)
            throw numerical_error("quad::integrate: interval budget exhausted "
                                  "(error " + std::to_string(err) + ")");

        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;

        const Interval seg = segs[worst];
        const double mid = 0.5 * (seg.a + seg.b);
        if (!(seg.a < mid && mid < seg.b))
            throw numerical_error("quad::integrate: interval underflow before "
                                  "reaching tolerance");
        segs[worst] = detail::gk15(f, seg.a, mid);
        segs.push_back(detail::gk15(f, mid, seg.b));
    }
}

// ∫_lower^∞ f dω through the substitution ω = lower + scale·u/(1−u), u ∈ [0,1).
template <class F>
inline double integrate_semi_infinite(F&& f, double lower, double scale,
                                      Tolerance tol = {},
                                      std::size_t max_intervals = 4000) {
    auto g = [&f, lower, scale](double u) {
        const double om = 1.0 - u;
        const double w = lower + scale * u / om;
        return f(w) * scale / (om * om);
    };
    return integrate(g, 0.0, 1.0, tol, max_intervals);
}

} // namespace qslb::quad

namespace qslb::roots {

// Brent's method on a sign-changing bracket [a, b].
template <class F>
inline double brent(F&& f, double a, double b, double xtol,
                    std::size_t max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw numerical_error("roots::brent: endpoints do not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (std::size_t it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 =
            2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
            0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                                   std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if (fb == 0.0) return b;
    }
    throw numerical_error("roots::brent: no convergence after max iterations");
}

} // namespace qslb::roots

namespace qslb::fft {

// In-place iterative radix-2 Cooley–Tukey; n must be a power of two.
inline void transform(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft::transform: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = x[i + k];
                const auto v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

} // namespace qslb::fft
