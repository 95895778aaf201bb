// oracles.hpp — Test-only reference implementations, independent of the
// library's quadrature and eigensolver paths.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

// Classic recursive adaptive Simpson; deliberately unrelated to the
// Gauss-Kronrod engine under test.
inline double simpson_step(const std::function<double(double)>& f, double a,
                           double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-11) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Semi-infinite integrals of exponentially cut-off spectral densities:
// truncate at a multiple of the cutoff where the integrand is ~1e-26.
inline double integrate_tail(const std::function<double(double)>& f,
                             double lower, double omega_c,
                             double tol = 1e-11) {
    return integrate(f, lower, lower + 60.0 * omega_c, tol);
}

// Cauchy principal value by shrinking symmetric exclusion windows with
// Richardson extrapolation (the leading excluded term is linear in eps).
inline double principal_value(const std::function<double(double)>& f,
                              double pole, double upper) {
    auto excluded = [&](double eps) {
        auto g = [&](double w) { return f(w) / (w - pole); };
        return integrate(g, 0.0, pole - eps) + integrate(g, pole + eps, upper);
    };
    const double v1 = excluded(1e-2), v2 = excluded(1e-3), v3 = excluded(1e-4);
    const double r12 = (10.0 * v2 - v1) / 9.0;
    const double r23 = (10.0 * v3 - v2) / 9.0;
    return (10.0 * r23 - r12) / 9.0;
}

// Dense single-excitation matrix: diagonal (omega0, w_1..w_N) with border
// couplings g_k in the first row/column. Frequencies may repeat.
struct DenseEigen {
    std::vector<double> energies;
    std::vector<double> system_weights;
};

inline DenseEigen arrowhead_dense(double omega0,
                                  const std::vector<double>& freqs,
                                  const std::vector<double>& gs) {
    const int m = static_cast<int>(freqs.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m + 1);
    H(0, 0) = omega0;
    for (int k = 0; k < m; ++k) {
        H(k + 1, k + 1) = freqs[k];
        H(0, k + 1) = gs[k];
        H(k + 1, 0) = gs[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense eigensolver failed");
    DenseEigen out;
    out.energies.resize(m + 1);
    out.system_weights.resize(m + 1);
    for (int i = 0; i <= m; ++i) {
        out.energies[i] = solver.eigenvalues()(i);
        const double q = solver.eigenvectors()(0, i);
        out.system_weights[i] = q * q;
    }
    return out;
}

} // namespace oracles
