#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qslb/spectral.hpp"

using namespace qslb;

namespace {
const OhmicFamily ohmic01(0.1, 1.0, 1.0);
const EnvironmentModel ohmic01_env{ohmic01};
} // namespace

TEST_CASE("model invariants are enforced at construction") {
    CHECK_THROWS_AS(OhmicFamily(-0.1, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(OhmicFamily(0.1, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(OhmicFamily(0.1, 1.0, -1.0), std::invalid_argument);
    CHECK_NOTHROW(OhmicFamily(0.0, 0.5, 2.0));  // decoupled case allowed

    CHECK_THROWS_AS(ResonatorArray(0.1, 0.05, 1.0, 801), std::invalid_argument);
    CHECK_THROWS_AS(ResonatorArray(0.1, -0.05, 1.0, 800), std::invalid_argument);

    CHECK_THROWS_AS(DiscreteBath({1.0, 1.0}, {0.1, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteBath({2.0, 1.0}, {0.1, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteBath({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteBath({1.0}, {-0.1}), std::invalid_argument);
}

TEST_CASE("spectral density evaluation") {
    CHECK(density_at(ohmic01_env, 1.0) ==
          Catch::Approx(0.036787944117144233).epsilon(1e-12));
    // independent re-evaluation on a few grid points
    for (double w : {0.3, 1.7, 4.0}) {
        const double expected = 0.1 * w * std::exp(-w);
        CHECK(density_at(ohmic01_env, w) == Catch::Approx(expected).epsilon(1e-14));
    }
    CHECK(density_at(ohmic01_env, 0.0) == 0.0);
    CHECK_THROWS_AS(density_at(ohmic01_env, -0.5), std::domain_error);

    const EnvironmentModel arr{ResonatorArray(0.1, 0.05, 1.0, 800)};
    CHECK(density_at(arr, 1.2) == 0.0);
    CHECK(density_at(arr, 0.85) == 0.0);
    const double inside = density_at(arr, 1.0);
    CHECK(inside == Catch::Approx(0.01 / (3.14159265358979323846 * 0.1)));

    const EnvironmentModel disc{DiscreteBath({1.0}, {0.1})};
    CHECK_THROWS_AS(density_at(disc, 1.0), std::invalid_argument);
}

TEST_CASE("sub/super-ohmic density shapes") {
    const OhmicFamily sub(0.2, 0.5, 1.0);
    const OhmicFamily super(0.2, 2.0, 1.0);
    CHECK(sub.density(0.01) > sub.density(1e-6));  // finite rise at zero
    CHECK(super.density(0.01) == Catch::Approx(0.2 * 1e-4 * std::exp(-0.01)));
    for (double w : {0.1, 0.5, 2.0}) {
        CHECK(sub.density(w) >= 0.0);
        CHECK(super.density(w) >= 0.0);
    }
}

TEST_CASE("correlation kernel") {
    // f(0) = \int J = eta wc^2 Gamma(s+1), cross-checked by quadrature
    const auto f0 = correlation(ohmic01_env, 0.0);
    CHECK(f0.real() == Catch::Approx(0.1).epsilon(1e-12));
    CHECK(f0.imag() == Catch::Approx(0.0).margin(1e-14));
    const double by_quad = oracles::integrate_tail(
        [](double w) { return 0.1 * w * std::exp(-w); }, 0.0, 1.0);
    CHECK(f0.real() == Catch::Approx(by_quad).epsilon(1e-6));

    // closed form against direct Fourier quadrature at a few times
    for (double x : {0.4, 1.3, 6.0}) {
        const auto f = correlation(ohmic01_env, x);
        const double re = oracles::integrate_tail(
            [x](double w) { return 0.1 * w * std::exp(-w) * std::cos(w * x); },
            0.0, 1.0);
        const double im = oracles::integrate_tail(
            [x](double w) { return -0.1 * w * std::exp(-w) * std::sin(w * x); },
            0.0, 1.0);
        CHECK(f.real() == Catch::Approx(re).margin(1e-9));
        CHECK(f.imag() == Catch::Approx(im).margin(1e-9));
    }

    // sub-ohmic closed form sanity
    const EnvironmentModel sub{OhmicFamily(0.2, 0.5, 1.0)};
    const auto fs = correlation(sub, 0.0);
    CHECK(fs.real() == Catch::Approx(0.2 * std::tgamma(1.5)).epsilon(1e-12));

    // single discrete mode
    const EnvironmentModel disc{DiscreteBath({1.0}, {0.1})};
    const auto fd = correlation(disc, 0.7);
    CHECK(fd.real() == Catch::Approx(0.01 * std::cos(0.7)).epsilon(1e-14));
    CHECK(fd.imag() == Catch::Approx(-0.01 * std::sin(0.7)).epsilon(1e-14));

    CHECK(correlation(EnvironmentModel{OhmicFamily(0.0, 1.0, 1.0)}, 3.0) ==
          std::complex<double>(0.0, 0.0));
    CHECK_THROWS_AS(correlation(ohmic01_env, -1.0), std::domain_error);
}

TEST_CASE("array correlation equals the band Fourier transform") {
    // continuum limit of the ring correlation: g^2 J_0(2 xi x) e^{-i wc x}
    const ResonatorArray arr(0.1, 0.05, 1.0, 4000);
    const EnvironmentModel env{arr};
    for (double x : {0.0, 3.0, 11.0}) {
        const auto f = correlation(env, x);
        const double mag = 0.01 * std::cyl_bessel_j(0, 2.0 * arr.xi * x);
        CHECK(f.real() == Catch::Approx(mag * std::cos(x)).margin(2e-8));
        CHECK(f.imag() == Catch::Approx(-mag * std::sin(x)).margin(2e-8));
    }
}

TEST_CASE("self-energy integral") {
    // E -> 0- limit equals eta wc Gamma(s); the boundary itself is rejected
    CHECK(self_energy(ohmic01_env, -1e-8) == Catch::Approx(0.1).margin(1e-5));
    CHECK_THROWS_AS(self_energy(ohmic01_env, 0.0), std::domain_error);
    CHECK_THROWS_AS(self_energy(ohmic01_env, 0.5), std::domain_error);

    const double quad_ref = oracles::integrate_tail(
        [](double w) { return 0.1 * w * std::exp(-w) / (w + 1.0); }, 0.0, 1.0);
    CHECK(self_energy(ohmic01_env, -1.0) == Catch::Approx(quad_ref).epsilon(1e-8));

    CHECK(self_energy(EnvironmentModel{OhmicFamily(0.0, 1.0, 1.0)}, -0.5) == 0.0);

    // band closed form versus the defining discrete sum at large N
    const EnvironmentModel band{ResonatorArray(0.1, 0.05, 1.0, 800)};
    const double closed = self_energy(band, 0.8);
    CHECK(closed == Catch::Approx(0.057735026918962576).epsilon(1e-12));
    const int big = 100000;
    double sum = 0.0;
    const double pi = 3.14159265358979323846;
    for (int m = 0; m < big; ++m) {
        const double eps = 1.0 + 0.1 * std::cos(2.0 * pi * m / big);
        sum += (0.01 / big) / (eps - 0.8);
    }
    CHECK(closed == Catch::Approx(sum).epsilon(1e-6));
    // above the band the integral is negative
    CHECK(self_energy(band, 1.3) ==
          Catch::Approx(-0.01 / std::sqrt(0.09 - 0.01)).epsilon(1e-12));

    CHECK_THROWS_AS(self_energy(band, 1.0), std::domain_error);
    CHECK_THROWS_AS(self_energy(band, 1.1), std::domain_error);

    // discrete bath: plain sum, rejects E on a mode
    const EnvironmentModel disc{DiscreteBath({1.0}, {0.1})};
    CHECK(self_energy(disc, 0.8) == Catch::Approx(0.05).epsilon(1e-14));
    CHECK_THROWS_AS(self_energy(disc, 1.0), std::domain_error);
}

TEST_CASE("self-energy is strictly increasing below the support") {
    const EnvironmentModel env{OhmicFamily(0.2, 1.0, 1.0)};
    double prev = self_energy(env, -3.0);
    for (double E = -2.7; E < -0.05; E += 0.3) {
        const double cur = self_energy(env, E);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("weight integral") {
    const double frozen = 0.019269472464638836;  // 0.1 (2 e E1(1) - 1)
    const double quad_ref = oracles::integrate_tail(
        [](double w) {
            return 0.1 * w * std::exp(-w) / ((w + 1.0) * (w + 1.0));
        },
        0.0, 1.0);
    CHECK(weight_integral(ohmic01_env, -1.0) ==
          Catch::Approx(frozen).epsilon(1e-9));
    CHECK(weight_integral(ohmic01_env, -1.0) ==
          Catch::Approx(quad_ref).epsilon(1e-8));

    CHECK(weight_integral(EnvironmentModel{OhmicFamily(0.0, 1.0, 1.0)}, -1.0) == 0.0);

    const EnvironmentModel disc{DiscreteBath({1.0}, {0.1})};
    CHECK(weight_integral(disc, 0.8) == Catch::Approx(0.25).epsilon(1e-14));

    // derivative identity d Sigma/dE = weight integral
    const EnvironmentModel env{OhmicFamily(0.15, 1.5, 1.0)};
    for (double E : {-0.3, -1.2}) {
        const double h = 1e-4 * std::abs(E);
        const double deriv =
            (self_energy(env, E + h) - self_energy(env, E - h)) / (2.0 * h);
        CHECK(weight_integral(env, E) == Catch::Approx(deriv).epsilon(1e-4));
    }

    // band edge divergence is reported as +inf
    const ResonatorArray arr(0.1, 0.05, 1.0, 800);
    const EnvironmentModel band{arr};
    CHECK(std::isinf(weight_integral(band, arr.band_max() + 1e-12)));
    CHECK(std::isfinite(weight_integral(band, arr.band_max() + 1e-6)));
    CHECK_THROWS_AS(weight_integral(band, 1.05), std::domain_error);
}

TEST_CASE("principal value frequency shift") {
    CHECK(principal_value_shift(OhmicFamily(0.0, 1.0, 1.0), 0.1) == 0.0);
    CHECK_THROWS_AS(principal_value_shift(ohmic01, -0.1), std::domain_error);
    CHECK_THROWS_AS(principal_value_shift(ohmic01, 0.0), std::domain_error);

    // shrinking-exclusion-window oracle with Richardson extrapolation
    for (double w0 : {0.1, 0.8}) {
        const double ref = oracles::principal_value(
            [](double w) { return 0.1 * w * std::exp(-w); }, w0, 60.0);
        CHECK(principal_value_shift(ohmic01, w0) ==
              Catch::Approx(ref).margin(2e-6));
    }
}

TEST_CASE("uniform discretization of the continuum") {
    const OhmicFamily env(0.1, 1.0, 1.0);
    const auto bath = discretize(env, 4000, 20.0);
    REQUIRE(bath.size() == 4000);
    for (std::size_t k = 0; k + 1 < bath.size(); ++k)
        CHECK(bath.mode_freqs[k] < bath.mode_freqs[k + 1]);

    double sum = 0.0;
    for (double g : bath.couplings) sum += g * g;
    CHECK(sum == Catch::Approx(0.1).margin(1e-3));  // = eta wc^2 Gamma(2)

    const auto zero = discretize(OhmicFamily(0.0, 1.0, 1.0), 16, 20.0);
    for (double g : zero.couplings) CHECK(g == 0.0);

    CHECK_THROWS_AS(discretize(env, 1, 20.0), std::invalid_argument);

    // discrete correlation tracks the continuum kernel
    double worst = 0.0;
    const EnvironmentModel cont{env};
    const EnvironmentModel disc{bath};
    for (double x = 0.0; x <= 50.0; x += 0.25)
        worst = std::max(worst,
                         std::abs(correlation(disc, x) - correlation(cont, x)));
    CHECK(worst < 1e-3);
}

TEST_CASE("array mode folding") {
    const ResonatorArray arr(0.1, 0.05, 1.0, 800);
    const auto modes = array_modes(arr);
    CHECK(modes.bright.size() == 401);
    CHECK(modes.dark_freqs.size() == 399);
    double sum = 0.0;
    for (double g : modes.bright.couplings) sum += g * g;
    CHECK(sum == Catch::Approx(0.01).epsilon(1e-12));  // lossless: sum g_k^2 = g^2
    for (double w : modes.bright.mode_freqs) {
        CHECK(w >= arr.band_min() - 1e-15);
        CHECK(w <= arr.band_max() + 1e-15);
    }
    const double per_mode = 0.1 / std::sqrt(800.0);
    CHECK(modes.bright.couplings.front() ==
          Catch::Approx(per_mode).epsilon(1e-12));  // band edge, self-paired
    CHECK(modes.bright.couplings[1] ==
          Catch::Approx(per_mode * std::sqrt(2.0)).epsilon(1e-12));
}
