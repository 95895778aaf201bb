#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qslb/numerics.hpp"

using namespace qslb;

TEST_CASE("adaptive Gauss-Kronrod on finite intervals") {
    auto sq = [](double x) { return x * x; };
    CHECK(quad::integrate(sq, 0.0, 1.0) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));

    const double pi = 3.14159265358979323846;
    auto s = [](double x) { return std::sin(x); };
    CHECK(quad::integrate(s, 0.0, pi) == Catch::Approx(2.0).epsilon(1e-12));

    // reversed order integrates to the negative
    CHECK(quad::integrate(s, pi, 0.0) == Catch::Approx(-2.0).epsilon(1e-12));
    CHECK(quad::integrate(sq, 2.0, 2.0) == 0.0);
}

TEST_CASE("semi-infinite transform handles exponential tails") {
    auto e = [](double w) { return std::exp(-w); };
    CHECK(quad::integrate_semi_infinite(e, 0.0, 1.0) ==
          Catch::Approx(1.0).epsilon(1e-10));

    auto we = [](double w) { return w * std::exp(-w); };
    CHECK(quad::integrate_semi_infinite(we, 0.0, 1.0) ==
          Catch::Approx(1.0).epsilon(1e-10));

    // integrable endpoint singularity: Gamma(1/2) = sqrt(pi)
    auto root = [](double w) { return std::exp(-w) / std::sqrt(w); };
    CHECK(quad::integrate_semi_infinite(root, 0.0, 1.0) ==
          Catch::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-8));

    // offset lower bound
    auto e2 = [](double w) { return std::exp(-w); };
    CHECK(quad::integrate_semi_infinite(e2, 2.0, 1.0) ==
          Catch::Approx(std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("Brent root finding") {
    const double pi = 3.14159265358979323846;
    auto f = [](double x) { return std::cos(x); };
    CHECK(roots::brent(f, 0.0, 2.0, 1e-14) == Catch::Approx(pi / 2).epsilon(1e-12));

    auto cubic = [](double x) { return x * x * x - 2.0; };
    CHECK(roots::brent(cubic, 0.0, 2.0, 1e-14) ==
          Catch::Approx(std::cbrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(roots::brent(f, 2.0, 3.0, 1e-12), numerical_error);
}

TEST_CASE("radix-2 FFT basics") {
    std::vector<std::complex<double>> x(8, {0.0, 0.0});
    x[0] = 1.0;
    fft::transform(x);
    for (const auto& v : x) CHECK(std::abs(v - std::complex<double>(1.0, 0.0)) < 1e-14);

    // pure tone lands in a single bin pair
    const double pi = 3.14159265358979323846;
    std::vector<std::complex<double>> y(64);
    for (int i = 0; i < 64; ++i) y[i] = std::cos(2.0 * pi * 5.0 * i / 64.0);
    fft::transform(y);
    CHECK(std::abs(y[5]) == Catch::Approx(32.0).epsilon(1e-12));
    for (int k = 0; k < 32; ++k)
        if (k != 5) CHECK(std::abs(y[k]) < 1e-10);

    std::vector<std::complex<double>> bad(6);
    CHECK_THROWS_AS(fft::transform(bad), std::invalid_argument);
}
