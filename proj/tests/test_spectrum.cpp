#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qslb/spectral.hpp"
#include "qslb/spectrum.hpp"

using namespace qslb;

TEST_CASE("critical coupling values") {
    CHECK(critical_coupling(1.0, 0.1, 1.0) == Catch::Approx(0.1).margin(1e-12));
    CHECK(critical_coupling(2.0, 0.1, 1.0) == Catch::Approx(0.1).margin(1e-12));
    // Gamma(1/2) = sqrt(pi), cross-checked by quadrature
    const double gamma_half = oracles::integrate_tail(
        [](double w) { return std::exp(-w) / std::sqrt(std::max(w, 1e-300)); },
        1e-12, 1.0);
    CHECK(critical_coupling(0.5, 0.1, 1.0) ==
          Catch::Approx(0.056418958354775628).epsilon(1e-12));
    CHECK(critical_coupling(0.5, 0.1, 1.0) ==
          Catch::Approx(0.1 / gamma_half).epsilon(1e-5));
    CHECK_THROWS_AS(critical_coupling(0.0, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("Ohmic bound state appears only above threshold") {
    CHECK(find_bound_states(EnvironmentModel{OhmicFamily(0.05, 1.0, 1.0)}, 0.1)
              .empty());
    CHECK(find_bound_states(EnvironmentModel{OhmicFamily(0.0, 1.0, 1.0)}, 0.1)
              .empty());

    const auto bs =
        find_bound_states(EnvironmentModel{OhmicFamily(0.2, 1.0, 1.0)}, 0.1);
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].energy < 0.0);
    CHECK(bs[0].weight > 0.0);
    CHECK(bs[0].weight <= 1.0);
}

TEST_CASE("threshold consistency across spectral exponents") {
    for (double s : {0.5, 1.0, 2.0}) {
        const double etac = critical_coupling(s, 0.1, 1.0);
        for (int i = 0; i < 20; ++i) {
            const double eta = etac * (0.55 + 0.05 * i);  // 0.55 .. 1.50 eta_c
            const auto found =
                find_bound_states(EnvironmentModel{OhmicFamily(eta, s, 1.0)}, 0.1);
            const bool expect_state = eta > etac;
            INFO("s=" << s << " eta/etac=" << eta / etac);
            CHECK(found.empty() == !expect_state);
        }
    }
}

TEST_CASE("bound-state root residual and weight formula") {
    for (double eta : {0.12, 0.2, 0.3}) {
        const OhmicFamily env(eta, 1.0, 1.0);
        const EnvironmentModel em{env};
        const auto bs = find_bound_states(em, 0.1);
        REQUIRE(bs.size() == 1);
        const double y = 0.1 - self_energy(em, bs[0].energy);
        CHECK(std::abs(y - bs[0].energy) < 1e-9);
        CHECK(bs[0].weight ==
              Catch::Approx(1.0 / (1.0 + weight_integral(em, bs[0].energy)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("band model bound states at the reference point") {
    const ResonatorArray arr(0.1, 0.05, 1.0, 800);
    const auto bs = find_bound_states(EnvironmentModel{arr}, 1.08);
    REQUIRE(bs.size() == 2);
    CHECK(bs[0].energy < arr.band_min());
    CHECK(bs[1].energy > arr.band_max());
    CHECK(bs[0].weight > 1e-3);
    CHECK(bs[1].weight > 1e-3);
    // residuals of the secular equation with the closed-form self-energy
    const EnvironmentModel em{arr};
    for (const auto& b : bs) {
        const double y = 1.08 - self_energy(em, b.energy);
        CHECK(std::abs(y - b.energy) < 1e-9);
    }
    // weak coupling: near-edge roots carry no weight and are filtered out
    CHECK(find_bound_states(
              EnvironmentModel{ResonatorArray(0.005, 0.05, 1.0, 800)}, 1.08)
              .empty());
    // the filter is configurable
    CHECK(find_bound_states(
              EnvironmentModel{ResonatorArray(0.005, 0.05, 1.0, 800)}, 1.08,
              1e-9)
              .size() == 2);
}

TEST_CASE("bound-state weight basics") {
    CHECK(bound_state_weight(EnvironmentModel{OhmicFamily(0.0, 1.0, 1.0)}, -0.5) ==
          1.0);
    CHECK(bound_state_weight(EnvironmentModel{DiscreteBath({1.0}, {0.1})}, 0.8) ==
          Catch::Approx(0.8).epsilon(1e-14));
    const ResonatorArray arr(0.1, 0.05, 1.0, 800);
    CHECK(bound_state_weight(EnvironmentModel{arr}, arr.band_max() + 1e-12) == 0.0);
}

TEST_CASE("arrowhead: resonant single mode is exact") {
    const DiscreteBath mode({1.0}, {0.1});
    const auto eig = arrowhead_eigensystem(mode, 1.0);
    REQUIRE(eig.size() == 2);
    CHECK(eig.energies[0] == Catch::Approx(0.9).margin(1e-14));
    CHECK(eig.energies[1] == Catch::Approx(1.1).margin(1e-14));
    CHECK(eig.system_weights[0] == Catch::Approx(0.5).margin(1e-14));
    CHECK(eig.system_weights[1] == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("arrowhead: zero-coupling modes become trivial eigenpairs") {
    const DiscreteBath bath({0.5, 1.0, 1.5}, {0.0, 0.1, 0.0});
    const auto eig = arrowhead_eigensystem(bath, 1.0);
    REQUIRE(eig.size() == 4);
    double total = 0.0;
    int dark = 0;
    for (std::size_t i = 0; i < eig.size(); ++i) {
        total += eig.system_weights[i];
        if (eig.system_weights[i] == 0.0) ++dark;
    }
    CHECK(dark == 2);
    CHECK(total == Catch::Approx(1.0).margin(1e-12));

    const DiscreteBath all_dark({0.5, 1.5}, {0.0, 0.0});
    const auto triv = arrowhead_eigensystem(all_dark, 1.0);
    REQUIRE(triv.size() == 3);
    CHECK(triv.energies[1] == 1.0);
    CHECK(triv.system_weights[1] == 1.0);
}

TEST_CASE("arrowhead matches a dense eigensolver on random baths") {
    std::mt19937 rng(123457u);
    std::uniform_real_distribution<double> freq(0.2, 3.0);
    std::uniform_real_distribution<double> coup(0.005, 0.2);
    std::uniform_int_distribution<int> size_d(2, 60);
    for (int trial = 0; trial < 12; ++trial) {
        const int m = size_d(rng);
        std::vector<double> fs(m), gs(m);
        for (auto& f : fs) f = freq(rng);
        std::sort(fs.begin(), fs.end());
        for (int i = 1; i < m; ++i)
            if (fs[i] - fs[i - 1] < 1e-6) fs[i] = fs[i - 1] + 1e-6;
        for (auto& g : gs) g = coup(rng);
        const double w0 = freq(rng);

        const auto ours = arrowhead_eigensystem(DiscreteBath(fs, gs), w0);
        const auto ref = oracles::arrowhead_dense(w0, fs, gs);
        REQUIRE(ours.size() == ref.energies.size());
        for (std::size_t i = 0; i < ours.size(); ++i) {
            CHECK(ours.energies[i] ==
                  Catch::Approx(ref.energies[i]).margin(1e-11));
            CHECK(ours.system_weights[i] ==
                  Catch::Approx(ref.system_weights[i]).margin(1e-9));
        }
    }
}

TEST_CASE("arrowhead interlaces the bath frequencies") {
    std::mt19937 rng(98765u);
    std::uniform_real_distribution<double> freq(0.2, 3.0);
    std::uniform_real_distribution<double> coup(0.001, 0.1);
    for (int trial = 0; trial < 8; ++trial) {
        const int m = 50;
        std::vector<double> fs(m), gs(m);
        for (auto& f : fs) f = freq(rng);
        std::sort(fs.begin(), fs.end());
        for (int i = 1; i < m; ++i)
            if (fs[i] - fs[i - 1] < 1e-6) fs[i] = fs[i - 1] + 1e-6;
        for (auto& g : gs) g = coup(rng);
        const auto eig = arrowhead_eigensystem(DiscreteBath(fs, gs), freq(rng));
        REQUIRE(eig.size() == static_cast<std::size_t>(m + 1));
        for (int i = 0; i < m; ++i) {
            CHECK(eig.energies[i] < fs[i]);
            CHECK(fs[i] < eig.energies[i + 1]);
        }
    }
}

TEST_CASE("full array spectrum: N+1 eigenvalues, isolation flags, dense check") {
    const ResonatorArray arr(0.1, 0.05, 1.0, 800);
    const auto eig = array_eigensystem(arr, 1.08);
    REQUIRE(eig.size() == 801);

    double total = 0.0;
    for (double w : eig.system_weights) total += w;
    CHECK(total == Catch::Approx(1.0).margin(1e-10));

    const auto bright = to_discrete_bath(arr);
    const auto iso = isolated_indices(eig, bright);
    REQUIRE(iso.size() == 2);
    CHECK(eig.energies[iso[0]] < arr.band_min());
    CHECK(eig.energies[iso[1]] > arr.band_max());
    CHECK(eig.system_weights[iso[0]] > 1e-3);
    CHECK(eig.system_weights[iso[1]] > 1e-3);

    // continuum secular roots agree with the finite-lattice isolated levels
    const auto bs = find_bound_states(EnvironmentModel{arr}, 1.08);
    REQUIRE(bs.size() == 2);
    CHECK(bs[0].energy == Catch::Approx(eig.energies[iso[0]]).margin(2e-4));
    CHECK(bs[1].energy == Catch::Approx(eig.energies[iso[1]]).margin(2e-4));
    CHECK(bs[0].weight == Catch::Approx(eig.system_weights[iso[0]]).margin(1e-3));
    CHECK(bs[1].weight == Catch::Approx(eig.system_weights[iso[1]]).margin(1e-3));

    // dense oracle over the bright (merged) modes
    const auto ref =
        oracles::arrowhead_dense(1.08, bright.mode_freqs, bright.couplings);
    const auto ours = arrowhead_eigensystem(bright, 1.08);
    REQUIRE(ours.size() == ref.energies.size());
    for (std::size_t i = 0; i < ours.size(); ++i)
        CHECK(ours.energies[i] == Catch::Approx(ref.energies[i]).margin(1e-11));
}

TEST_CASE("continuum bound state matches the discretized lattice") {
    for (double eta : {0.15, 0.2, 0.3}) {
        const OhmicFamily env(eta, 1.0, 1.0);
        const auto bs = find_bound_states(EnvironmentModel{env}, 0.1);
        REQUIRE(bs.size() == 1);
        const auto eig =
            arrowhead_eigensystem(discretize(env, 8000, 20.0), 0.1);
        CHECK(bs[0].energy == Catch::Approx(eig.energies[0]).margin(1e-4));
        CHECK(bs[0].weight ==
              Catch::Approx(eig.system_weights[0]).margin(1e-3));
    }
}
