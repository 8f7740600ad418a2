#include <doctest.h>

#include "dtcsim/dicke.hpp"
#include "dtcsim/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace dtcsim;

namespace {

// Distance from i*Omega to the nearest oracle eigenvalue.
double oracle_miss(const std::array<cplx, 4>& ev, cplx omega) {
    const cplx target = cplx(0.0, 1.0) * omega;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& l : ev) best = std::min(best, std::abs(l - target));
    return best;
}

}  // namespace

TEST_CASE("closed system polaritons") {
    const auto om = polariton_frequencies(1.0, 0.0, 0.9);
    CHECK(om[0].real() == doctest::Approx(std::sqrt(1.9)));
    CHECK(om[1].real() == doctest::Approx(std::sqrt(0.1)));
    CHECK(om[1].imag() == 0.0);
    const auto ev = eigen_oracle(1.0, 0.0, 0.9);
    CHECK(oracle_miss(ev, om[0]) < 1e-10);
    CHECK(oracle_miss(ev, om[1]) < 1e-10);
}

TEST_CASE("open system lower polariton") {
    // Omega_-^2 = 1 - 1/16 - sqrt(0.81 * 1.25 - 0.25)
    const double expected = std::sqrt(0.9375 - std::sqrt(0.7625));
    const auto om = polariton_frequencies(1.0, 0.5, 0.9);
    CHECK(om[1].real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(om[1].real() - 0.253556) < 1e-5);
}

TEST_CASE("eigen oracle agrees with the closed form on a fuzz grid") {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        for (int j = 0; j < 50; ++j) {
            const double kappa = 5.0 * i / 49.0;
            const double g = 0.02 + 0.97 * j / 49.0;
            const auto om = polariton_frequencies(1.0, kappa, g);
            const auto ev = eigen_oracle(1.0, kappa, g);
            worst = std::max({worst, oracle_miss(ev, om[0]), oracle_miss(ev, om[1])});
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("eigen oracle agrees with a dense eigensolver") {
    const double kappa = 0.7, g_ratio = 0.8;
    const double g = g_ratio * critical_coupling(1.0, 1.0, kappa);
    Eigen::Matrix4d m;
    m << 0, 1, 0, 0,
         -(1 + kappa * kappa / 4 + 2 * g), 0, 0, -kappa,
         0, 0, 0, 1,
         0, -kappa, -(1 + kappa * kappa / 4 - 2 * g), 0;
    const Eigen::EigenSolver<Eigen::Matrix4d> solver(m);
    const auto ev = eigen_oracle(1.0, kappa, g_ratio);
    for (int k = 0; k < 4; ++k) {
        const cplx l = solver.eigenvalues()[k];
        double best = 1e9;
        for (const auto& e : ev) best = std::min(best, std::abs(e - l));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("eigenmode branches") {
    const auto s = eigenmodes(1.0, 0.5, 0.9);
    CHECK(s.eps_minus_upper.real() == doctest::Approx(-0.25));
    CHECK(s.eps_minus_upper.imag() == doctest::Approx(s.omega_minus.real()));
    CHECK(s.eps_minus_lower == std::conj(s.eps_minus_upper));

    // Inside the overdamped window Omega_- is imaginary; the upper branch is
    // the less damped one.
    const auto w = eigenmodes(1.0, 1.5, 0.9);
    CHECK(w.omega_minus.real() == doctest::Approx(0.0));
    CHECK(w.eps_minus_upper.real() > w.eps_minus_lower.real());

    // Bad-cavity limit: the upper branch approaches +- i omega sqrt(1 - g'^2).
    const auto b = eigenmodes(1.0, 200.0, 0.9);
    const double w_inf = std::sqrt(1.0 - 0.81);
    CHECK(std::abs(b.eps_minus_upper - b.asym_upper_plus) < 2e-2);
    CHECK(b.asym_upper_plus.imag() == doctest::Approx(w_inf));
}

TEST_CASE("critical dissipation strengths") {
    const auto k = kappa_critical(1.0, 0.9);
    REQUIRE(k.kappa_c_prime);
    const double expected = 2.0 * std::sqrt(0.62 - 0.9 * std::sqrt(0.24));
    CHECK(*k.kappa_c_prime == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(*k.kappa_c_prime - 0.846388) < 1e-5);
    CHECK(k.kappa_c_dprime == doctest::Approx(2.064742).epsilon(1e-6));
    REQUIRE(k.kappa_plus_prime);
    CHECK(*k.kappa_plus_prime == doctest::Approx(2.0 * std::sqrt(0.62 + 0.9 * std::sqrt(0.24))));

    const auto one = kappa_critical(1.0, 1.0);
    REQUIRE(one.kappa_c_prime);
    CHECK(*one.kappa_c_prime == doctest::Approx(0.0));
    CHECK(std::isinf(one.kappa_c_dprime));

    const auto half = kappa_critical(1.0, 0.5);
    CHECK_FALSE(half.kappa_c_prime);
    CHECK_FALSE(half.kappa_plus_prime);

    // Omega_- vanishes exactly at kappa'_c.
    CHECK(std::abs(polariton_frequencies(1.0, expected, 0.9)[1]) < 1e-5);
}

TEST_CASE("drive amplitude scaling") {
    CHECK(drive_amp_scaling(1.0, 0.0, 0.9) == doctest::Approx(1.0));
    CHECK(drive_amp_scaling(1.0, 0.5, 0.9) == doctest::Approx(1.0125 / 0.7625).epsilon(1e-12));
    const double pole = kappa_critical(1.0, 0.9).kappa_c_dprime;
    CHECK_THROWS_AS(drive_amp_scaling(1.0, pole, 0.9), PoleError);
    CHECK(std::isnan(resonance_prediction(1.0, pole, 0.9).delta));
}

TEST_CASE("resonance prediction") {
    const auto p0 = resonance_prediction(1.0, 0.0, 0.9);
    CHECK(p0.omega_r == doctest::Approx(2.0 * std::sqrt(0.1)).epsilon(1e-12));
    CHECK(p0.a_r == 0.0);
    CHECK(p0.kappa_max == 1.0);
    CHECK(p0.omega_r_large_kappa == doctest::Approx(2.0 * std::sqrt(0.19)));

    const auto p1 = resonance_prediction(1.0, 1.0, 0.9);
    CHECK(p1.a_r == doctest::Approx(std::sqrt(0.19)));
    CHECK(p1.prediction_unreliable);
    CHECK_FALSE(resonance_prediction(1.0, 0.5, 0.9).prediction_unreliable);
    // A_r is symmetric under kappa -> omega^2 / kappa.
    CHECK(resonant_amplitude(1.0, 0.5, 0.9) == doctest::Approx(resonant_amplitude(1.0, 2.0, 0.9)));
}

TEST_CASE("invalid spectral inputs") {
    CHECK_THROWS_AS(polariton_frequencies(0.0, 0.1, 0.9), ConfigError);
    CHECK_THROWS_AS(polariton_frequencies(1.0, -0.1, 0.9), ConfigError);
    CHECK_THROWS_AS(polariton_frequencies(1.0, 0.1, 1.1), ConfigError);
}
