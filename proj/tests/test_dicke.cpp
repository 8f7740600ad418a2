#include <doctest.h>

#include "dtcsim/dicke.hpp"
#include "dtcsim/simulation.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

using namespace dtcsim;

namespace {

DickeParams params(double kappa, double g_ratio = 0.9, double A = 0.0, double wd = 0.0) {
    DickeParams p;
    p.kappa = kappa;
    p.g_ratio = g_ratio;
    p.amplitude = A;
    p.drive_frequency = wd;
    return p;
}

// Undriven LOM as a constant 4x4 linear system.
Eigen::Matrix4d lom_matrix(const DickeParams& p) {
    const double g = p.g0();
    Eigen::Matrix4d m;
    m << -p.kappa, p.omega, 0, 0,
         -p.omega, -p.kappa, -2 * g, 0,
         0, 0, 0, p.omega0,
         -2 * g, 0, -p.omega0, 0;
    return m;
}

}  // namespace

TEST_CASE("critical coupling") {
    CHECK(critical_coupling(1.0, 1.0, 0.0) == 0.5);
    CHECK(critical_coupling(1.0, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0) / 2.0));
    CHECK(params(0.5).g0() == doctest::Approx(0.9 * 0.5 * std::sqrt(1.25)));
    CHECK_THROWS_AS(critical_coupling(0.0, 1.0, 0.0), ConfigError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(params(0.5, 1.0).validate(), ConfigError);
    CHECK_THROWS_AS(params(-0.1).validate(), ConfigError);
    CHECK_NOTHROW(params(0.5, 0.9, 0.5, 0.8).validate());
}

TEST_CASE("seeds") {
    const auto [mf, om] = np_initial_state(0.01);
    CHECK(om.alpha_re == 0.01);
    CHECK(om.beta_re == -0.01);
    CHECK(mf.sx == doctest::Approx(-0.02));
    CHECK(mf.spin_norm_sq() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mf.sz < 0.0);

    const auto [pmf, pom] = perturbed_initial_state(0.01, 1e-6);
    CHECK(pom.alpha_re == doctest::Approx(0.01 + 1e-6));
    CHECK(pom.beta_re == doctest::Approx(-0.01 + 1e-6));
    CHECK(pmf.sx == doctest::Approx(2.0 * pom.beta_re));

    CHECK_THROWS_AS(np_initial_state(0.5), ConfigError);
    CHECK_THROWS_AS(np_initial_state(-0.1), ConfigError);
}

TEST_CASE("normal phase is a fixed point of every model") {
    const auto p = params(0.5, 0.9, 0.5, 0.8);
    for (double t : {0.0, 0.3, 7.1}) {
        const auto d = dicke_mf_rhs(p, DickeMfState{}, t);
        CHECK(d.to_array() == State<5>{});
        CHECK(lom_rhs(p, OmState{}, t).to_array() == State<4>{});
        CHECK(nom_rhs(p, OmState{}, t).to_array() == State<4>{});
    }
}

TEST_CASE("mean-field flow is tangent to the Bloch sphere") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto p = params(0.3, 0.7, 0.4, 1.1);
    for (int i = 0; i < 50; ++i) {
        DickeMfState s{u(rng), u(rng), u(rng), u(rng), u(rng)};
        const auto d = dicke_mf_rhs(p, s, u(rng) * 10);
        CHECK(std::abs(s.sx * d.sx + s.sy * d.sy + s.sz * d.sz) < 1e-14);
    }
}

TEST_CASE("undriven LOM matches the matrix exponential") {
    const auto p = params(0.5);
    ModelSpec spec;
    spec.kind = ModelKind::Lom;
    spec.dicke = p;
    IntegratorConfig cfg;
    cfg.t_final = 20.0;
    const auto traj = simulate(spec, cfg);
    const Eigen::Vector4d x0(0.01, 0.0, -0.01, 0.0);
    for (std::size_t k : {std::size_t{500}, std::size_t{2000}}) {
        const Eigen::Vector4d x = (lom_matrix(p) * traj.time(k)).exp() * x0;
        for (int c = 0; c < 4; ++c) CHECK(traj.at(k, c) == doctest::Approx(x[c]).epsilon(1e-9));
    }
}

TEST_CASE("closed LOM conserves the pseudo-energy") {
    const auto p = params(0.0);
    ModelSpec spec;
    spec.kind = ModelKind::Lom;
    spec.dicke = p;
    IntegratorConfig cfg;
    cfg.t_final = 100.0;
    const auto traj = simulate(spec, cfg);
    const auto row = [&](std::size_t k) {
        return OmState{traj.at(k, 0), traj.at(k, 1), traj.at(k, 2), traj.at(k, 3)};
    };
    const double e0 = lom_pseudo_energy(p, row(0));
    CHECK(e0 > 0.0);
    for (std::size_t k = 0; k < traj.size(); k += 997) {
        CHECK(std::abs(lom_pseudo_energy(p, row(k)) - e0) < 1e-10 * e0);
    }
}

TEST_CASE("NOM reduces to LOM at small amplitude") {
    const auto p = params(0.5, 0.9, 0.5, 0.8);
    for (double eps : {1e-2, 1e-3}) {
        const OmState s{eps, 0.3 * eps, -eps, 0.7 * eps};
        const auto a = lom_rhs(p, s, 1.3).to_array();
        const auto b = nom_rhs(p, s, 1.3).to_array();
        for (int c = 0; c < 4; ++c) CHECK(std::abs(a[c] - b[c]) < 10.0 * eps * eps * eps);
    }
}

TEST_CASE("mean-field and oscillator pictures agree near the normal phase") {
    // The Holstein-Primakoff expansion is exact to first order in the amplitude.
    ModelSpec spec;
    spec.dicke = params(0.5, 0.9, 0.3, 0.8);
    spec.epsilon = 1e-4;
    IntegratorConfig cfg;
    cfg.t_final = 30.0;
    spec.kind = ModelKind::DickeMf;
    const auto mf = primary_series(simulate(spec, cfg), spec.kind);
    spec.kind = ModelKind::Lom;
    const auto lom = primary_series(simulate(spec, cfg), spec.kind);
    REQUIRE(mf.size() == lom.size());
    for (std::size_t k = 0; k < mf.size(); k += 100) {
        CHECK(std::abs(mf[k] - lom[k]) < 1e-9);
    }
}

TEST_CASE("observables") {
    const OmState s{0.0, 0.0, 0.6, 0.0};
    CHECK(jx_observable(s) == 0.6);
    CHECK(jx_corrected(s) == doctest::Approx(0.6 * 0.8));
    CHECK(excitation_fraction(s) == doctest::Approx(0.36));
    CHECK_THROWS_AS(jx_corrected(OmState{0.0, 0.0, 1.0, 0.5}), ValidityError);
    CHECK(jx_observable(DickeMfState{0, 0, 0.4, 0, -0.9}) == 0.2);
}
