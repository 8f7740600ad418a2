#include <doctest.h>

#include "dtcsim/lmg.hpp"
#include "dtcsim/simulation.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace dtcsim;

namespace {

LmgParams lmg(double lambda0, double gamma, double Gamma, double A = 0.0, double wd = 0.0) {
    LmgParams p;
    p.lambda0 = lambda0;
    p.gamma = gamma;
    p.Gamma = Gamma;
    p.amplitude = A;
    p.drive_frequency = wd;
    return p;
}

// Largest growth rate of small (X, Y) deviations from Z = -1, from a
// finite-difference Jacobian of the full flow.
double np_growth_rate(const LmgParams& p) {
    const double h = 1e-7;
    auto f = [&](double x, double y) {
        return lmg_rhs(p, {x, y, -std::sqrt(1.0 - x * x - y * y)}, 0.0);
    };
    Eigen::Matrix2d j;
    const auto fx = f(h, 0.0), fy = f(0.0, h);
    j << fx.X / h, fy.X / h, fx.Y / h, fy.Y / h;
    const Eigen::EigenSolver<Eigen::Matrix2d> es(j);
    return std::max(es.eigenvalues()[0].real(), es.eigenvalues()[1].real());
}

}  // namespace

TEST_CASE("flow is tangent to the unit sphere") {
    const auto p = lmg(1.3, -0.4, 0.2, 0.5, 0.9);
    for (LmgState s : {LmgState{0.3, -0.2, 0.6}, LmgState{-0.7, 0.1, -0.1}}) {
        const double n = std::sqrt(s.norm_sq());
        const LmgState u{s.X / n, s.Y / n, s.Z / n};
        const auto d = lmg_rhs(p, u, 2.3);
        CHECK(std::abs(u.X * d.X + u.Y * d.Y + u.Z * d.Z) < 1e-14);
    }
}

TEST_CASE("seeds") {
    const auto s = lmg_initial_state();
    CHECK(s.X == 0.0);
    CHECK(s.Y == 5e-8);
    CHECK(s.Z < 0.0);
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lmg_initial_state(0.1, Hemisphere::North).Z > 0.0);
    const auto p = lmg_perturbed_state(s, 1e-6);
    CHECK(p.X == doctest::Approx(1e-6));
    CHECK(p.norm_sq() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(lmg_initial_state(1.5), ConfigError);
}

TEST_CASE("critical coupling matches linear stability of the normal phase") {
    for (double gamma : {-1.0, -0.5, 0.0, 0.5}) {
        for (double Gamma : {0.0, 0.05, 0.2}) {
            const auto lc = lambda_critical(lmg(1.0, gamma, Gamma));
            REQUIRE(lc.has_real_transition());
            double lam = 1e9;
            for (const auto& r : lc.roots)
                if (r.real && r.value > 0.0) lam = std::min(lam, r.value);
            CAPTURE(gamma);
            CAPTURE(Gamma);
            const double below = np_growth_rate(lmg(lam - 1e-3, gamma, Gamma));
            const double above = np_growth_rate(lmg(lam + 1e-3, gamma, Gamma));
            if (Gamma == 0.0) {
                CHECK(below < 1e-6);
            } else {
                CHECK(below < 0.0);
            }
            CHECK(above > 1e-6);
        }
    }
    CHECK(lambda_critical(lmg(1.0, 0.0, 0.0)).roots.front().value == 1.0);
}

TEST_CASE("symmetry-broken steady states are unit-length fixed points") {
    for (double gamma : {-0.5, 0.0, 0.3}) {
        for (double Gamma : {0.0, 0.1, 0.3}) {
            const auto p = lmg(1.5, gamma, Gamma);
            const auto ss = lmg_steady_state(p);
            REQUIRE(ss.symmetry_broken.size() == 2);
            for (const auto& b : ss.symmetry_broken) {
                const LmgState s{b.Xs, b.Ys, b.Zs};
                CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
                const auto d = lmg_rhs(p, s, 0.0);
                CHECK(std::abs(d.X) + std::abs(d.Y) + std::abs(d.Z) < 1e-12);
            }
        }
    }
    CHECK(lmg_steady_state(lmg(0.8, 0.0, 0.0)).symmetry_broken.empty());
    CHECK(lmg_steady_state(lmg(0.1, 0.0, 0.5)).overdamped);
}

TEST_CASE("natural frequency") {
    const auto nf = natural_frequency(lmg(0.8, 0.0, 0.0));
    CHECK(nf.value == doctest::Approx(std::sqrt(0.2)));
    CHECK_FALSE(nf.imaginary);
    CHECK(nf.resonance(1) == doctest::Approx(2.0 * std::sqrt(0.2)));
    CHECK(natural_frequency(lmg(1.2, 0.0, 0.0)).imaginary);
}

TEST_CASE("isotropic closed forms match RK4") {
    IntegratorConfig cfg;
    cfg.t_final = 200.0;
    ModelSpec spec;
    spec.kind = ModelKind::Lmg;
    spec.lmg_y0 = 0.3;
    SUBCASE("Z relaxes to the south pole") {
        spec.lmg = lmg(0.8, 1.0, 0.1, 0.5, 0.9);
        const auto traj = simulate(spec, cfg);
        const double z0 = traj.at(0, 2);
        for (std::size_t k = 0; k < traj.size(); k += 1111) {
            CHECK(std::abs(traj.at(k, 2) - isotropic_z_analytic(0.1, z0, traj.time(k))) < 1e-9);
        }
        CHECK(traj.at(traj.size() - 1, 2) < -0.99);
    }
    SUBCASE("X precesses under the drive") {
        spec.lmg = lmg(0.8, 1.0, 0.0, 0.5, 0.9);
        const auto traj = simulate(spec, cfg);
        const LmgState s0{traj.at(0, 0), traj.at(0, 1), traj.at(0, 2)};
        for (std::size_t k = 0; k < traj.size(); k += 1111) {
            CHECK(std::abs(traj.at(k, 0) - isotropic_x_analytic(spec.lmg, s0, traj.time(k))) < 1e-9);
        }
    }
    CHECK_THROWS_AS(isotropic_x_analytic(lmg(0.8, 0.5, 0.0), LmgState{}, 1.0), std::domain_error);
    CHECK(isotropic_z_analytic(0.1, -1.0, 5.0) == -1.0);
}

TEST_CASE("dissipation map") {
    const DissipationChannels ch{0.2, 0.5, 0.6, 0.8};
    CHECK(gamma_dissipation_map(-1, ch) == doctest::Approx(0.64 * 0.5 - 0.36 * 0.2));
    CHECK(gamma_dissipation_map(0, ch) == doctest::Approx(-0.25));
    CHECK(gamma_dissipation_map(1, ch) == doctest::Approx(-0.15));
    CHECK_THROWS_AS(gamma_dissipation_map(2, ch), std::domain_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(lmg(0.8, 1.5, 0.0).validate(), ConfigError);
    CHECK_THROWS_AS(lmg(0.8, 0.0, -0.1).validate(), ConfigError);
    CHECK_NOTHROW(lmg(0.8, -1.0, 0.1, 0.5, 0.85).validate());
}
