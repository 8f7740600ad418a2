#include <doctest.h>

#include "dtcsim/dynamics.hpp"

#include <cmath>

using namespace dtcsim;

namespace {

struct Harmonic {
    void operator()(double, const State<2>& x, State<2>& d) const {
        d[0] = x[1];
        d[1] = -x[0];
    }
};

double harmonic_error(double dt, double t_end) {
    State<2> x{1.0, 0.0};
    const auto steps = static_cast<long>(std::llround(t_end / dt));
    for (long k = 0; k < steps; ++k) x = rk4_step<2>(Harmonic{}, x, k * dt, dt);
    return std::hypot(x[0] - std::cos(t_end), x[1] + std::sin(t_end));
}

}  // namespace

TEST_CASE("rk4 tracks the harmonic oscillator") {
    CHECK(harmonic_error(1e-3, 10.0) < 1e-12);
}

TEST_CASE("rk4 is fourth order") {
    const double e1 = harmonic_error(0.1, 10.0);
    const double e2 = harmonic_error(0.05, 10.0);
    const double ratio = e1 / e2;
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("integrate records every stride-th state at exact times") {
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 2.0;
    cfg.stride = 10;
    const auto traj = integrate<2>(Harmonic{}, State<2>{1.0, 0.0}, cfg);
    REQUIRE(traj.size() == 201);
    CHECK(traj.time(200) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(traj.sample_spacing() == doctest::Approx(0.01));
    for (std::size_t k : {0u, 57u, 200u}) {
        CHECK(traj.at(k, 0) == doctest::Approx(std::cos(traj.time(k))).epsilon(1e-10));
    }
    CHECK_FALSE(traj.diverged);
    CHECK(traj.truncation_index == traj.size());
    CHECK(traj.column(1).size() == traj.size());
}

TEST_CASE("default integrator covers t_final = 1000 in 1e6 steps") {
    IntegratorConfig cfg;
    CHECK(cfg.step_count() == 1'000'000);
    CHECK(cfg.sample_count() == 100'001);
}

TEST_CASE("blow-up is flagged and keeps the recorded prefix") {
    // x' = x^2 from x(0) = 1 diverges at t = 1.
    auto rhs = [](double, const State<1>& x, State<1>& d) { d[0] = x[0] * x[0]; };
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 2.0;
    cfg.stride = 1;
    const auto traj = integrate<1>(rhs, State<1>{1.0}, cfg);
    CHECK(traj.diverged);
    CHECK(traj.size() > 900);
    CHECK(traj.size() < 2001);
    CHECK(traj.truncation_index == traj.size());
}

TEST_CASE("non-finite stages raise DivergenceError") {
    auto rhs = [](double, const State<1>&, State<1>& d) { d[0] = std::nan(""); };
    CHECK_THROWS_AS(rk4_step<1>(rhs, State<1>{0.0}, 0.0, 1e-3), DivergenceError);
}

TEST_CASE("integrator and drive validation") {
    IntegratorConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.stride = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.t_final = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    DriveSpec d{1.0, -0.1, 1.0};
    CHECK_THROWS_AS(d.validate(), ConfigError);
    d = {1.0, 1.5, 1.0};
    CHECK_NOTHROW(d.validate());
    CHECK(d.amplitude_flagged());
}

TEST_CASE("drive value") {
    const DriveSpec d{2.0, 0.5, 3.0};
    CHECK(drive_value(d, 0.0) == doctest::Approx(2.0));
    CHECK(drive_value(d, std::acos(-1.0) / 6.0) == doctest::Approx(3.0));
}
