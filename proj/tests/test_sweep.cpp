#include <doctest.h>

#include "dtcsim/io.hpp"
#include "dtcsim/sweep.hpp"

#include <sstream>

using namespace dtcsim;

namespace {

SweepConfig small_nom_sweep() {
    SweepConfig c;
    c.model.kind = ModelKind::Nom;
    c.model.dicke.kappa = 0.5;
    c.axis1 = {"wd", 0.6, 0.8, 2};
    c.axis2 = {"A", 0.2, 0.5, 2};
    c.integrator.t_final = 200.0;
    return c;
}

std::string csv_of(const PhaseDiagram& d) {
    std::ostringstream ss;
    write_phase_diagram_csv(ss, d);
    return ss.str();
}

PhaseDiagram uniform(int n, PhaseKind k) {
    PhaseDiagram d;
    d.config.axis1.count = n;
    d.config.axis2.count = 1;
    d.cells.resize(static_cast<std::size_t>(n));
    for (auto& c : d.cells) c.label.kind = k;
    return d;
}

}  // namespace

TEST_CASE("parameter names and aliases") {
    ModelSpec s;
    set_parameter(s, "A", 0.3);
    set_parameter(s, "wd", 0.7);
    set_parameter(s, "gprime", 0.8);
    CHECK(s.dicke.amplitude == 0.3);
    CHECK(s.lmg.amplitude == 0.3);
    CHECK(get_parameter(s, "drive_frequency") == 0.7);
    CHECK(get_parameter(s, "g_ratio") == 0.8);
    CHECK(canonical_parameter("lambda") == "lambda0");
    CHECK_THROWS_AS(set_parameter(s, "nonsense", 1.0), ConfigError);
}

TEST_CASE("axes") {
    const Axis a{"A", 0.0, 1.0, 5};
    CHECK(a.value(0) == 0.0);
    CHECK(a.value(2) == 0.5);
    CHECK(a.value(4) == 1.0);
    CHECK_THROWS_AS((Axis{"A", 0.0, 1.0, 1}).validate(), ConfigError);
    CHECK_THROWS_AS((Axis{"A", 1.0, 0.0, 3}).validate(), ConfigError);
    auto c = small_nom_sweep();
    c.axis2.name = "drive_frequency";
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("a 2x2 sweep is four independent evaluations") {
    const auto c = small_nom_sweep();
    const auto d = run_sweep(c);
    REQUIRE(d.cells.size() == 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            ModelSpec s = c.model;
            set_parameter(s, "wd", c.axis1.value(i));
            set_parameter(s, "A", c.axis2.value(j));
            const auto expect = evaluate_point(s, c.integrator, c.classifier);
            const auto& got = d.at(i, j).label;
            CHECK(got.kind == expect.kind);
            CHECK(got.diagnostics.max_amp == expect.diagnostics.max_amp);
            CHECK(got.diagnostics.d2 == expect.diagnostics.d2);
        }
    }
}

TEST_CASE("worker count does not change the diagram") {
    auto c = small_nom_sweep();
    c.axis1.count = 3;
    c.axis2.count = 3;
    const auto serial = run_sweep(c);
    c.workers = 8;
    const auto parallel = run_sweep(c);
    CHECK(csv_of(serial) == csv_of(parallel));
}

TEST_CASE("cells outside the model's validity are recorded, not fatal") {
    auto c = small_nom_sweep();
    c.axis1 = {"gprime", 0.5, 1.5, 3};
    const auto d = run_sweep(c);
    CHECK(d.at(0, 0).label.note.empty());
    CHECK(d.at(2, 0).label.note.find("error") == 0);
}

TEST_CASE("area ratio") {
    CHECK(area_ratio(uniform(10, PhaseKind::NP), PhaseKind::NP) == 1.0);
    auto d = uniform(10, PhaseKind::NP);
    for (int i = 0; i < 5; ++i) d.cells[static_cast<std::size_t>(i)].label.kind = PhaseKind::UB;
    CHECK(area_ratio(d, PhaseKind::NP) == 0.5);
    CHECK_THROWS_AS(area_ratio(PhaseDiagram{}, PhaseKind::NP), std::invalid_argument);
}

TEST_CASE("threshold scan brackets the lobe") {
    ThresholdScanConfig c;
    c.model.kind = ModelKind::Nom;
    c.model.dicke.kappa = 0.5;
    c.scan_axis = {"wd", 0.6, 3.0, 2};
    c.iterations = 6;
    const auto scan = threshold_scan(c);
    REQUIRE(scan.size() == 2);
    REQUIRE(scan[0].threshold);
    // Close to the lobe tip; the predicted minimum is A_r = 0.349.
    CHECK(*scan[0].threshold > 0.25);
    CHECK(*scan[0].threshold < 0.45);
    CHECK_FALSE(scan[1].threshold);
    const auto tip = lobe_tip(scan);
    REQUIRE(tip);
    CHECK(tip->x == 0.6);
}

TEST_CASE("NOM diagram has its 2T lobe around wd = 0.8") {
    SweepConfig c;
    c.model.kind = ModelKind::Nom;
    c.model.dicke.kappa = 0.5;
    c.axis1 = {"wd", 0.2, 1.4, 13};
    c.axis2 = {"A", 0.0, 1.0, 6};
    const auto d = run_sweep(c);
    int dtc = 0;
    for (const auto& cell : d.cells) {
        if (cell.label.kind == PhaseKind::DTC_2T) ++dtc;
        if (cell.x2 <= 0.2) CHECK(cell.label.kind == PhaseKind::NP);
        // far above resonance the drive is too weak to destabilise the seed
        if (cell.x1 >= 1.2 && cell.x2 <= 0.6) CHECK(cell.label.kind == PhaseKind::NP);
    }
    CHECK(dtc >= 10);
    for (std::size_t i = 4; i <= 6; ++i) CHECK(d.at(i, 2).label.kind == PhaseKind::DTC_2T);
    CHECK(d.at(6, 3).label.kind == PhaseKind::DTC_2T);  // wd = 0.8, A = 0.6
    CHECK(area_ratio(d, PhaseKind::NP) > 0.3);
}
