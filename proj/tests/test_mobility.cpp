#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "v2x/mobility.hpp"

using namespace v2x;

namespace {

bool on_street(const Vec2& p, double spacing, double tol = 1e-6) {
    auto near_lattice = [&](double v) {
        double r = std::remainder(v, spacing);
        return std::abs(r) < tol;
    };
    return near_lattice(p.x) || near_lattice(p.y);
}

}  // namespace

TEST_CASE("spawn places every vehicle on a street inside the circle") {
    ScenarioConfig cfg;
    cfg.n_vehicles = 80;
    RngStream rng(42, -1, RngPurpose::Placement);
    auto vehicles = spawn_vehicles(cfg, rng);
    REQUIRE(vehicles.size() == 80);
    for (const auto& v : vehicles) {
        CHECK(std::hypot(v.position.x, v.position.y) <= cfg.area_radius + 1e-9);
        CHECK(on_street(v.position, cfg.grid_spacing));
        CHECK(v.speed >= cfg.speed_min);
        CHECK(v.speed <= cfg.speed_max);
    }
}

TEST_CASE("spawn of zero vehicles is empty") {
    ScenarioConfig cfg;
    cfg.n_vehicles = 0;
    RngStream rng(42, -1, RngPurpose::Placement);
    CHECK(spawn_vehicles(cfg, rng).empty());
}

TEST_CASE("spawn is deterministic under a fixed seed") {
    ScenarioConfig cfg;
    cfg.n_vehicles = 30;
    RngStream a(99, -1, RngPurpose::Placement), b(99, -1, RngPurpose::Placement);
    auto va = spawn_vehicles(cfg, a);
    auto vb = spawn_vehicles(cfg, b);
    for (size_t i = 0; i < va.size(); ++i) {
        CHECK(va[i].position.x == vb[i].position.x);
        CHECK(va[i].position.y == vb[i].position.y);
        CHECK(va[i].speed == vb[i].speed);
        CHECK(va[i].heading == vb[i].heading);
    }
}

TEST_CASE("mid-block step is pure translation") {
    GridLayout layout{60.0, 250.0};
    RngStream rng(1, 0, RngPurpose::Turn);
    VehicleKinematics v;
    v.position = {10.0, 60.0};
    v.street_offset = 60.0;
    v.heading = Heading::PosX;
    v.speed = 10.0;
    auto w = step(v, 0.5, layout, 0.7, rng);  // 5 m, stops before x=60
    CHECK(w.position.x == doctest::Approx(15.0));
    CHECK(w.position.y == doctest::Approx(60.0));
    CHECK(w.heading == Heading::PosX);
}

TEST_CASE("boundary reflection reverses heading and keeps the residual") {
    GridLayout layout{60.0, 250.0};
    RngStream rng(1, 0, RngPurpose::Turn);
    VehicleKinematics v;
    // y = 0 street: boundary at x = 250. start 1 m short, step 3 m.
    v.position = {249.0, 0.0};
    v.street_offset = 0.0;
    v.heading = Heading::PosX;
    v.speed = 3.0;
    auto w = step(v, 1.0, layout, 1.0, rng);  // p_straight=1: no turns interfere
    CHECK(w.position.x == doctest::Approx(248.0));
    CHECK(w.position.y == doctest::Approx(0.0));
    CHECK(w.heading == Heading::NegX);
}

TEST_CASE("dt must be positive") {
    GridLayout layout{60.0, 250.0};
    RngStream rng(1, 0, RngPurpose::Turn);
    VehicleKinematics v;
    CHECK_THROWS_AS(step(v, 0.0, layout, 0.7, rng), std::invalid_argument);
}

TEST_CASE("straight fraction at intersections matches p_straight") {
    GridLayout layout{60.0, 10000.0};  // huge arena: no boundary interference
    RngStream rng(7, 0, RngPurpose::Turn);
    int straight = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        VehicleKinematics v;
        v.position = {30.0, 0.0};
        v.street_offset = 0.0;
        v.heading = Heading::PosX;
        v.speed = 40.0;
        auto w = step(v, 1.0, layout, 0.70, rng);  // crosses exactly one intersection at x=60
        if (w.heading == Heading::PosX) ++straight;
    }
    double frac = straight / double(trials);
    CHECK(frac == doctest::Approx(0.70).epsilon(0.03));
    CHECK(std::abs(frac - 0.70) < 0.02);
}

TEST_CASE("closure: long trajectories stay on streets inside the circle") {
    ScenarioConfig cfg;
    cfg.n_vehicles = 20;
    GridLayout layout{cfg.grid_spacing, cfg.area_radius};
    RngStream place(3, -1, RngPurpose::Placement);
    auto vehicles = spawn_vehicles(cfg, place);
    for (int id = 0; id < 20; ++id) {
        RngStream rng(3, id, RngPurpose::Turn);
        VehicleKinematics v = vehicles[id];
        for (int t = 0; t < 2000; ++t) {
            v = step(v, 0.01, layout, cfg.p_straight, rng);
            REQUIRE(std::hypot(v.position.x, v.position.y) <= cfg.area_radius + 1e-6);
            REQUIRE(on_street(v.position, cfg.grid_spacing));
            REQUIRE(v.speed == vehicles[id].speed);  // constant speed per vehicle
        }
    }
}

TEST_CASE("four RSUs sit on snapped half-radius axis points") {
    ScenarioConfig cfg;
    auto pos = rsu_positions(cfg);
    REQUIRE(pos.size() == 4);
    CHECK(pos[0].x == doctest::Approx(120.0));
    CHECK(pos[0].y == doctest::Approx(0.0));
    CHECK(pos[1].x == doctest::Approx(0.0));
    CHECK(pos[1].y == doctest::Approx(120.0));
    CHECK(pos[2].x == doctest::Approx(-120.0));
    CHECK(pos[2].y == doctest::Approx(0.0));
    CHECK(pos[3].x == doctest::Approx(0.0));
    CHECK(pos[3].y == doctest::Approx(-120.0));

    cfg.area_radius = 500.0;
    pos = rsu_positions(cfg);
    CHECK(pos[0].x == doctest::Approx(240.0));
    CHECK(pos[1].y == doctest::Approx(240.0));
}

TEST_CASE("single RSU degenerates to the snapped (R/2, 0) point") {
    ScenarioConfig cfg;
    cfg.n_rsu = 1;
    auto pos = rsu_positions(cfg);
    REQUIRE(pos.size() == 1);
    CHECK(pos[0].x == doctest::Approx(120.0));
    CHECK(pos[0].y == doctest::Approx(0.0));
}
