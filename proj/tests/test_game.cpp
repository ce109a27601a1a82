#include <doctest.h>

#include <algorithm>
#include <random>

#include "v2x/game.hpp"

using namespace v2x;

TEST_CASE("vehicle utility values at reference densities") {
    ScenarioConfig cfg;
    CHECK(vehicle_utility(10.0, 15, cfg) == doctest::Approx(8.0));
    CHECK(vehicle_utility(10.0, 0, cfg) == doctest::Approx(10.0));
    CHECK(vehicle_utility(10.0, 60, cfg) == doctest::Approx(-6.0));  // (60/15)^1.5 = 8
}

TEST_CASE("beacon rate selection sweeps the strategy set") {
    ScenarioConfig cfg;
    CHECK(select_beacon_rate(15, cfg) == 10.0);
    CHECK(select_beacon_rate(60, cfg) == 2.0);
    // break-even near (n/15)^1.5 = 5, n ~ 43.9
    CHECK(select_beacon_rate(43, cfg) == 10.0);
    CHECK(select_beacon_rate(44, cfg) == 2.0);
}

TEST_CASE("RSU utility values per level") {
    ScenarioConfig cfg;
    CHECK(rsu_utility(23.0, 2, cfg) == doctest::Approx(1.5));  // p = 1 at reference power
    CHECK(rsu_utility(18.0, 0, cfg) < 0.0);
    CHECK(rsu_utility(25.0, 2, cfg) == doctest::Approx(1.914).epsilon(1e-3));
    CHECK(rsu_utility(27.0, 2, cfg) == doctest::Approx(1.869).epsilon(1e-3));
    CHECK(rsu_utility(18.0, 2, cfg) == doctest::Approx(0.582).epsilon(1e-3));
    CHECK(rsu_utility(21.0, 2, cfg) == doctest::Approx(1.063).epsilon(1e-3));
}

TEST_CASE("RSU power selection") {
    ScenarioConfig cfg;
    CHECK(select_rsu_power(0, cfg) == 18.0);
    CHECK(select_rsu_power(2, cfg) == 25.0);
    CHECK(select_rsu_power(100, cfg) == 27.0);
}

TEST_CASE("selected values always belong to their strategy sets") {
    ScenarioConfig cfg;
    for (int n = 0; n <= 200; n += 3) {
        double r = select_beacon_rate(n, cfg);
        CHECK(std::count(cfg.beacon_rate_set.begin(), cfg.beacon_rate_set.end(), r) == 1);
    }
    for (int q = 0; q <= 100; q += 2) {
        double p = select_rsu_power(q, cfg);
        CHECK(std::count(cfg.rsu_power_levels.begin(), cfg.rsu_power_levels.end(), p) == 1);
    }
}

TEST_CASE("argmax is invariant to common positive weight scaling") {
    ScenarioConfig base;
    for (double scale : {0.1, 3.0, 250.0}) {
        ScenarioConfig cfg = base;
        cfg.w_freshness *= scale;
        cfg.w_congestion *= scale;
        for (int n = 0; n <= 100; ++n) CHECK(select_beacon_rate(n, cfg) == select_beacon_rate(n, base));
        cfg = base;
        cfg.w_queue *= scale;
        cfg.w_power *= scale;
        for (int q = 0; q <= 50; ++q) CHECK(select_rsu_power(q, cfg) == select_rsu_power(q, base));
    }
}

TEST_CASE("monotone comparative statics against a brute-force oracle") {
    ScenarioConfig cfg;
    double prev_rate = 1e18;
    for (int n = 0; n <= 100; ++n) {
        double r = select_beacon_rate(n, cfg);
        CHECK(r <= prev_rate);
        prev_rate = r;
        // brute-force argmax with the same tie-break (lowest rate wins ties)
        double best = cfg.beacon_rate_set.front();
        for (double cand : cfg.beacon_rate_set)
            if (vehicle_utility(cand, n, cfg) > vehicle_utility(best, n, cfg)) best = cand;
        CHECK(r == best);
    }
    double prev_power = -1e18;
    for (int q = 0; q <= 50; ++q) {
        double p = select_rsu_power(q, cfg);
        CHECK(p >= prev_power);
        prev_power = p;
        double best = cfg.rsu_power_levels.front();
        for (double cand : cfg.rsu_power_levels)
            if (rsu_utility(cand, q, cfg) > rsu_utility(best, q, cfg)) best = cand;
        CHECK(p == best);
    }
}

TEST_CASE("randomized instances match exhaustive evaluation exactly") {
    std::mt19937_64 gen(23);
    auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
    for (int trial = 0; trial < 1000; ++trial) {
        ScenarioConfig cfg;
        cfg.w_freshness = u(0.1, 5.0);
        cfg.w_congestion = u(0.01, 2.0);
        cfg.n_scale = u(1.0, 50.0);
        cfg.beacon_rate_set.clear();
        int m = 1 + static_cast<int>(gen() % 6);
        double r = u(0.5, 3.0);
        for (int i = 0; i < m; ++i) {
            cfg.beacon_rate_set.push_back(r);
            r += u(0.1, 5.0);
        }
        int n_est = static_cast<int>(gen() % 120);
        double got = select_beacon_rate(n_est, cfg);
        double best = cfg.beacon_rate_set.front();
        for (double cand : cfg.beacon_rate_set)
            if (vehicle_utility(cand, n_est, cfg) > vehicle_utility(best, n_est, cfg)) best = cand;
        REQUIRE(got == best);

        cfg.w_queue = u(0.1, 5.0);
        cfg.w_power = u(0.01, 3.0);
        cfg.rsu_power_default_ref = u(15.0, 30.0);
        cfg.rsu_power_levels.clear();
        int k = 1 + static_cast<int>(gen() % 6);
        double p = u(10.0, 18.0);
        for (int i = 0; i < k; ++i) {
            cfg.rsu_power_levels.push_back(p);
            p += u(0.5, 4.0);
        }
        int q_len = static_cast<int>(gen() % 60);
        double got_p = select_rsu_power(q_len, cfg);
        double best_p = cfg.rsu_power_levels.front();
        for (double cand : cfg.rsu_power_levels)
            if (rsu_utility(cand, q_len, cfg) > rsu_utility(best_p, q_len, cfg)) best_p = cand;
        REQUIRE(got_p == best_p);
    }
}
