#include "v2x/game.hpp"

#include <cmath>
#include <limits>

namespace v2x {

double vehicle_utility(double rate_hz, int n_est, const ScenarioConfig& cfg) {
    double density_factor = n_est / cfg.n_scale;
    return cfg.w_freshness * rate_hz - cfg.w_congestion * rate_hz * std::pow(density_factor, 1.5);
}

double select_beacon_rate(int n_est, const ScenarioConfig& cfg) {
    double best_rate = cfg.beacon_rate_set.front();
    double best_utility = -std::numeric_limits<double>::infinity();
    for (double rate : cfg.beacon_rate_set) {
        double u = vehicle_utility(rate, n_est, cfg);
        if (u > best_utility) {
            best_utility = u;
            best_rate = rate;
        }
    }
    return best_rate;
}

double rsu_utility(double power_dbm, int q_len, const ScenarioConfig& cfg) {
    double p = std::pow(10.0, (power_dbm - cfg.rsu_power_default_ref) / 10.0);
    return cfg.w_queue * q_len * p - cfg.w_power * p * p;
}

double select_rsu_power(int q_len, const ScenarioConfig& cfg) {
    double best_power = cfg.rsu_power_levels.front();
    double best_utility = -std::numeric_limits<double>::infinity();
    for (double power : cfg.rsu_power_levels) {
        double u = rsu_utility(power, q_len, cfg);
        if (u > best_utility) {
            best_utility = u;
            best_power = power;
        }
    }
    return best_power;
}

}  // namespace v2x
