#ifndef V2X_GAME_HPP
#define V2X_GAME_HPP

#include <vector>

#include "v2x/config.hpp"

namespace v2x {

/// Freshness benefit minus congestion cost for one candidate beacon rate.
double vehicle_utility(double rate_hz, int n_est, const ScenarioConfig& cfg);

/// Best-response beacon rate: ascending sweep, strict improvement, so ties
/// resolve to the lowest rate. Returns the selected rate in Hz.
double select_beacon_rate(int n_est, const ScenarioConfig& cfg);

/// Queue-drain benefit minus quadratic power cost, in units of the
/// default-power ratio p = P_mW / P_def_mW.
double rsu_utility(double power_dbm, int q_len, const ScenarioConfig& cfg);

/// Best-response RSU power: ascending sweep, ties to the lowest level. dBm.
double select_rsu_power(int q_len, const ScenarioConfig& cfg);

}  // namespace v2x

#endif
