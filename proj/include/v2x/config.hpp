#ifndef V2X_CONFIG_HPP
#define V2X_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace v2x {

enum class BeaconLifetimePolicy { NextBeacon, Fixed };

/// Complete parameter set for one simulation run. Immutable after load.
struct ScenarioConfig {
    // general
    double sim_time = 60.0;          // s
    double area_radius = 250.0;      // m
    int n_vehicles = 80;
    int n_rsu = 4;

    // PHY
    double veh_tx_power = 20.0;      // dBm
    std::vector<double> rsu_power_levels = {18.0, 21.0, 23.0, 25.0, 27.0};  // dBm, ascending
    double rsu_power_init = 23.0;    // dBm
    double rsu_power_default_ref = 23.0;  // dBm, reference for the power-cost ratio
    double beacon_interval_default = 0.1;  // s
    std::vector<double> beacon_rate_set = {2.0, 5.0, 10.0};  // Hz
    double bandwidth = 1.08e6;       // Hz
    double data_rate = 6e6;          // bit/s
    int beacon_size = 300;           // bytes
    double phy_overhead = 20e-6;     // s
    double noise_density = -174.0;   // dBm/Hz
    double noise_figure = 5.0;       // dB

    // channel
    double pl_ref = 47.85;           // dB at 1 m
    double n_los = 1.9;
    double n_nlos = 2.5;
    double shadow_los = 2.0;         // dB std
    double shadow_nlos = 4.0;        // dB std
    double snr_th = 3.3;             // dB
    double sir_th = 5.0;             // dB

    // MAC
    double slot_time = 10e-6;        // s
    int cw_min_base = 15;            // slots
    int cw_max = 1023;               // slots
    int retx_max = 3;
    double k_n1 = 2.5;
    double k_n2 = 3.0;
    double n_est_window = 1.0;       // s

    // mobility
    double grid_spacing = 60.0;      // m
    double speed_min = 5.0;          // m/s
    double speed_max = 25.0;         // m/s
    double p_straight = 0.70;

    // vehicle rate game
    double veh_adapt_interval = 1.0; // s
    double w_freshness = 1.0;
    double w_congestion = 0.2;
    double n_scale = 15.0;           // vehicles

    // RSU power game
    double rsu_adapt_interval = 0.5; // s
    double w_queue = 1.0;
    double w_power = 0.5;

    // parameters the reference model leaves open
    double cs_threshold = -85.0;     // dBm carrier-sense level
    double difs = 50e-6;             // s
    double implicit_ack_wait = 0.02; // s
    double nominal_range = 200.0;    // m, intended-receiver radius
    int rsu_queue_cap = 100;
    double relay_jitter = 0.018;     // s, random forwarding delay bound per queued relay;
                                     // kept below implicit_ack_wait so the first relay
                                     // still beats the originator's retransmission timer
    double los_decay = 100.0;        // m, P_LOS decay constant past one block
    BeaconLifetimePolicy beacon_lifetime_policy = BeaconLifetimePolicy::NextBeacon;
    std::uint64_t rng_seed = 1;

    // diagnostic switch: force empty interferer sets
    bool no_interference = false;
};

struct Violation {
    std::string field;
    std::string rule;
};

/// Parse flat key-value text ("key = value", '#' comments). Unknown keys and
/// invariant violations throw std::runtime_error naming the offender.
ScenarioConfig load_config(const std::string& text);

/// Invariant check; empty list iff the config is valid.
std::vector<Violation> validate(const ScenarioConfig& cfg);

/// Emit the flat key-value form; load_config(serialize(c)) == c.
std::string serialize(const ScenarioConfig& cfg);

/// FNV-1a over the serialized form, embedded in outputs for provenance.
std::uint64_t config_hash(const ScenarioConfig& cfg);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace v2x

#endif
