#ifndef V2X_RADIO_HPP
#define V2X_RADIO_HPP

#include <cstdint>
#include <vector>

#include "v2x/config.hpp"
#include "v2x/mobility.hpp"
#include "v2x/rng.hpp"

namespace v2x {

struct LinkSample {
    double distance = 0.0;  // m, clamped to >= 1 before use
    bool los = true;
    double shadowing_db = 0.0;
    double path_loss_db = 0.0;
};

/// Identity of a beacon on the air.
struct BeaconRef {
    int origin = -1;
    std::uint32_t msg = 0;
};

struct TransmissionEvent {
    int tx_id = -1;
    double power_dbm = 0.0;
    double start = 0.0;
    double end = 0.0;
    Vec2 position;  // frozen at start
    BeaconRef beacon;
    bool is_relay = false;
    BeaconRef relayed;  // valid iff is_relay
};

enum class RxDecision { Delivered, SnrFail, SirFail };

/// One interfering transmission as seen by the receiver.
struct Interferer {
    double power_dbm;
    double distance;
};

double tx_duration(const ScenarioConfig& cfg);
double noise_floor_dbm(const ScenarioConfig& cfg);

/// P(LOS): 1 within one grid block, exponential decay beyond.
double p_los(double distance, const ScenarioConfig& cfg);

/// Draw LOS class and shadowing, evaluate log-distance path loss.
LinkSample sample_link(double distance, const ScenarioConfig& cfg, RngStream& los_rng, RngStream& shadow_rng);

double received_power_dbm(double tx_power_dbm, const LinkSample& link);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

/// Deterministic path loss used for carrier sensing: median channel, LOS
/// within one block, NLOS beyond, no shadowing.
double carrier_sense_path_loss_db(double distance, const ScenarioConfig& cfg);

/// SNR/SIR decode decision. Every interferer link is sampled independently
/// and counted at full power (worst case for any time overlap).
RxDecision evaluate_reception(double signal_power_dbm, double signal_distance,
                              const std::vector<Interferer>& interferers, const ScenarioConfig& cfg,
                              RngStream& los_rng, RngStream& shadow_rng);

}  // namespace v2x

#endif
