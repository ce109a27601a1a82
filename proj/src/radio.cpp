#include "v2x/radio.hpp"

#include <algorithm>
#include <cmath>

namespace v2x {

double tx_duration(const ScenarioConfig& cfg) {
    return cfg.beacon_size * 8.0 / cfg.data_rate + cfg.phy_overhead;
}

double noise_floor_dbm(const ScenarioConfig& cfg) {
    return cfg.noise_density + 10.0 * std::log10(cfg.bandwidth) + cfg.noise_figure;
}

double p_los(double distance, const ScenarioConfig& cfg) {
    if (distance <= cfg.grid_spacing) return 1.0;
    return std::exp(-(distance - cfg.grid_spacing) / cfg.los_decay);
}

LinkSample sample_link(double distance, const ScenarioConfig& cfg, RngStream& los_rng, RngStream& shadow_rng) {
    LinkSample s;
    s.distance = distance;
    s.los = los_rng.uniform() < p_los(distance, cfg);
    double exponent = s.los ? cfg.n_los : cfg.n_nlos;
    double sigma = s.los ? cfg.shadow_los : cfg.shadow_nlos;
    s.shadowing_db = shadow_rng.gaussian(0.0, sigma);
    double d = std::max(distance, 1.0);
    s.path_loss_db = cfg.pl_ref + 10.0 * exponent * std::log10(d) + s.shadowing_db;
    return s;
}

double received_power_dbm(double tx_power_dbm, const LinkSample& link) {
    return tx_power_dbm - link.path_loss_db;
}

double carrier_sense_path_loss_db(double distance, const ScenarioConfig& cfg) {
    double exponent = distance <= cfg.grid_spacing ? cfg.n_los : cfg.n_nlos;
    return cfg.pl_ref + 10.0 * exponent * std::log10(std::max(distance, 1.0));
}

RxDecision evaluate_reception(double signal_power_dbm, double signal_distance,
                              const std::vector<Interferer>& interferers, const ScenarioConfig& cfg,
                              RngStream& los_rng, RngStream& shadow_rng) {
    LinkSample link = sample_link(signal_distance, cfg, los_rng, shadow_rng);
    double prx_dbm = received_power_dbm(signal_power_dbm, link);
    double noise_dbm = noise_floor_dbm(cfg);
    if (prx_dbm - noise_dbm < cfg.snr_th) return RxDecision::SnrFail;

    double denom_mw = dbm_to_mw(noise_dbm);
    for (const auto& intf : interferers) {
        LinkSample il = sample_link(intf.distance, cfg, los_rng, shadow_rng);
        denom_mw += dbm_to_mw(received_power_dbm(intf.power_dbm, il));
    }
    double sir_db = mw_to_dbm(dbm_to_mw(prx_dbm) / denom_mw);
    if (sir_db < cfg.sir_th) return RxDecision::SirFail;
    return RxDecision::Delivered;
}

}  // namespace v2x
