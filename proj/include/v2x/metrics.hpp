#ifndef V2X_METRICS_HPP
#define V2X_METRICS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "v2x/config.hpp"
#include "v2x/mobility.hpp"
#include "v2x/relay.hpp"

namespace v2x {

enum class DeliveryVia { Direct, Relay };

/// Terminal outcome of one (beacon, intended receiver) pair. via < 0 => lost.
struct PairOutcome {
    int origin;
    std::uint32_t msg;
    int receiver;
    int via;       // 0 direct, 1 relay, -1 lost
    double delay;  // valid iff via >= 0
};

struct AdaptationSample {
    double time;
    long node;      // vehicle id or RSU label
    int observed;   // n_est for vehicles, q_len for RSUs
    double chosen;  // rate in Hz or power in dBm
};

struct RunMetrics {
    double blr = 0.0;
    double mean_delay = 0.0;
    std::uint64_t total_pairs = 0;
    std::uint64_t lost_pairs = 0;
    std::uint64_t delivered_direct = 0;
    std::uint64_t delivered_relay = 0;
    std::vector<double> delay_samples;
    std::vector<std::pair<double, double>> delay_cdf;  // (t, F) on a 1 ms grid
    std::vector<AdaptationSample> adaptation;
    std::vector<RsuCounters> rsu_counters;
    std::vector<double> rsu_power_final;
    std::uint64_t beacons_generated = 0;
    std::uint64_t transmissions = 0;
    std::uint64_t rx_delivered = 0;
    std::uint64_t rx_snr_fail = 0;
    std::uint64_t rx_sir_fail = 0;
    std::uint64_t max_tx_per_beacon = 0;  // air-time audit: originals only
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string config_echo;
    std::vector<PairOutcome> pair_outcomes;  // raw per-pair dump
};

/// Per-run delivery bookkeeping. Pairs open at generation, close at first
/// delivery or at the loss horizon (origin's next beacon, or sim end).
class MetricsCollector {
  public:
    explicit MetricsCollector(const ScenarioConfig& cfg) : cfg_(cfg) {}

    /// Register a fresh original beacon; intended receivers are the vehicles
    /// within nominal_range of the origin right now (closed ball, origin
    /// excluded). Closes the origin's previous record under the next-beacon
    /// horizon.
    void on_generation(int origin, std::uint32_t msg, double now, const std::vector<Vec2>& vehicle_positions);

    /// First delivery wins; duplicates and non-intended receivers are ignored.
    void on_delivery(int origin, std::uint32_t msg, int receiver, double now, DeliveryVia via);

    void on_adaptation(double now, long node, int observed, double chosen);

    /// Close everything still open and compute summary metrics.
    RunMetrics finalize();

  private:
    struct OpenRecord {
        double gen_time;
        std::vector<int> intended;
        std::map<int, std::pair<double, DeliveryVia>> delivered;
    };

    void close_record(const std::pair<int, std::uint32_t>& key, OpenRecord& rec);

    const ScenarioConfig& cfg_;
    std::map<std::pair<int, std::uint32_t>, OpenRecord> open_;
    std::map<int, std::uint32_t> latest_msg_;
    RunMetrics out_;
};

/// Empirical CDF of delay samples on a fixed grid.
std::vector<std::pair<double, double>> delay_cdf(std::vector<double> samples, double resolution = 1e-3);

}  // namespace v2x

#endif
