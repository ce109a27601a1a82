#ifndef V2X_MAC_HPP
#define V2X_MAC_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <utility>

#include "v2x/config.hpp"
#include "v2x/radio.hpp"

namespace v2x {

/// A broadcast message instance. Relay copies keep the original identifiers.
struct Beacon {
    int origin = -1;
    std::uint32_t msg = 0;
    double generation_time = 0.0;
    int payload_bytes = 300;
    bool is_relay = false;
    BeaconRef relayed;  // valid iff is_relay
};

int cw_adapt(int n_est, const ScenarioConfig& cfg);

/// Density estimator plus retransmission bookkeeping for one node.
class MacState {
  public:
    int cw_current = 15;
    int retx_count = 0;

    /// Record a decoded beacon from a vehicle sender (RSUs are excluded from
    /// the density estimate by the caller).
    void note_heard(int sender, double now);

    /// Distinct vehicle senders heard in (now - window, now].
    int density_estimate(double now, double window);

    // --- implicit-ACK bookkeeping (original vehicle beacons only) ---
    void await_ack(const BeaconRef& ref, double deadline);
    /// True iff this relay matches an awaited beacon of ours; clears the entry.
    bool confirm_ack(const BeaconRef& relayed);
    bool is_awaiting(const BeaconRef& ref) const;
    std::optional<double> ack_deadline(const BeaconRef& ref) const;
    void clear_ack(const BeaconRef& ref);
    void clear_acks() { awaiting_ack_.clear(); }

  private:
    std::deque<std::pair<int, double>> heard_log_;  // (sender, hear time), time-ordered
    std::map<std::pair<int, std::uint32_t>, double> awaiting_ack_;
};

/// Binary exponential backoff step: 2*(cw+1)-1, capped.
int cw_double(int cw, const ScenarioConfig& cfg);

}  // namespace v2x

#endif
