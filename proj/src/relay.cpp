#include "v2x/relay.hpp"

namespace v2x {

void RsuQueue::on_rsu_receive(const Beacon& beacon, double now, int cap, RsuCounters& counters,
                              double eligible_time) {
    if (beacon.is_relay) return;  // single-hop relaying only
    auto key = std::make_pair(beacon.origin, beacon.msg);
    if (seen_.count(key)) return;
    if (static_cast<int>(queue_.size()) >= cap) {
        ++counters.dropped_full;
        return;
    }
    seen_.insert(key);
    Beacon relay = beacon;
    relay.is_relay = true;
    relay.relayed = BeaconRef{beacon.origin, beacon.msg};
    queue_.push_back({relay, now, eligible_time < 0.0 ? now : eligible_time});
    ++counters.enqueued;
}

bool RsuQueue::remove(int origin, std::uint32_t msg) {
    for (auto it = queue_.begin(); it != queue_.end(); ++it)
        if (it->beacon.relayed.origin == origin && it->beacon.relayed.msg == msg) {
            queue_.erase(it);
            return true;
        }
    return false;
}

std::optional<Beacon> RsuQueue::next_to_service(double now, double stale_after, RsuCounters& counters) {
    while (!queue_.empty()) {
        Item item = queue_.front();
        if (now - item.enqueue_time > stale_after) {
            queue_.pop_front();
            ++counters.dropped_stale;
            continue;
        }
        if (item.eligible_time > now) return std::nullopt;  // forwarding delay not yet elapsed
        queue_.pop_front();
        return item.beacon;
    }
    return std::nullopt;
}

}  // namespace v2x
