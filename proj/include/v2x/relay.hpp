#ifndef V2X_RELAY_HPP
#define V2X_RELAY_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <set>

#include "v2x/mac.hpp"
#include "v2x/mobility.hpp"

namespace v2x {

struct RsuCounters {
    std::uint64_t enqueued = 0;
    std::uint64_t forwarded = 0;
    std::uint64_t dropped_full = 0;
    std::uint64_t dropped_stale = 0;
    std::uint64_t suppressed = 0;  // duplicate relay overheard from another RSU
};

/// RSU forwarding state: dedupe, bounded FIFO, single forwarding attempt.
class RsuQueue {
  public:
    struct Item {
        Beacon beacon;       // relay copy, original identifiers preserved
        double enqueue_time;
        double eligible_time;
    };

    /// Enqueue a relay copy of an original vehicle beacon. Relays are never
    /// re-enqueued; duplicates and overflow are dropped. eligible_time < 0
    /// means eligible immediately.
    void on_rsu_receive(const Beacon& beacon, double now, int cap, RsuCounters& counters,
                        double eligible_time = -1.0);

    /// Pop the next serviceable item, discarding entries older than
    /// stale_after at service time.
    std::optional<Beacon> next_to_service(double now, double stale_after, RsuCounters& counters);

    /// Drop a queued copy of (origin, msg) after overhearing another RSU relay
    /// it. Returns true if an item was removed.
    bool remove(int origin, std::uint32_t msg);

    int length() const { return static_cast<int>(queue_.size()); }

  private:
    std::deque<Item> queue_;
    std::set<std::pair<int, std::uint32_t>> seen_;
};

}  // namespace v2x

#endif
