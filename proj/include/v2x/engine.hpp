#ifndef V2X_ENGINE_HPP
#define V2X_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <queue>
#include <vector>

#include "v2x/config.hpp"
#include "v2x/metrics.hpp"

namespace v2x {

enum class EventKind : int {
    BeaconGen,
    TxEnd,
    AccessTimer,
    MobilityTick,
    VehAdapt,
    RsuAdapt,
    AckDeadline,
    RelayKick,
    SimEnd,
};

struct Event {
    double time;
    std::uint64_t seq;  // tiebreaker: earlier-scheduled first
    EventKind kind;
    int node;
    std::uint64_t a = 0;  // kind-specific (token, tx serial, msg id)
    std::uint64_t b = 0;
};

/// (time, seq)-ordered queue; scheduling into the past throws.
class EventQueue {
  public:
    void schedule(double now, double at, EventKind kind, int node, std::uint64_t a = 0, std::uint64_t b = 0);
    bool empty() const { return heap_.empty(); }
    const Event& top() const { return heap_.top(); }
    Event pop();

  private:
    struct Later {
        bool operator()(const Event& x, const Event& y) const {
            if (x.time != y.time) return x.time > y.time;
            return x.seq > y.seq;
        }
    };
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

struct RunOptions {
    std::ostream* mobility_trace = nullptr;  // time,vehicle_id,x,y
    std::ostream* mac_trace = nullptr;       // time,node,event,cw,backoff
};

/// Execute one full simulation run. Output is a pure function of
/// (config, rng_seed).
RunMetrics run(const ScenarioConfig& cfg, const RunOptions& opts = {});

}  // namespace v2x

#endif
