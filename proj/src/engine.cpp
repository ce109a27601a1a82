#include "v2x/engine.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>

#include "v2x/game.hpp"
#include "v2x/mac.hpp"
#include "v2x/mobility.hpp"
#include "v2x/radio.hpp"
#include "v2x/relay.hpp"
#include "v2x/rng.hpp"

namespace v2x {

void EventQueue::schedule(double now, double at, EventKind kind, int node, std::uint64_t a, std::uint64_t b) {
    if (at < now - 1e-12) throw std::logic_error("event scheduled into the past");
    heap_.push(Event{at, next_seq_++, kind, node, a, b});
}

Event EventQueue::pop() {
    Event e = heap_.top();
    heap_.pop();
    return e;
}

namespace {

constexpr double kMobilityTick = 0.01;  // s
constexpr long kRsuLabelBase = 1000000;

enum class Phase { Idle, WaitChannel, Countdown, Tx };

struct Node {
    int idx = -1;       // position in the node array; also transmitter id
    long label = 0;     // vehicle id, or kRsuLabelBase + k for RSUs
    bool is_rsu = false;
    Vec2 pos;
    VehicleKinematics kin;  // vehicles only
    MacState mac;
    int retx_count = 0;

    // vehicle beaconing
    double beacon_interval = 0.1;
    std::uint32_t next_msg = 0;
    Beacon last_original;

    // RSU state
    RsuQueue queue;
    RsuCounters counters;
    double rsu_power = 23.0;

    // channel access
    Phase phase = Phase::Idle;
    std::optional<Beacon> pending;
    bool pending_is_retx = false;
    bool backoff_drawn = false;
    int backoff_remaining = 0;
    double countdown_anchor = 0.0;
    double fire_time = 0.0;
    std::uint64_t timer_token = 0;
    bool sensed_busy = false;
};

struct InterfererInfo {
    double power_dbm;
    Vec2 pos;
    int tx_idx;
};

struct TxRecord {
    TransmissionEvent ev;
    Beacon beacon;
    bool was_retx = false;
    std::vector<InterfererInfo> interferers;
};

class Simulation {
  public:
    Simulation(const ScenarioConfig& cfg, const RunOptions& opts)
        : cfg_(cfg), opts_(opts), layout_{cfg.grid_spacing, cfg.area_radius}, collector_(cfg) {
        auto violations = validate(cfg_);
        if (!violations.empty())
            throw std::runtime_error("invalid config: " + violations.front().field + ": " +
                                     violations.front().rule);
        tx_dur_ = tx_duration(cfg_);
        cs_threshold_mw_ = dbm_to_mw(cfg_.cs_threshold);
    }

    RunMetrics execute();

  private:
    RngStream& rng(long label, RngPurpose purpose) {
        auto key = std::make_pair(label, static_cast<int>(purpose));
        auto it = streams_.find(key);
        if (it == streams_.end())
            it = streams_.emplace(key, RngStream(cfg_.rng_seed, label, purpose)).first;
        return it->second;
    }

    double align_up(double t) const {
        return std::ceil(t / cfg_.slot_time - 1e-9) * cfg_.slot_time;
    }

    int density(Node& n) { return n.mac.density_estimate(now_, cfg_.n_est_window); }

    void trace_mac(const Node& n, const char* event) {
        if (!opts_.mac_trace) return;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.9g,%ld,%s,%d,%d\n", now_, n.label, event, n.mac.cw_current,
                      n.backoff_remaining);
        *opts_.mac_trace << buf;
    }

    void draw_backoff(Node& n) {
        if (!n.pending_is_retx) n.mac.cw_current = cw_adapt(density(n), cfg_);
        n.backoff_remaining = rng(n.label, RngPurpose::Backoff).uniform_int(0, n.mac.cw_current);
        n.backoff_drawn = true;
        trace_mac(n, "backoff_draw");
    }

    void begin_countdown(Node& n) {
        n.countdown_anchor = align_up(now_ + cfg_.difs);
        n.fire_time = n.countdown_anchor + (n.backoff_drawn ? n.backoff_remaining * cfg_.slot_time : 0.0);
        n.phase = Phase::Countdown;
        ++n.timer_token;
        queue_.schedule(now_, n.fire_time, EventKind::AccessTimer, n.idx, n.timer_token);
    }

    void handle_busy_transition(Node& n) {
        if (n.phase != Phase::Countdown) return;
        if (std::abs(n.fire_time - now_) < 1e-12) return;  // fires this instant: same-slot collision
        if (now_ >= n.countdown_anchor - 1e-12) {
            int elapsed = static_cast<int>(std::floor((now_ - n.countdown_anchor) / cfg_.slot_time + 1e-9));
            n.backoff_remaining = std::max(0, n.backoff_remaining - elapsed);
        }
        if (!n.backoff_drawn) draw_backoff(n);  // immediate access right is lost once deferred
        ++n.timer_token;
        n.phase = Phase::WaitChannel;
        trace_mac(n, "freeze");
    }

    double sensed_power_mw(const Node& n) const {
        double mw = 0.0;
        for (const auto& [serial, rec] : active_) {
            if (rec.ev.tx_id == n.idx) continue;
            double d = distance(n.pos, rec.ev.position);
            mw += dbm_to_mw(rec.ev.power_dbm - carrier_sense_path_loss_db(d, cfg_));
            if (mw >= cs_threshold_mw_) break;
        }
        return mw;
    }

    void refresh_channel() {
        for (auto& n : nodes_) {
            if (n.phase == Phase::Tx) {
                n.sensed_busy = true;
                continue;
            }
            bool busy = !active_.empty() && sensed_power_mw(n) >= cs_threshold_mw_;
            if (busy && !n.sensed_busy) {
                n.sensed_busy = true;
                handle_busy_transition(n);
            } else {
                n.sensed_busy = busy;
            }
        }
        kick_pending();
    }

    void kick_pending() {
        for (auto& n : nodes_) {
            if (n.is_rsu && !n.pending && n.phase == Phase::Idle) {
                auto next = n.queue.next_to_service(now_, cfg_.beacon_interval_default, n.counters);
                if (next) n.pending = *next;
            }
            if (!n.pending || n.phase == Phase::Tx || n.phase == Phase::Countdown) continue;
            if (n.sensed_busy) {
                if (!n.backoff_drawn) draw_backoff(n);
                n.phase = Phase::WaitChannel;
            } else {
                begin_countdown(n);
            }
        }
    }

    void begin_transmission(Node& n) {
        Beacon b = *n.pending;
        n.pending.reset();
        bool was_retx = n.pending_is_retx;
        n.pending_is_retx = false;
        n.backoff_drawn = false;
        n.backoff_remaining = 0;
        n.phase = Phase::Tx;
        n.sensed_busy = true;

        std::uint64_t serial = next_serial_++;
        TxRecord rec;
        rec.ev.tx_id = n.idx;
        rec.ev.power_dbm = n.is_rsu ? n.rsu_power : cfg_.veh_tx_power;
        rec.ev.start = now_;
        rec.ev.end = now_ + tx_dur_;
        rec.ev.position = n.pos;
        rec.ev.beacon = {b.origin, b.msg};
        rec.ev.is_relay = b.is_relay;
        rec.ev.relayed = b.relayed;
        rec.beacon = b;
        rec.was_retx = was_retx;
        for (auto& [s, other] : active_) {
            other.interferers.push_back({rec.ev.power_dbm, rec.ev.position, n.idx});
            rec.interferers.push_back({other.ev.power_dbm, other.ev.position, other.ev.tx_id});
        }
        active_.emplace(serial, std::move(rec));
        ++transmissions_;
        if (!n.is_rsu) {
            auto& count = tx_per_beacon_[{b.origin, b.msg}];
            ++count;
            if (count > max_tx_per_beacon_) max_tx_per_beacon_ = count;
        }
        trace_mac(n, "tx_start");
        queue_.schedule(now_, now_ + tx_dur_, EventKind::TxEnd, n.idx, serial);
        refresh_channel();
    }

    void deliver_to_vehicle(Node& rx, const TxRecord& rec) {
        if (!rec.beacon.is_relay) {
            rx.mac.note_heard(rec.beacon.origin, now_);  // vehicle senders only feed n_est
            collector_.on_delivery(rec.beacon.origin, rec.beacon.msg, static_cast<int>(rx.label), now_,
                                   DeliveryVia::Direct);
        } else if (rec.beacon.relayed.origin == static_cast<int>(rx.label)) {
            if (rx.mac.confirm_ack(rec.beacon.relayed)) {
                rx.retx_count = 0;
                rx.mac.cw_current = cw_adapt(density(rx), cfg_);
                trace_mac(rx, "implicit_ack");
            }
        } else {
            collector_.on_delivery(rec.beacon.relayed.origin, rec.beacon.relayed.msg,
                                   static_cast<int>(rx.label), now_, DeliveryVia::Relay);
        }
    }

    // A decoded relay from another RSU makes this RSU's own copy redundant:
    // drop it from the queue, or abandon it at the MAC if not yet on air.
    void suppress_duplicate_relay(Node& n, const BeaconRef& ref) {
        if (n.queue.remove(ref.origin, ref.msg)) {
            ++n.counters.suppressed;
            return;
        }
        if (n.pending && n.pending->is_relay && n.pending->relayed.origin == ref.origin &&
            n.pending->relayed.msg == ref.msg && n.phase != Phase::Tx) {
            n.pending.reset();
            n.backoff_drawn = false;
            n.backoff_remaining = 0;
            ++n.timer_token;
            n.phase = Phase::Idle;
            ++n.counters.suppressed;
        }
    }

    void handle_tx_end(const Event& e) {
        auto it = active_.find(e.a);
        if (it == active_.end()) throw std::logic_error("tx_end without active record");
        TxRecord rec = std::move(it->second);
        active_.erase(it);

        std::vector<Interferer> interferers;
        for (auto& n : nodes_) {
            if (n.idx == rec.ev.tx_id) continue;
            double d = distance(n.pos, rec.ev.position);
            interferers.clear();
            if (!cfg_.no_interference) {
                for (const auto& info : rec.interferers)
                    interferers.push_back({info.power_dbm, distance(n.pos, info.pos)});
            }
            RxDecision decision =
                evaluate_reception(rec.ev.power_dbm, d, interferers, cfg_, rng(n.label, RngPurpose::Los),
                                   rng(n.label, RngPurpose::Shadowing));
            if (decision == RxDecision::SnrFail) {
                ++rx_snr_fail_;
                continue;
            }
            if (decision == RxDecision::SirFail) {
                ++rx_sir_fail_;
                continue;
            }
            ++rx_delivered_;
            if (!n.is_rsu) {
                deliver_to_vehicle(n, rec);
            } else if (!rec.beacon.is_relay) {
                n.mac.note_heard(rec.beacon.origin, now_);
                // random forwarding delay so co-triggered RSUs serialize and
                // can suppress each other's duplicate relays
                double eligible = now_ + rng(n.label, RngPurpose::Backoff).uniform(0.0, cfg_.relay_jitter);
                std::uint64_t before = n.counters.enqueued;
                n.queue.on_rsu_receive(rec.beacon, now_, cfg_.rsu_queue_cap, n.counters, eligible);
                if (n.counters.enqueued != before && eligible > now_)
                    queue_.schedule(now_, eligible, EventKind::RelayKick, n.idx);
            } else {
                suppress_duplicate_relay(n, rec.beacon.relayed);
            }
        }

        Node& tx = nodes_[rec.ev.tx_id];
        tx.phase = Phase::Idle;
        trace_mac(tx, "tx_end");
        if (!tx.is_rsu) {
            if (!rec.was_retx) {
                // first attempt: arm the implicit-ACK timer
                tx.mac.await_ack(rec.ev.beacon, now_ + cfg_.implicit_ack_wait);
                queue_.schedule(now_, now_ + cfg_.implicit_ack_wait, EventKind::AckDeadline, tx.idx,
                                rec.ev.beacon.msg);
            }
            if (tx.pending) draw_backoff(tx);  // a newer own beacon arrived mid-transmission
        } else {
            ++tx.counters.forwarded;
            if (!tx.pending) {
                auto next = tx.queue.next_to_service(now_, cfg_.beacon_interval_default, tx.counters);
                if (next) tx.pending = *next;
            }
            if (tx.pending) draw_backoff(tx);  // post-transmission access always backs off
        }
        refresh_channel();
    }

    void handle_beacon_gen(const Event& e) {
        Node& n = nodes_[e.node];
        std::uint32_t msg = n.next_msg++;
        Beacon b;
        b.origin = static_cast<int>(n.label);
        b.msg = msg;
        b.generation_time = now_;
        b.payload_bytes = cfg_.beacon_size;

        std::vector<Vec2> positions(n_vehicles_);
        for (int i = 0; i < n_vehicles_; ++i) positions[i] = nodes_[i].pos;
        collector_.on_generation(b.origin, msg, now_, positions);

        // freshest-state semantics: a newer beacon supersedes anything older
        n.pending = b;
        n.pending_is_retx = false;
        n.backoff_drawn = false;
        n.retx_count = 0;
        n.mac.clear_acks();
        n.last_original = b;
        if (n.phase == Phase::Countdown) {
            // restart access for the superseding beacon
            ++n.timer_token;
            n.phase = Phase::Idle;
        }
        kick_pending();
        queue_.schedule(now_, now_ + n.beacon_interval, EventKind::BeaconGen, n.idx);
    }

    void handle_ack_deadline(const Event& e) {
        Node& n = nodes_[e.node];
        BeaconRef ref{static_cast<int>(n.label), static_cast<std::uint32_t>(e.a)};
        auto deadline = n.mac.ack_deadline(ref);
        if (!deadline || std::abs(*deadline - now_) > 1e-12) return;  // acknowledged or superseded
        n.mac.clear_ack(ref);
        if (n.retx_count < cfg_.retx_max) {
            n.mac.cw_current = cw_double(n.mac.cw_current, cfg_);
            ++n.retx_count;
            if (!n.pending) {
                n.pending = n.last_original;
                n.pending_is_retx = true;
                draw_backoff(n);
            }
            n.mac.await_ack(ref, now_ + cfg_.implicit_ack_wait);
            queue_.schedule(now_, now_ + cfg_.implicit_ack_wait, EventKind::AckDeadline, n.idx, ref.msg);
            trace_mac(n, "ack_timeout");
            kick_pending();
        } else {
            n.mac.cw_current = cw_adapt(density(n), cfg_);
            trace_mac(n, "retx_exhausted");
        }
    }

    void handle_mobility_tick() {
        for (int i = 0; i < n_vehicles_; ++i) {
            Node& n = nodes_[i];
            n.kin = step(n.kin, kMobilityTick, layout_, cfg_.p_straight, rng(n.label, RngPurpose::Turn));
            n.pos = n.kin.position;
            if (opts_.mobility_trace) {
                char buf[96];
                std::snprintf(buf, sizeof(buf), "%.9g,%ld,%.9g,%.9g\n", now_, n.label, n.pos.x, n.pos.y);
                *opts_.mobility_trace << buf;
            }
        }
        refresh_channel();
        queue_.schedule(now_, now_ + kMobilityTick, EventKind::MobilityTick, -1);
    }

    void handle_veh_adapt(const Event& e) {
        Node& n = nodes_[e.node];
        int n_est = density(n);
        double rate = select_beacon_rate(n_est, cfg_);
        n.beacon_interval = 1.0 / rate;
        collector_.on_adaptation(now_, n.label, n_est, rate);
        queue_.schedule(now_, now_ + cfg_.veh_adapt_interval, EventKind::VehAdapt, n.idx);
    }

    void handle_rsu_adapt(const Event& e) {
        Node& n = nodes_[e.node];
        int q_len = n.queue.length() + (n.pending ? 1 : 0) + (n.phase == Phase::Tx ? 1 : 0);
        n.rsu_power = select_rsu_power(q_len, cfg_);
        collector_.on_adaptation(now_, n.label, q_len, n.rsu_power);
        queue_.schedule(now_, now_ + cfg_.rsu_adapt_interval, EventKind::RsuAdapt, n.idx);
    }

    const ScenarioConfig& cfg_;
    RunOptions opts_;
    GridLayout layout_;
    MetricsCollector collector_;
    EventQueue queue_;
    std::vector<Node> nodes_;
    int n_vehicles_ = 0;
    std::map<std::pair<long, int>, RngStream> streams_;
    std::map<std::uint64_t, TxRecord> active_;
    std::uint64_t next_serial_ = 0;
    double now_ = 0.0;
    double tx_dur_ = 0.0;
    double cs_threshold_mw_ = 0.0;
    std::uint64_t transmissions_ = 0;
    std::uint64_t rx_delivered_ = 0, rx_snr_fail_ = 0, rx_sir_fail_ = 0;
    std::map<std::pair<int, std::uint32_t>, std::uint64_t> tx_per_beacon_;
    std::uint64_t max_tx_per_beacon_ = 0;
};

RunMetrics Simulation::execute() {
    n_vehicles_ = cfg_.n_vehicles;
    auto kinematics = spawn_vehicles(cfg_, rng(-1, RngPurpose::Placement));
    for (int i = 0; i < n_vehicles_; ++i) {
        Node n;
        n.idx = i;
        n.label = i;
        n.kin = kinematics[i];
        n.pos = n.kin.position;
        n.beacon_interval = cfg_.beacon_interval_default;
        n.mac.cw_current = cfg_.cw_min_base;
        nodes_.push_back(std::move(n));
    }
    auto rsu_pos = rsu_positions(cfg_);
    for (int k = 0; k < cfg_.n_rsu; ++k) {
        Node n;
        n.idx = n_vehicles_ + k;
        n.label = kRsuLabelBase + k;
        n.is_rsu = true;
        n.pos = rsu_pos[k];
        n.rsu_power = cfg_.rsu_power_init;
        n.mac.cw_current = cfg_.cw_min_base;
        nodes_.push_back(std::move(n));
    }

    // desynchronized start phases, one per node and loop
    for (auto& n : nodes_) {
        auto& phase_rng = rng(n.label, RngPurpose::Phase);
        if (!n.is_rsu) {
            queue_.schedule(0.0, phase_rng.uniform(0.0, cfg_.beacon_interval_default), EventKind::BeaconGen,
                            n.idx);
            queue_.schedule(0.0, phase_rng.uniform(0.0, cfg_.veh_adapt_interval), EventKind::VehAdapt, n.idx);
        } else {
            queue_.schedule(0.0, phase_rng.uniform(0.0, cfg_.rsu_adapt_interval), EventKind::RsuAdapt, n.idx);
        }
    }
    if (n_vehicles_ > 0) queue_.schedule(0.0, kMobilityTick, EventKind::MobilityTick, -1);
    queue_.schedule(0.0, cfg_.sim_time, EventKind::SimEnd, -1);

    while (!queue_.empty()) {
        Event e = queue_.pop();
        if (e.time > cfg_.sim_time) break;
        now_ = e.time;
        switch (e.kind) {
            case EventKind::SimEnd: goto done;
            case EventKind::BeaconGen: handle_beacon_gen(e); break;
            case EventKind::TxEnd: handle_tx_end(e); break;
            case EventKind::AccessTimer: {
                Node& n = nodes_[e.node];
                if (e.a == n.timer_token && n.phase == Phase::Countdown) begin_transmission(n);
                break;
            }
            case EventKind::MobilityTick: handle_mobility_tick(); break;
            case EventKind::VehAdapt: handle_veh_adapt(e); break;
            case EventKind::RsuAdapt: handle_rsu_adapt(e); break;
            case EventKind::AckDeadline: handle_ack_deadline(e); break;
            case EventKind::RelayKick: refresh_channel(); break;
        }
    }
done:
    RunMetrics m = collector_.finalize();
    m.transmissions = transmissions_;
    m.rx_delivered = rx_delivered_;
    m.rx_snr_fail = rx_snr_fail_;
    m.rx_sir_fail = rx_sir_fail_;
    m.max_tx_per_beacon = max_tx_per_beacon_;
    for (auto& n : nodes_) {
        if (n.is_rsu) {
            m.rsu_counters.push_back(n.counters);
            m.rsu_power_final.push_back(n.rsu_power);
        }
    }
    m.seed = cfg_.rng_seed;
    m.config_hash = config_hash(cfg_);
    m.config_echo = serialize(cfg_);
    return m;
}

}  // namespace

RunMetrics run(const ScenarioConfig& cfg, const RunOptions& opts) {
    Simulation sim(cfg, opts);
    return sim.execute();
}

}  // namespace v2x
