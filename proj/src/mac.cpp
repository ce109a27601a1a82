#include "v2x/mac.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace v2x {

int cw_adapt(int n_est, const ScenarioConfig& cfg) {
    int scaled = cfg.cw_min_base + static_cast<int>(std::floor(n_est / cfg.k_n1) * cfg.k_n2);
    return std::min(cfg.cw_max, scaled);
}

int cw_double(int cw, const ScenarioConfig& cfg) { return std::min(cfg.cw_max, 2 * (cw + 1) - 1); }

void MacState::note_heard(int sender, double now) { heard_log_.emplace_back(sender, now); }

int MacState::density_estimate(double now, double window) {
    double cutoff = now - window;
    while (!heard_log_.empty() && heard_log_.front().second <= cutoff) heard_log_.pop_front();
    std::set<int> distinct;
    for (const auto& [sender, t] : heard_log_) distinct.insert(sender);
    return static_cast<int>(distinct.size());
}

void MacState::await_ack(const BeaconRef& ref, double deadline) {
    awaiting_ack_[{ref.origin, ref.msg}] = deadline;
}

bool MacState::confirm_ack(const BeaconRef& relayed) {
    auto it = awaiting_ack_.find({relayed.origin, relayed.msg});
    if (it == awaiting_ack_.end()) return false;
    awaiting_ack_.erase(it);
    return true;
}

bool MacState::is_awaiting(const BeaconRef& ref) const {
    return awaiting_ack_.count({ref.origin, ref.msg}) != 0;
}

std::optional<double> MacState::ack_deadline(const BeaconRef& ref) const {
    auto it = awaiting_ack_.find({ref.origin, ref.msg});
    if (it == awaiting_ack_.end()) return std::nullopt;
    return it->second;
}

void MacState::clear_ack(const BeaconRef& ref) { awaiting_ack_.erase({ref.origin, ref.msg}); }

}  // namespace v2x
