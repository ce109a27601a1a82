#include "v2x/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace v2x {

void MetricsCollector::on_generation(int origin, std::uint32_t msg, double now,
                                     const std::vector<Vec2>& vehicle_positions) {
    if (cfg_.beacon_lifetime_policy == BeaconLifetimePolicy::NextBeacon) {
        auto prev = latest_msg_.find(origin);
        if (prev != latest_msg_.end()) {
            auto key = std::make_pair(origin, prev->second);
            auto it = open_.find(key);
            if (it != open_.end()) {
                close_record(key, it->second);
                open_.erase(it);
            }
        }
    }
    latest_msg_[origin] = msg;
    ++out_.beacons_generated;

    OpenRecord rec;
    rec.gen_time = now;
    const Vec2& op = vehicle_positions[origin];
    for (int i = 0; i < static_cast<int>(vehicle_positions.size()); ++i) {
        if (i == origin) continue;
        if (distance(op, vehicle_positions[i]) <= cfg_.nominal_range) rec.intended.push_back(i);
    }
    open_[{origin, msg}] = std::move(rec);
}

void MetricsCollector::on_delivery(int origin, std::uint32_t msg, int receiver, double now, DeliveryVia via) {
    auto it = open_.find({origin, msg});
    if (it == open_.end()) return;  // already closed or never tracked
    OpenRecord& rec = it->second;
    if (!std::binary_search(rec.intended.begin(), rec.intended.end(), receiver)) return;
    if (rec.delivered.count(receiver)) return;  // first delivery wins
    rec.delivered[receiver] = {now - rec.gen_time, via};
}

void MetricsCollector::on_adaptation(double now, long node, int observed, double chosen) {
    out_.adaptation.push_back({now, node, observed, chosen});
}

void MetricsCollector::close_record(const std::pair<int, std::uint32_t>& key, OpenRecord& rec) {
    for (int receiver : rec.intended) {
        auto d = rec.delivered.find(receiver);
        ++out_.total_pairs;
        if (d == rec.delivered.end()) {
            ++out_.lost_pairs;
            out_.pair_outcomes.push_back({key.first, key.second, receiver, -1, 0.0});
        } else {
            DeliveryVia via = d->second.second;
            double delay = d->second.first;
            if (via == DeliveryVia::Direct) ++out_.delivered_direct;
            else ++out_.delivered_relay;
            out_.delay_samples.push_back(delay);
            out_.pair_outcomes.push_back({key.first, key.second, receiver, via == DeliveryVia::Direct ? 0 : 1, delay});
        }
    }
}

RunMetrics MetricsCollector::finalize() {
    for (auto& [key, rec] : open_) close_record(key, rec);
    open_.clear();

    out_.blr = out_.total_pairs ? static_cast<double>(out_.lost_pairs) / out_.total_pairs : 0.0;
    if (!out_.delay_samples.empty()) {
        double sum = 0.0;
        for (double d : out_.delay_samples) sum += d;
        out_.mean_delay = sum / out_.delay_samples.size();
    }
    out_.delay_cdf = delay_cdf(out_.delay_samples);
    return std::move(out_);
}

std::vector<std::pair<double, double>> delay_cdf(std::vector<double> samples, double resolution) {
    std::vector<std::pair<double, double>> cdf;
    if (samples.empty()) return cdf;
    std::sort(samples.begin(), samples.end());
    double max_t = samples.back();
    int steps = static_cast<int>(std::ceil(max_t / resolution)) + 1;
    const double n = static_cast<double>(samples.size());
    size_t idx = 0;
    for (int s = 0; s <= steps; ++s) {
        double t = s * resolution;
        while (idx < samples.size() && samples[idx] <= t) ++idx;
        cdf.emplace_back(t, idx / n);
    }
    return cdf;
}

}  // namespace v2x
