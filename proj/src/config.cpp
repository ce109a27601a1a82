#include "v2x/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace v2x {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::runtime_error("config parse error: " + key + " = '" + v + "' is not a number");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::runtime_error("config parse error: " + key + " = '" + v + "' is not an integer");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(v);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

std::string fmt_double(double d) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(v[i]);
    }
    return out;
}

struct Field {
    std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

const std::map<std::string, Field>& field_table() {
    static const std::map<std::string, Field> table = [] {
        std::map<std::string, Field> t;
        auto dbl = [&t](const std::string& key, double ScenarioConfig::*m) {
            t[key] = Field{
                [m](ScenarioConfig& c, const std::string& k, const std::string& v) { c.*m = parse_double(k, v); },
                [m](const ScenarioConfig& c) { return fmt_double(c.*m); }};
        };
        auto intf = [&t](const std::string& key, int ScenarioConfig::*m) {
            t[key] = Field{
                [m](ScenarioConfig& c, const std::string& k, const std::string& v) {
                    c.*m = static_cast<int>(parse_int(k, v));
                },
                [m](const ScenarioConfig& c) { return std::to_string(c.*m); }};
        };
        auto list = [&t](const std::string& key, std::vector<double> ScenarioConfig::*m) {
            t[key] = Field{
                [m](ScenarioConfig& c, const std::string& k, const std::string& v) { c.*m = parse_list(k, v); },
                [m](const ScenarioConfig& c) { return fmt_list(c.*m); }};
        };

        dbl("sim_time", &ScenarioConfig::sim_time);
        dbl("area_radius", &ScenarioConfig::area_radius);
        intf("n_vehicles", &ScenarioConfig::n_vehicles);
        intf("n_rsu", &ScenarioConfig::n_rsu);
        dbl("veh_tx_power", &ScenarioConfig::veh_tx_power);
        list("rsu_power_levels", &ScenarioConfig::rsu_power_levels);
        dbl("rsu_power_init", &ScenarioConfig::rsu_power_init);
        dbl("rsu_power_default_ref", &ScenarioConfig::rsu_power_default_ref);
        dbl("beacon_interval_default", &ScenarioConfig::beacon_interval_default);
        list("beacon_rate_set", &ScenarioConfig::beacon_rate_set);
        dbl("bandwidth", &ScenarioConfig::bandwidth);
        dbl("data_rate", &ScenarioConfig::data_rate);
        intf("beacon_size", &ScenarioConfig::beacon_size);
        dbl("phy_overhead", &ScenarioConfig::phy_overhead);
        dbl("noise_density", &ScenarioConfig::noise_density);
        dbl("noise_figure", &ScenarioConfig::noise_figure);
        dbl("pl_ref", &ScenarioConfig::pl_ref);
        dbl("n_los", &ScenarioConfig::n_los);
        dbl("n_nlos", &ScenarioConfig::n_nlos);
        dbl("shadow_los", &ScenarioConfig::shadow_los);
        dbl("shadow_nlos", &ScenarioConfig::shadow_nlos);
        dbl("snr_th", &ScenarioConfig::snr_th);
        dbl("sir_th", &ScenarioConfig::sir_th);
        dbl("slot_time", &ScenarioConfig::slot_time);
        intf("cw_min_base", &ScenarioConfig::cw_min_base);
        intf("cw_max", &ScenarioConfig::cw_max);
        intf("retx_max", &ScenarioConfig::retx_max);
        dbl("k_n1", &ScenarioConfig::k_n1);
        dbl("k_n2", &ScenarioConfig::k_n2);
        dbl("n_est_window", &ScenarioConfig::n_est_window);
        dbl("grid_spacing", &ScenarioConfig::grid_spacing);
        dbl("speed_min", &ScenarioConfig::speed_min);
        dbl("speed_max", &ScenarioConfig::speed_max);
        dbl("p_straight", &ScenarioConfig::p_straight);
        dbl("veh_adapt_interval", &ScenarioConfig::veh_adapt_interval);
        dbl("w_freshness", &ScenarioConfig::w_freshness);
        dbl("w_congestion", &ScenarioConfig::w_congestion);
        dbl("n_scale", &ScenarioConfig::n_scale);
        dbl("rsu_adapt_interval", &ScenarioConfig::rsu_adapt_interval);
        dbl("w_queue", &ScenarioConfig::w_queue);
        dbl("w_power", &ScenarioConfig::w_power);
        dbl("cs_threshold", &ScenarioConfig::cs_threshold);
        dbl("difs", &ScenarioConfig::difs);
        dbl("implicit_ack_wait", &ScenarioConfig::implicit_ack_wait);
        dbl("nominal_range", &ScenarioConfig::nominal_range);
        intf("rsu_queue_cap", &ScenarioConfig::rsu_queue_cap);
        dbl("relay_jitter", &ScenarioConfig::relay_jitter);
        dbl("los_decay", &ScenarioConfig::los_decay);

        t["beacon_lifetime_policy"] = Field{
            [](ScenarioConfig& c, const std::string& k, const std::string& v) {
                if (v == "next-beacon") c.beacon_lifetime_policy = BeaconLifetimePolicy::NextBeacon;
                else if (v == "fixed") c.beacon_lifetime_policy = BeaconLifetimePolicy::Fixed;
                else throw std::runtime_error("config parse error: " + k + " must be 'next-beacon' or 'fixed'");
            },
            [](const ScenarioConfig& c) {
                return std::string(c.beacon_lifetime_policy == BeaconLifetimePolicy::NextBeacon ? "next-beacon"
                                                                                               : "fixed");
            }};
        t["rng_seed"] = Field{
            [](ScenarioConfig& c, const std::string& k, const std::string& v) {
                try {
                    size_t pos = 0;
                    c.rng_seed = std::stoull(v, &pos);
                    if (pos != v.size()) throw std::invalid_argument(v);
                } catch (const std::exception&) {
                    throw std::runtime_error("config parse error: " + k + " = '" + v + "' is not an integer");
                }
            },
            [](const ScenarioConfig& c) { return std::to_string(c.rng_seed); }};
        t["no_interference"] = Field{
            [](ScenarioConfig& c, const std::string& k, const std::string& v) {
                if (v == "true" || v == "1") c.no_interference = true;
                else if (v == "false" || v == "0") c.no_interference = false;
                else throw std::runtime_error("config parse error: " + k + " must be boolean");
            },
            [](const ScenarioConfig& c) { return std::string(c.no_interference ? "true" : "false"); }};
        return t;
    }();
    return table;
}

}  // namespace

ScenarioConfig load_config(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config parse error: line " + std::to_string(lineno) + " has no '='");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        auto it = field_table().find(key);
        if (it == field_table().end())
            throw std::runtime_error("config parse error: unknown key '" + key + "'");
        it->second.set(cfg, key, val);
    }
    auto violations = validate(cfg);
    if (!violations.empty())
        throw std::runtime_error("config constraint violation: " + violations.front().field + ": " +
                                 violations.front().rule);
    return cfg;
}

std::vector<Violation> validate(const ScenarioConfig& c) {
    std::vector<Violation> v;
    auto finite = [&](const char* name, double x) {
        if (!std::isfinite(x)) v.push_back({name, "must be finite"});
    };
    finite("veh_tx_power", c.veh_tx_power);
    finite("rsu_power_init", c.rsu_power_init);
    finite("rsu_power_default_ref", c.rsu_power_default_ref);
    finite("cs_threshold", c.cs_threshold);
    for (double p : c.rsu_power_levels) finite("rsu_power_levels", p);
    if (c.sim_time <= 0) v.push_back({"sim_time", "must be positive"});
    if (c.n_vehicles < 0) v.push_back({"n_vehicles", "must be non-negative"});
    if (c.n_rsu < 0) v.push_back({"n_rsu", "must be non-negative"});
    if (c.speed_min > c.speed_max) v.push_back({"speed_min", "speed_min must not exceed speed_max"});
    if (c.p_straight < 0.0 || c.p_straight > 1.0) v.push_back({"p_straight", "must lie in [0, 1]"});
    if (c.cw_min_base > c.cw_max) v.push_back({"cw_min_base", "cw_min_base must not exceed cw_max"});
    if (c.beacon_rate_set.empty()) v.push_back({"beacon_rate_set", "strategy set must be nonempty"});
    for (double r : c.beacon_rate_set)
        if (r <= 0) {
            v.push_back({"beacon_rate_set", "rates must be strictly positive"});
            break;
        }
    if (c.rsu_power_levels.empty()) v.push_back({"rsu_power_levels", "strategy set must be nonempty"});
    for (size_t i = 1; i < c.rsu_power_levels.size(); ++i)
        if (c.rsu_power_levels[i] < c.rsu_power_levels[i - 1]) {
            v.push_back({"rsu_power_levels", "must be sorted ascending"});
            break;
        }
    if (c.area_radius <= c.grid_spacing) v.push_back({"area_radius", "must exceed grid_spacing"});
    if (c.data_rate <= 0) v.push_back({"data_rate", "must be positive"});
    if (c.bandwidth <= 0) v.push_back({"bandwidth", "must be positive"});
    if (c.slot_time <= 0) v.push_back({"slot_time", "must be positive"});
    if (c.k_n1 <= 0) v.push_back({"k_n1", "must be positive"});
    if (c.n_scale <= 0) v.push_back({"n_scale", "must be positive"});
    if (c.retx_max < 0) v.push_back({"retx_max", "must be non-negative"});
    if (c.rsu_queue_cap < 0) v.push_back({"rsu_queue_cap", "must be non-negative"});
    if (c.relay_jitter < 0) v.push_back({"relay_jitter", "must be non-negative"});
    if (c.los_decay <= 0) v.push_back({"los_decay", "must be positive"});
    if (c.nominal_range <= 0) v.push_back({"nominal_range", "must be positive"});
    return v;
}

std::string serialize(const ScenarioConfig& cfg) {
    std::string out;
    for (const auto& [key, field] : field_table()) {
        out += key;
        out += " = ";
        out += field.get(cfg);
        out += "\n";
    }
    return out;
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    std::string s = serialize(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
    return serialize(a) == serialize(b);
}

}  // namespace v2x
