#include "v2x/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "v2x/engine.hpp"

namespace v2x {

namespace {

std::string g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct Task {
    int n_vehicles;
    double radius;
    std::uint64_t seed;
};

struct TaskResult {
    std::optional<RunMetrics> metrics;
    std::string error;
    std::string mobility_trace;
    std::string mac_trace;
};

void mean_std(const std::vector<double>& xs, double& mean, double& stddev) {
    mean = 0.0;
    stddev = 0.0;
    if (xs.empty()) return;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    stddev = xs.size() > 1 ? std::sqrt(var / (xs.size() - 1)) : 0.0;
}

}  // namespace

std::string format_run_summary(const RunMetrics& m, const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "run_summary\n";
    out << "config_hash = " << m.config_hash << "\n";
    out << "seed = " << m.seed << "\n";
    out << "blr = " << g9(m.blr) << "\n";
    out << "mean_delay = " << g9(m.mean_delay) << "\n";
    out << "total_pairs = " << m.total_pairs << "\n";
    out << "lost_pairs = " << m.lost_pairs << "\n";
    out << "delivered_direct = " << m.delivered_direct << "\n";
    out << "delivered_relay = " << m.delivered_relay << "\n";
    out << "beacons_generated = " << m.beacons_generated << "\n";
    out << "transmissions = " << m.transmissions << "\n";
    out << "rx_delivered = " << m.rx_delivered << "\n";
    out << "rx_snr_fail = " << m.rx_snr_fail << "\n";
    out << "rx_sir_fail = " << m.rx_sir_fail << "\n";
    for (size_t k = 0; k < m.rsu_counters.size(); ++k) {
        const auto& c = m.rsu_counters[k];
        out << "rsu_" << k << " = enqueued:" << c.enqueued << " forwarded:" << c.forwarded
            << " dropped_full:" << c.dropped_full << " dropped_stale:" << c.dropped_stale
            << " suppressed:" << c.suppressed << " power_final:" << g9(m.rsu_power_final[k]) << "\n";
    }
    out << "[config]\n" << m.config_echo;
    return out.str();
}

SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec, const std::string& out_dir,
                      std::ostream* log) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::vector<Task> tasks;
    for (double radius : spec.radii)
        for (int count : spec.vehicle_counts)
            for (std::uint64_t seed : spec.seeds) tasks.push_back({count, radius, seed});

    std::vector<TaskResult> results(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            ScenarioConfig cfg = base;
            cfg.n_vehicles = t.n_vehicles;
            cfg.area_radius = t.radius;
            cfg.rng_seed = t.seed;
            try {
                std::ostringstream mob, mac;
                RunOptions opts;
                if (spec.trace_mobility) opts.mobility_trace = &mob;
                if (spec.trace_mac) opts.mac_trace = &mac;
                results[i].metrics = run(cfg, opts);
                results[i].mobility_trace = mob.str();
                results[i].mac_trace = mac.str();
            } catch (const std::exception& ex) {
                results[i].error = ex.what();
            }
        }
    };
    int jobs = std::max(1, spec.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::ofstream blr_file(fs::path(out_dir) / "blr_summary.csv");
    blr_file << "radius,n_vehicles,seed,blr,mean_delay\n";
    std::ofstream adapt_file(fs::path(out_dir) / "adaptation_trace.csv");
    adapt_file << "radius,n_vehicles,seed,time,node,observed,chosen\n";

    std::map<std::pair<double, int>, std::vector<double>> cell_blr, cell_delay;
    std::map<std::pair<double, int>, std::vector<double>> cell_delays_raw;
    std::map<std::pair<double, int>, int> cell_failed;

    SweepResult out;
    for (size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        auto key = std::make_pair(t.radius, t.n_vehicles);
        if (!results[i].metrics) {
            out.any_failed = true;
            ++cell_failed[key];
            if (log) *log << "run failed (radius=" << t.radius << " n=" << t.n_vehicles
                          << " seed=" << t.seed << "): " << results[i].error << "\n";
            continue;
        }
        const RunMetrics& m = *results[i].metrics;
        blr_file << g9(t.radius) << "," << t.n_vehicles << "," << t.seed << "," << g9(m.blr) << ","
                 << g9(m.mean_delay) << "\n";
        for (const auto& a : m.adaptation)
            adapt_file << g9(t.radius) << "," << t.n_vehicles << "," << t.seed << "," << g9(a.time) << ","
                       << a.node << "," << a.observed << "," << g9(a.chosen) << "\n";
        cell_blr[key].push_back(m.blr);
        cell_delay[key].push_back(m.mean_delay);
        auto& raw = cell_delays_raw[key];
        raw.insert(raw.end(), m.delay_samples.begin(), m.delay_samples.end());

        char name[128];
        std::snprintf(name, sizeof(name), "run_summary_%g_%d_%llu.txt", t.radius, t.n_vehicles,
                      static_cast<unsigned long long>(t.seed));
        ScenarioConfig cfg = base;
        cfg.n_vehicles = t.n_vehicles;
        cfg.area_radius = t.radius;
        cfg.rng_seed = t.seed;
        std::ofstream(fs::path(out_dir) / name) << format_run_summary(m, cfg);

        if (spec.trace_mobility) {
            std::snprintf(name, sizeof(name), "trace_mobility_%g_%d_%llu.csv", t.radius, t.n_vehicles,
                          static_cast<unsigned long long>(t.seed));
            std::ofstream f(fs::path(out_dir) / name);
            f << "time,vehicle_id,x,y\n" << results[i].mobility_trace;
        }
        if (spec.trace_mac) {
            std::snprintf(name, sizeof(name), "trace_mac_%g_%d_%llu.csv", t.radius, t.n_vehicles,
                          static_cast<unsigned long long>(t.seed));
            std::ofstream f(fs::path(out_dir) / name);
            f << "time,node,event,cw,backoff\n" << results[i].mac_trace;
        }
    }

    std::ofstream cells_file(fs::path(out_dir) / "sweep_cells.csv");
    cells_file << "radius,n_vehicles,runs,failed,blr_mean,blr_std,delay_mean,delay_std\n";
    for (auto& [key, blrs] : cell_blr) {
        CellStats cs;
        cs.radius = key.first;
        cs.n_vehicles = key.second;
        mean_std(blrs, cs.blr_mean, cs.blr_std);
        mean_std(cell_delay[key], cs.delay_mean, cs.delay_std);
        cs.runs_ok = static_cast<int>(blrs.size());
        cs.runs_failed = cell_failed.count(key) ? cell_failed[key] : 0;
        out.cells.push_back(cs);
        cells_file << g9(cs.radius) << "," << cs.n_vehicles << "," << cs.runs_ok << "," << cs.runs_failed
                   << "," << g9(cs.blr_mean) << "," << g9(cs.blr_std) << "," << g9(cs.delay_mean) << ","
                   << g9(cs.delay_std) << "\n";

        char name[128];
        std::snprintf(name, sizeof(name), "delay_cdf_%g_%d.csv", key.first, key.second);
        std::ofstream cdf_file(fs::path(out_dir) / name);
        cdf_file << "t,F\n";
        for (auto& [t, f] : delay_cdf(cell_delays_raw[key])) cdf_file << g9(t) << "," << g9(f) << "\n";
    }
    // cells that failed entirely still need a row
    for (auto& [key, nfail] : cell_failed) {
        if (cell_blr.count(key)) continue;
        CellStats cs;
        cs.radius = key.first;
        cs.n_vehicles = key.second;
        cs.runs_failed = nfail;
        out.cells.push_back(cs);
        cells_file << g9(cs.radius) << "," << cs.n_vehicles << ",0," << nfail << ",nan,nan,nan,nan\n";
    }
    return out;
}

}  // namespace v2x
