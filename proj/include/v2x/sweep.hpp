#ifndef V2X_SWEEP_HPP
#define V2X_SWEEP_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "v2x/config.hpp"
#include "v2x/metrics.hpp"

namespace v2x {

struct SweepSpec {
    std::vector<int> vehicle_counts;
    std::vector<double> radii;
    std::vector<std::uint64_t> seeds;
    bool trace_mobility = false;
    bool trace_mac = false;
    int jobs = 1;
};

struct CellStats {
    double radius;
    int n_vehicles;
    double blr_mean = 0.0;
    double blr_std = 0.0;
    double delay_mean = 0.0;
    double delay_std = 0.0;
    int runs_ok = 0;
    int runs_failed = 0;
};

struct SweepResult {
    std::vector<CellStats> cells;
    bool any_failed = false;
};

/// Run every (count, radius, seed) combination, write the CSV/summary files
/// into out_dir, and return per-cell aggregates. A failed run aborts only its
/// cell and is flagged in the output.
SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec, const std::string& out_dir,
                      std::ostream* log = nullptr);

/// One run_summary structured-text document (config echo included).
std::string format_run_summary(const RunMetrics& m, const ScenarioConfig& cfg);

}  // namespace v2x

#endif
