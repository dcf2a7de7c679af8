#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "skewlab/dynamics.hpp"
#include "skewlab/growth.hpp"

namespace skewlab {

// 95% Wilson score interval for k successes out of n trials.
struct Wilson {
    double center = 0.0;
    double halfwidth = 0.0;

    double lo() const { return center - halfwidth; }
    double hi() const { return center + halfwidth; }
    // One "Wilson sigma": the halfwidth rescaled to one standard error.
    double sigma() const;
};

Wilson wilson_interval(long long successes, long long trials);

// Runs fn(i) for i in [0, count) across the given number of workers.
// Work items are independent and indexed, so results are identical for any
// worker count.
void parallel_for(long long count, int workers, const std::function<void(long long)>& fn);

// Experiment reports: JSON with {experiment, config, rows, curves, ...}.
// Every Monte Carlo estimate carries a Wilson CI; exact values are flagged
// exact; undecided counts are never folded into estimates.
nlohmann::json llt_curve_report(const std::vector<long long>& n_list, long long w_bound);

nlohmann::json series_report(const GrowthFn& h, long long n_cap, long long k_cap);

nlohmann::json e_measure_report(const SystemConfig& config, const std::vector<long long>& n_values,
                                long long samples, long long k_cap);

nlohmann::json triple_report(const SystemConfig& config, long long n_from, long long n_to);

nlohmann::json cesaro_report(const SystemConfig& config, long long n_max);

nlohmann::json entropy_report(const SystemConfig& config, const std::vector<long long>& n_values,
                              long long points);

// Writes <name>.json, <name>.csv (flat rows) and one <name>.<curve>.dat per
// curve. Wall-clock goes to a .timing.txt sidecar so the reports themselves
// are byte-reproducible.
void write_report(const std::string& out_dir, const std::string& name, const nlohmann::json& report,
                  double wall_clock_seconds);

std::string csv_from_rows(const nlohmann::json& rows);

}  // namespace skewlab
