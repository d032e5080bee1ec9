#pragma once

#include <string>
#include <vector>

#include "fpd/coupling.hpp"

namespace fpd {

// Pass/fail thresholds for report_metrics. An empty ratio vector skips the
// division-ratio check. ratio_tol is relative.
struct MetricsTargets {
    double rl_min = 20.0;
    std::vector<double> ratios;
    double ratio_tol = 0.02;
};

// Minimum isolation between two output ports over the band (1-based labels).
struct IsolationEntry {
    int port_a = 0;
    int port_b = 0;
    double min_db = 0.0;
};

struct MetricsReport {
    double band_lo = 0.0;
    double band_hi = 0.0;
    double f0_grid = 0.0;  // grid frequency the center metrics were read at
    double min_return_loss_db = 0.0;
    std::vector<double> insertion_loss_db;  // output ports 2..P at f0
    std::vector<double> division_weights;   // |S_{p1}(f0)|^2 for p = 2..P
    std::vector<IsolationEntry> isolation;
    bool has_outputs = false;  // false for one-ports: IL/ratios undefined
    bool rl_pass = false;
    bool ratio_pass = false;
    bool pass = false;
};

// Band metrics of a sweep driven at port 1. The band is [band_edges(f0,fbw)];
// the sweep must cover it. Targets with a ratio vector must match the output
// port count.
MetricsReport report_metrics(const SParamSweep& sweep, double f0, double fbw,
                             const MetricsTargets& targets = {});

}  // namespace fpd
