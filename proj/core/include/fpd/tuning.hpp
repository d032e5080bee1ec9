#pragma once

#include <vector>

#include "fpd/coupling.hpp"

namespace fpd {

// Tuning objective. ratios are target output power weights (empty = skip the
// ratio term); max_iterations is a cost-evaluation budget; the tuner stops
// early once the cost falls at or below tolerance.
struct TuneTargets {
    double rl_min = 20.0;
    std::vector<double> ratios;
    double band_lo = 0.0;
    double band_hi = 0.0;
    int max_iterations = 400;
    double tolerance = 1e-9;
    int grid_points = 161;

    void validate() const;
};

struct TuneResult {
    CouplingNetwork network;
    double cost = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Cost evaluated on grid_points over [band_lo, band_hi] plus the f0 sample:
//   sum over band of max(0, |S11|_dB + rl_min)^2
// + sum over outputs of ((measured_i - target_i)/target_i)^2,
// where measured_i rescales the f0 power weights to the target sum.
double tune_cost(const CouplingNetwork& net, const TuneTargets& targets);

// Derivative-free simplex descent over the network's distinct nonzero
// coupling values (grouped by equality, so equal couplings stay equal) plus
// one global port-load scale. Topology is never altered. The best-seen cost
// is monotone; on budget exhaustion the best-found network is returned with
// converged = false, never an exception.
TuneResult tune(const CouplingNetwork& net, const TuneTargets& targets);

}  // namespace fpd
