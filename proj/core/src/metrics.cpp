#include "fpd/metrics.hpp"

#include <cmath>

namespace fpd {

namespace {
// Magnitude to dB with a floor so exact nulls stay finite.
double mag_db(double mag) { return 20.0 * std::log10(std::max(mag, 1e-15)); }
}  // namespace

MetricsReport report_metrics(const SParamSweep& sweep, double f0, double fbw,
                             const MetricsTargets& targets) {
    sweep.validate();
    if (!(targets.rl_min > 0.0)) throw InvalidSpecError("rl_min target must be positive");
    if (!(targets.ratio_tol > 0.0)) throw InvalidSpecError("ratio tolerance must be positive");

    const auto [lo, hi] = band_edges(f0, fbw);
    if (sweep.freqs.front() > lo || sweep.freqs.back() < hi)
        throw InvalidSpecError("sweep does not cover the passband");

    MetricsReport rep;
    rep.band_lo = lo;
    rep.band_hi = hi;

    const int npts = sweep.points();
    const int np = sweep.port_count();

    int first = -1, last = -1;
    for (int k = 0; k < npts; ++k) {
        if (sweep.freqs[k] < lo || sweep.freqs[k] > hi) continue;
        if (first < 0) first = k;
        last = k;
    }
    if (first < 0 || last - first < 2)
        throw InvalidSpecError("grid too coarse over the passband");

    int i0 = 0;
    for (int k = 1; k < npts; ++k)
        if (std::abs(sweep.freqs[k] - f0) < std::abs(sweep.freqs[i0] - f0)) i0 = k;
    rep.f0_grid = sweep.freqs[i0];

    double worst_s11 = 0.0;
    for (int k = first; k <= last; ++k)
        worst_s11 = std::max(worst_s11, std::abs(sweep.s[k](0, 0)));
    rep.min_return_loss_db = -mag_db(worst_s11);

    rep.has_outputs = np > 1;
    for (int q = 1; q < np; ++q) {
        const double mag = std::abs(sweep.s[i0](q, 0));
        rep.insertion_loss_db.push_back(-mag_db(mag));
        rep.division_weights.push_back(mag * mag);
    }
    for (int a = 1; a < np; ++a) {
        for (int b = a + 1; b < np; ++b) {
            double worst = 0.0;
            for (int k = first; k <= last; ++k)
                worst = std::max(worst, std::abs(sweep.s[k](a, b)));
            rep.isolation.push_back({a + 1, b + 1, -mag_db(worst)});
        }
    }

    rep.rl_pass = rep.min_return_loss_db >= targets.rl_min;
    rep.ratio_pass = true;
    if (!targets.ratios.empty()) {
        if (targets.ratios.size() != rep.division_weights.size())
            throw InvalidSpecError("ratio target count must match the output port count");
        double wsum = 0.0, tsum = 0.0;
        for (double w : rep.division_weights) wsum += w;
        for (double t : targets.ratios) {
            if (!(t > 0.0)) throw InvalidSpecError("ratio targets must be positive");
            tsum += t;
        }
        if (!(wsum > 0.0)) {
            rep.ratio_pass = false;
        } else {
            for (size_t i = 0; i < targets.ratios.size(); ++i) {
                const double measured = rep.division_weights[i] / wsum * tsum;
                if (std::abs(measured - targets.ratios[i]) > targets.ratio_tol * targets.ratios[i])
                    rep.ratio_pass = false;
            }
        }
    }
    rep.pass = rep.rl_pass && rep.ratio_pass;
    return rep;
}

}  // namespace fpd
