#include "fpd/extraction.hpp"

#include <cmath>
#include <numbers>

namespace fpd {

namespace {

constexpr double kPi = std::numbers::pi;

// Vertex of the parabola through three points; falls back to the middle
// point when the data is not curved.
std::pair<double, double> parabolic_vertex(double x0, double y0, double x1, double y1,
                                           double x2, double y2) {
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double c2 = (d2 - d1) / (x2 - x0);
    if (c2 == 0.0) return {x1, y1};
    const double xv = 0.5 * (x0 + x1) - d1 / (2.0 * c2);
    const double yv = y0 + d1 * (xv - x0) + c2 * (xv - x0) * (xv - x1);
    return {xv, yv};
}

}  // namespace

ExtractionResult qe_from_group_delay(const SParamSweep& sweep, double f0_hint) {
    sweep.validate();
    if (sweep.port_count() != 1)
        throw InvalidSpecError("group-delay extraction expects a one-port sweep");
    if (sweep.points() < 5) throw InvalidSpecError("sweep too short for delay extraction");
    if (!(f0_hint > 0.0)) throw InvalidSpecError("f0 hint must be positive");

    const int npts = sweep.points();
    std::vector<double> w(npts), phase(npts);
    for (int k = 0; k < npts; ++k) w[k] = 2.0 * kPi * sweep.freqs[k];

    phase[0] = std::arg(sweep.s[0](0, 0));
    for (int k = 1; k < npts; ++k) {
        double step = std::arg(sweep.s[k](0, 0)) - std::arg(sweep.s[k - 1](0, 0));
        step -= 2.0 * kPi * std::round(step / (2.0 * kPi));
        if (std::abs(step) >= kPi / 2.0)
            throw ExtractionError("adjacent phase step reaches pi/2; grid too coarse to unwrap");
        phase[k] = phase[k - 1] + step;
    }

    ExtractionResult res;
    res.quantity = ExtractedQuantity::qe;
    std::vector<double> tau(npts, 0.0);
    for (int k = 1; k + 1 < npts; ++k) {
        tau[k] = -(phase[k + 1] - phase[k - 1]) / (w[k + 1] - w[k - 1]);
        res.diagnostics.emplace_back(sweep.freqs[k], tau[k]);
    }

    int peak = 1;
    for (int k = 2; k + 1 < npts; ++k)
        if (tau[k] > tau[peak]) peak = k;
    const bool interior = peak > 1 && peak + 1 < npts - 1;
    if (!interior || !(tau[peak] > tau[peak - 1]) || !(tau[peak] > tau[peak + 1]) ||
        !(tau[peak] > 0.0))
        throw ExtractionError("no interior group-delay maximum; sweep shows no resonance");

    const auto [f_peak, tau_peak] = parabolic_vertex(
        sweep.freqs[peak - 1], tau[peak - 1], sweep.freqs[peak], tau[peak],
        sweep.freqs[peak + 1], tau[peak + 1]);
    res.f0_detected = f_peak;
    res.value = 2.0 * kPi * f_peak * tau_peak / 4.0;
    if (!(res.value > 0.0)) throw ExtractionError("extracted Qe is not positive");
    return res;
}

ExtractionResult k_from_split_peaks(const SParamSweep& sweep, double f0_hint) {
    sweep.validate();
    if (sweep.port_count() != 2)
        throw InvalidSpecError("split-peak extraction expects a two-port sweep");
    if (sweep.points() < 5) throw InvalidSpecError("sweep too short for peak extraction");
    if (!(f0_hint > 0.0)) throw InvalidSpecError("f0 hint must be positive");

    const int npts = sweep.points();
    ExtractionResult res;
    res.quantity = ExtractedQuantity::k;
    std::vector<double> mag(npts);
    for (int k = 0; k < npts; ++k) {
        mag[k] = std::abs(sweep.s[k](1, 0));
        res.diagnostics.emplace_back(sweep.freqs[k], mag[k]);
    }

    std::vector<int> peaks;
    for (int k = 1; k + 1 < npts; ++k)
        if (mag[k] > mag[k - 1] && mag[k] > mag[k + 1]) peaks.push_back(k);
    if (peaks.size() != 2)
        throw ExtractionError("expected two transmission peaks, found " +
                              std::to_string(peaks.size()));

    double f[2];
    for (int i = 0; i < 2; ++i) {
        const int k = peaks[i];
        f[i] = parabolic_vertex(sweep.freqs[k - 1], mag[k - 1], sweep.freqs[k], mag[k],
                                sweep.freqs[k + 1], mag[k + 1])
                   .first;
    }
    res.value = k_from_peak_freqs(f[0], f[1]);
    res.f0_detected = std::sqrt(f[0] * f[1]);
    return res;
}

double k_from_peak_freqs(double f1, double f2) {
    if (!(f1 > 0.0) || !(f2 > 0.0)) throw InvalidSpecError("peak frequencies must be positive");
    if (f1 == f2) throw InvalidSpecError("peak frequencies must be distinct");
    return std::abs(f2 * f2 - f1 * f1) / (f2 * f2 + f1 * f1);
}

}  // namespace fpd
