#pragma once

#include <utility>
#include <vector>

#include "fpd/coupling.hpp"

namespace fpd {

enum class ExtractedQuantity { qe, k };

struct ExtractionResult {
    ExtractedQuantity quantity = ExtractedQuantity::qe;
    double value = 0.0;
    double f0_detected = 0.0;
    // (frequency, group delay in s) or (frequency, |S21|) samples.
    std::vector<std::pair<double, double>> diagnostics;
};

// External quality factor of a singly loaded resonator from the reflection
// group delay: tau = -d(arg S11)/dw on unwrapped phase (central differences),
// Qe = 2*pi*f0*tau(f0)/4 at the delay peak. The peak is refined by a 3-point
// parabolic fit; f0_hint only sanity-checks the input (the detector uses the
// global interior maximum). Throws ExtractionError when no interior delay
// maximum exists or adjacent phase steps reach pi/2 (grid too coarse).
ExtractionResult qe_from_group_delay(const SParamSweep& sweep, double f0_hint);

// Coupling coefficient of a weakly loaded resonator pair from the two |S21|
// peak frequencies: k = (f2^2 - f1^2)/(f2^2 + f1^2), peaks refined
// parabolically. Requires exactly two interior local maxima; throws
// ExtractionError with the count otherwise.
ExtractionResult k_from_split_peaks(const SParamSweep& sweep, double f0_hint);

// Split-peak formula alone; order-insensitive, zero for f1 == f2.
double k_from_peak_freqs(double f1, double f2);

}  // namespace fpd
