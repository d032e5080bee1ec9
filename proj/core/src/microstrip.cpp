#include "fpd/microstrip.hpp"

#include <cmath>
#include <numbers>

namespace fpd {

namespace {
constexpr double kC0 = 299792458.0;  // m/s
}

void SubstrateSpec::validate() const {
    if (!(er >= 1.0)) throw InvalidSpecError("relative permittivity must be at least 1");
    if (!(h > 0.0)) throw InvalidSpecError("substrate thickness must be positive");
    if (!(tan_d >= 0.0)) throw InvalidSpecError("loss tangent must be nonnegative");
}

LineGeometry microstrip_analyze(double w, const SubstrateSpec& sub) {
    sub.validate();
    if (!(w > 0.0)) throw InvalidSpecError("strip width must be positive");

    const double u = w / sub.h;
    const double er = sub.er;
    LineGeometry line;
    line.w = w;
    if (u <= 1.0) {
        line.eeff = (er + 1.0) / 2.0 +
                    (er - 1.0) / 2.0 *
                        (1.0 / std::sqrt(1.0 + 12.0 / u) + 0.04 * (1.0 - u) * (1.0 - u));
        line.z0 = 60.0 / std::sqrt(line.eeff) * std::log(8.0 / u + 0.25 * u);
    } else {
        line.eeff = (er + 1.0) / 2.0 + (er - 1.0) / 2.0 / std::sqrt(1.0 + 12.0 / u);
        line.z0 = 120.0 * std::numbers::pi /
                  (std::sqrt(line.eeff) * (u + 1.393 + 0.667 * std::log(u + 1.444)));
    }
    return line;
}

LineGeometry microstrip_synthesize(double z0_target, const SubstrateSpec& sub) {
    sub.validate();
    if (!(z0_target >= 10.0 && z0_target <= 200.0))
        throw InvalidSpecError("synthesis target must lie in [10, 200] ohm");

    // z0 is strictly decreasing in u; bracket [1e-4, 100] covers [10, 200]
    // ohm for every er >= 1.
    double ulo = 1e-4, uhi = 100.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double um = 0.5 * (ulo + uhi);
        const double z = microstrip_analyze(um * sub.h, sub).z0;
        if (z > z0_target)
            ulo = um;
        else
            uhi = um;
    }
    LineGeometry line = microstrip_analyze(0.5 * (ulo + uhi) * sub.h, sub);
    if (std::abs(line.z0 - z0_target) > 0.01)
        throw SolverError("width bisection did not reach the target impedance");
    return line;
}

double guided_wavelength(double f, double eeff) {
    if (!(f > 0.0)) throw InvalidSpecError("frequency must be positive");
    if (!(eeff >= 1.0)) throw InvalidSpecError("effective permittivity must be at least 1");
    return kC0 / (f * std::sqrt(eeff));
}

double solr_side_estimate(double lambda_g, double gap) {
    if (!(lambda_g > 0.0)) throw InvalidSpecError("guided wavelength must be positive");
    if (!(gap >= 0.0)) throw InvalidSpecError("gap must be nonnegative");
    return (lambda_g / 2.0 + gap) / 4.0;
}

}  // namespace fpd
