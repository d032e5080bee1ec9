#pragma once

#include "fpd/errors.hpp"

namespace fpd {

// Substrate description: relative permittivity, thickness in meters, loss
// tangent (informational; the closed forms below are lossless).
struct SubstrateSpec {
    double er = 10.7;
    double h = 1.27e-3;
    double tan_d = 0.0;

    void validate() const;
};

// Microstrip line: width in meters, characteristic impedance in ohms,
// effective permittivity. For er > 1, (er+1)/2 <= eeff < er.
struct LineGeometry {
    double w = 0.0;
    double z0 = 0.0;
    double eeff = 0.0;
};

// Zero-thickness-strip closed forms, piecewise in u = w/h:
//   u <= 1: eeff = (er+1)/2 + (er-1)/2*((1+12/u)^-1/2 + 0.04*(1-u)^2),
//           z0 = 60/sqrt(eeff)*ln(8/u + u/4)
//   u >  1: eeff without the 0.04 term,
//           z0 = 120*pi/(sqrt(eeff)*(u + 1.393 + 0.667*ln(u + 1.444)))
// Continuous across u = 1 within 0.5 ohm for er >= 1.
LineGeometry microstrip_analyze(double w, const SubstrateSpec& sub);

// Width for a target impedance by bisection on microstrip_analyze,
// |z0 - target| <= 0.01 ohm. Valid for 10 <= z0_target <= 200.
LineGeometry microstrip_synthesize(double z0_target, const SubstrateSpec& sub);

// lambda_g = c/(f*sqrt(eeff)), meters.
double guided_wavelength(double f, double eeff);

// Square-open-loop resonator side estimate (lambda_g/2 + gap)/4; a ballpark
// layout figure, not a design output.
double solr_side_estimate(double lambda_g, double gap = 0.5e-3);

}  // namespace fpd
