#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fpd/prototype.hpp"

namespace fpd {

// External port attached to a single resonator. r is the normalized load
// 1/(Qe*FBW). Resonator indices are 0-based; entry i of CouplingNetwork::ports
// is S-parameter port i+1.
struct PortLoad {
    int resonator = 0;
    double r = 1.0;
};

// Synchronously tuned coupled-resonator network. m holds the physical
// bandpass coupling coefficients k_ij (symmetric, zero diagonal); the sweep
// normalizes by fbw internally.
struct CouplingNetwork {
    int n = 0;
    Eigen::MatrixXd m;
    std::vector<PortLoad> ports;
    double f0 = 0.0;
    double fbw = 0.0;

    int port_count() const { return static_cast<int>(ports.size()); }
    void validate() const;
};

// Multiport S-parameter data on a strictly ascending frequency grid.
struct SParamSweep {
    std::vector<double> freqs;
    std::vector<Eigen::MatrixXcd> s;
    double z_ref = 50.0;

    int points() const { return static_cast<int>(freqs.size()); }
    int port_count() const { return s.empty() ? 0 : static_cast<int>(s.front().rows()); }
    void validate() const;
};

// Star-of-branches divider network: resonator 0 is the common resonator,
// branch i occupies resonators 1+2i and 2+2i, port 1 loads the common
// resonator, port i+2 loads the end of branch i. The coupling graph is a tree.
CouplingNetwork build_fpd_network(const CouplingPlan& plan);

// Narrowband lowpass map (1/fbw)*(f/f0 - f0/f); zero at f0, monotone in f.
double lowpass_map(double f, double f0, double fbw);

// Passband edges {lo, hi} where the lowpass map reaches -1/+1.
std::pair<double, double> band_edges(double f0, double fbw);

// Uniform grid from fmin to fmax inclusive; points == 1 collapses to {fmin}.
std::vector<double> linspace(double fmin, double fmax, int points);

// Coupling-matrix frequency sweep. For each frequency
//   A = lambda'*I - j*R + m/fbw,   lambda' = lambda - j/(fbw*qu),
// R_ee = sum of r over ports attached at resonator e, and
//   S_pp = 1 + 2j*r_p*[A^-1]_{ep,ep},  S_qp = 2j*sqrt(r_q*r_p)*[A^-1]_{eq,ep}.
// qu absent means lossless. Inputs are immutable and all per-point state is
// local, so calls may run concurrently.
SParamSweep sparameters(const CouplingNetwork& net, const std::vector<double>& freqs,
                        std::optional<double> qu = std::nullopt, double z_ref = 50.0);

}  // namespace fpd
