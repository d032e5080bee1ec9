#pragma once

#include <vector>

#include "fpd/errors.hpp"

namespace fpd {

// Divider design input. Frequencies in Hz, impedances in ohms, ripple in dB.
// ratios are per-branch power weights; only their relative sizes matter.
struct DividerSpec {
    double f0 = 2.6e9;
    double fbw = 0.03;
    double z0 = 50.0;
    std::vector<double> ratios{1.0, 2.0, 4.0};
    int order = 3;
    double ripple_db = 0.04321;

    void validate() const;
};

// Chebyshev lowpass prototype element values g0..g(n+1).
struct GValues {
    std::vector<double> g;

    int order() const { return static_cast<int>(g.size()) - 2; }
    void validate() const;
};

// Coupling coefficients and external quality factors for the divider tree.
// m_split is ordered like the ratio vector that produced it.
struct CouplingPlan {
    double m_branch = 0.0;
    std::vector<double> m_split;
    double qe_in = 0.0;
    double qe_out = 0.0;
    double f0 = 0.0;
    double fbw = 0.0;

    void validate() const;
};

// Equal-ripple prototype by the standard recursion. order >= 1, ripple > 0.
GValues chebyshev_gvalues(int order, double ripple_db);

// Equal-ripple level (dB) corresponding to a passband return loss (dB):
// ripple = -10*log10(1 - 10^(-rl/10)).
double ripple_from_return_loss(double rl_db);

// Branch couplings and external Q from an order-3 prototype:
// m_branch = fbw/sqrt(g1*g2), m_split[i] = m_branch*sqrt(r_i/sum(r)),
// qe = g0*g1/fbw at the input and at every output.
CouplingPlan coupling_plan(const GValues& g, double fbw,
                           const std::vector<double>& ratios, double f0);

}  // namespace fpd
