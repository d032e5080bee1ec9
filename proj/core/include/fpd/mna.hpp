#pragma once

#include <vector>

#include "fpd/coupling.hpp"
#include "fpd/netlist.hpp"

namespace fpd {

// Frequency-domain modified nodal analysis. Unknowns are node voltages plus
// one branch current per inductor, so K mutual couplings stamp exactly.
// Port p is driven through its z0 (Norton source) with all other ports
// terminated; S_pp = 2*V_p/V_s - 1 and S_qp = 2*(V_q/V_s)*sqrt(z0_p/z0_q).
// Ports are ordered by ascending port index. The sweep's z_ref is port 1's
// z0. Throws SolverError naming the frequency if the system is singular
// (floating subcircuit or ideal-element resonance); per-point solves are
// independent and may run concurrently.
SParamSweep sparams_mna(const Netlist& net, const std::vector<double>& freqs);

}  // namespace fpd
