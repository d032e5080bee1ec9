#include "fpd/mna.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace fpd {

using cd = std::complex<double>;

namespace {

struct PortRef {
    int node = 0;  // compact index, -1 would mean ground but ports never are
    double z0 = 50.0;
};

}  // namespace

SParamSweep sparams_mna(const Netlist& net, const std::vector<double>& freqs) {
    net.validate();
    if (freqs.empty()) throw InvalidSpecError("frequency grid is empty");
    for (size_t k = 0; k < freqs.size(); ++k) {
        if (!(freqs[k] > 0.0)) throw InvalidSpecError("sweep frequencies must be positive");
        if (k > 0 && !(freqs[k] > freqs[k - 1]))
            throw InvalidSpecError("sweep frequencies must be strictly ascending");
    }

    // Compact non-ground node indices in sorted node-id order.
    std::map<int, int> node_ix;
    auto node_of = [&](int raw) -> int { return raw == 0 ? -1 : node_ix.at(raw); };
    for (const Element& el : net.elements) {
        if (el.kind == ElementKind::K) continue;
        for (int raw : {el.n1, el.n2})
            if (raw != 0) node_ix.emplace(raw, 0);
    }
    int next = 0;
    for (auto& [raw, ix] : node_ix) ix = next++;

    // One branch-current unknown per inductor.
    std::map<std::string, int> branch_of;
    std::vector<const Element*> inductors;
    for (const Element& el : net.elements) {
        if (el.kind != ElementKind::L) continue;
        branch_of[el.name] = static_cast<int>(inductors.size());
        inductors.push_back(&el);
    }

    const int nn = static_cast<int>(node_ix.size());
    const int nl = static_cast<int>(inductors.size());
    const int dim = nn + nl;

    std::vector<PortRef> ports;
    for (const Element* p : net.ports_sorted()) ports.push_back({node_of(p->n1), p->value});
    const int np = static_cast<int>(ports.size());

    SParamSweep out;
    out.freqs = freqs;
    out.s.reserve(freqs.size());
    out.z_ref = ports.front().z0;

    Eigen::MatrixXcd a(dim, dim);
    Eigen::MatrixXcd rhs(dim, np);

    for (double f : freqs) {
        const double w = 2.0 * std::numbers::pi * f;
        a.setZero();

        auto stamp_admittance = [&](int i, int j, cd y) {
            if (i >= 0) a(i, i) += y;
            if (j >= 0) a(j, j) += y;
            if (i >= 0 && j >= 0) {
                a(i, j) -= y;
                a(j, i) -= y;
            }
        };

        for (const Element& el : net.elements) {
            switch (el.kind) {
                case ElementKind::R:
                    stamp_admittance(node_of(el.n1), node_of(el.n2), cd(1.0 / el.value, 0.0));
                    break;
                case ElementKind::C:
                    stamp_admittance(node_of(el.n1), node_of(el.n2), cd(0.0, w * el.value));
                    break;
                case ElementKind::J: {
                    // Ideal inverter: purely off-diagonal admittance +-jJ, so
                    // a grounded terminal contributes nothing to the reduced
                    // system (a shorted far side looks like an open).
                    const int i = node_of(el.n1);
                    const int j = node_of(el.n2);
                    if (i >= 0 && j >= 0) {
                        a(i, j) += cd(0.0, el.value);
                        a(j, i) += cd(0.0, el.value);
                    }
                    break;
                }
                case ElementKind::L: {
                    const int b = nn + branch_of.at(el.name);
                    const int i = node_of(el.n1);
                    const int j = node_of(el.n2);
                    if (i >= 0) {
                        a(i, b) += 1.0;  // branch current leaves n1
                        a(b, i) += 1.0;
                    }
                    if (j >= 0) {
                        a(j, b) -= 1.0;
                        a(b, j) -= 1.0;
                    }
                    a(b, b) -= cd(0.0, w * el.value);
                    break;
                }
                case ElementKind::K: {
                    const Element* la = net.find(ElementKind::L, el.ref_a);
                    const Element* lb = net.find(ElementKind::L, el.ref_b);
                    const double mutual = el.value * std::sqrt(la->value * lb->value);
                    const int ba = nn + branch_of.at(el.ref_a);
                    const int bb = nn + branch_of.at(el.ref_b);
                    a(ba, bb) -= cd(0.0, w * mutual);
                    a(bb, ba) -= cd(0.0, w * mutual);
                    break;
                }
                case ElementKind::P:
                    a(node_of(el.n1), node_of(el.n1)) += cd(1.0 / el.value, 0.0);
                    break;
            }
        }

        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
        const auto& diag = lu.matrixLU().diagonal();
        double dmin = std::abs(diag(0)), dmax = dmin;
        for (int i = 1; i < dim; ++i) {
            const double d = std::abs(diag(i));
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        if (!(dmin > 1e-12 * dmax))
            throw SolverError(
                "singular system at " + std::to_string(f) +
                " Hz (floating subcircuit or ideal-element resonance)");

        rhs.setZero();
        for (int p = 0; p < np; ++p) rhs(ports[p].node, p) = cd(1.0 / ports[p].z0, 0.0);
        const Eigen::MatrixXcd x = lu.solve(rhs);

        Eigen::MatrixXcd s(np, np);
        for (int p = 0; p < np; ++p) {
            for (int q = 0; q < np; ++q) {
                const cd vq = x(ports[q].node, p);
                s(q, p) = 2.0 * vq * std::sqrt(ports[p].z0 / ports[q].z0);
                if (q == p) s(q, p) -= 1.0;
            }
        }
        out.s.push_back(std::move(s));
    }
    return out;
}

}  // namespace fpd
