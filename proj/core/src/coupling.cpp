#include "fpd/coupling.hpp"

#include <cmath>
#include <set>

namespace fpd {

using cd = std::complex<double>;

void CouplingNetwork::validate() const {
    if (n < 1) throw InvalidSpecError("network needs at least one resonator");
    if (m.rows() != n || m.cols() != n)
        throw InvalidSpecError("coupling matrix size does not match resonator count");
    for (int i = 0; i < n; ++i) {
        if (m(i, i) != 0.0)
            throw InvalidSpecError("synchronous tuning requires a zero coupling diagonal");
        for (int j = i + 1; j < n; ++j) {
            const double scale = std::max({1.0, std::abs(m(i, j)), std::abs(m(j, i))});
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale)
                throw InvalidSpecError("coupling matrix must be symmetric");
        }
    }
    if (ports.empty()) throw InvalidSpecError("network needs at least one port");
    std::set<int> attached;
    for (const PortLoad& p : ports) {
        if (p.resonator < 0 || p.resonator >= n)
            throw InvalidSpecError("port attaches to a resonator outside the network");
        if (!attached.insert(p.resonator).second)
            throw InvalidSpecError("ports must attach to distinct resonators");
        if (!(p.r > 0.0)) throw InvalidSpecError("port loads must be positive");
    }
    if (!(f0 > 0.0)) throw InvalidSpecError("f0 must be positive");
    if (!(fbw > 0.0 && fbw < 1.0)) throw InvalidSpecError("fbw must be in (0, 1)");
}

void SParamSweep::validate() const {
    if (freqs.empty()) throw InvalidSpecError("sweep is empty");
    if (s.size() != freqs.size())
        throw InvalidSpecError("sweep S data does not match the frequency grid");
    for (size_t k = 0; k < freqs.size(); ++k) {
        if (!(freqs[k] > 0.0)) throw InvalidSpecError("sweep frequencies must be positive");
        if (k > 0 && !(freqs[k] > freqs[k - 1]))
            throw InvalidSpecError("sweep frequencies must be strictly ascending");
        if (s[k].rows() != s[k].cols() || s[k].rows() != s.front().rows())
            throw InvalidSpecError("sweep S matrices must be square with constant size");
    }
    if (!(z_ref > 0.0)) throw InvalidSpecError("z_ref must be positive");
}

CouplingNetwork build_fpd_network(const CouplingPlan& plan) {
    plan.validate();
    const int branches = static_cast<int>(plan.m_split.size());

    CouplingNetwork net;
    net.n = 1 + 2 * branches;
    net.m = Eigen::MatrixXd::Zero(net.n, net.n);
    for (int i = 0; i < branches; ++i) {
        const int first = 1 + 2 * i;
        const int last = 2 + 2 * i;
        net.m(0, first) = net.m(first, 0) = plan.m_split[i];
        net.m(first, last) = net.m(last, first) = plan.m_branch;
    }
    net.ports.push_back({0, 1.0 / (plan.qe_in * plan.fbw)});
    for (int i = 0; i < branches; ++i)
        net.ports.push_back({2 + 2 * i, 1.0 / (plan.qe_out * plan.fbw)});
    net.f0 = plan.f0;
    net.fbw = plan.fbw;
    return net;
}

double lowpass_map(double f, double f0, double fbw) {
    if (!(f > 0.0)) throw InvalidSpecError("frequency must be positive");
    if (!(f0 > 0.0)) throw InvalidSpecError("f0 must be positive");
    if (!(fbw > 0.0 && fbw < 1.0)) throw InvalidSpecError("fbw must be in (0, 1)");
    return (f / f0 - f0 / f) / fbw;
}

std::pair<double, double> band_edges(double f0, double fbw) {
    if (!(f0 > 0.0)) throw InvalidSpecError("f0 must be positive");
    if (!(fbw > 0.0 && fbw < 1.0)) throw InvalidSpecError("fbw must be in (0, 1)");
    // Roots of f/f0 - f0/f = +-fbw; the two edges multiply to f0^2.
    const double half = fbw / 2.0;
    const double root = std::sqrt(1.0 + half * half);
    return {f0 * (root - half), f0 * (root + half)};
}

std::vector<double> linspace(double fmin, double fmax, int points) {
    if (points < 1) throw InvalidSpecError("grid needs at least one point");
    if (points == 1) return {fmin};
    if (!(fmax > fmin)) throw InvalidSpecError("fmax must exceed fmin for a multi-point grid");
    std::vector<double> out(points);
    const double step = (fmax - fmin) / (points - 1);
    for (int k = 0; k < points; ++k) out[k] = fmin + step * k;
    out.back() = fmax;
    return out;
}

SParamSweep sparameters(const CouplingNetwork& net, const std::vector<double>& freqs,
                        std::optional<double> qu, double z_ref) {
    net.validate();
    if (freqs.empty()) throw InvalidSpecError("frequency grid is empty");
    for (size_t k = 0; k < freqs.size(); ++k) {
        if (!(freqs[k] > 0.0)) throw InvalidSpecError("sweep frequencies must be positive");
        if (k > 0 && !(freqs[k] > freqs[k - 1]))
            throw InvalidSpecError("sweep frequencies must be strictly ascending");
    }
    if (qu && !(*qu > 0.0)) throw InvalidSpecError("qu must be positive when given");
    if (!(z_ref > 0.0)) throw InvalidSpecError("z_ref must be positive");

    const int n = net.n;
    const int np = net.port_count();

    // Frequency-independent part: m/fbw - j*R.
    Eigen::MatrixXcd base = (net.m / net.fbw).cast<cd>();
    for (const PortLoad& p : net.ports) base(p.resonator, p.resonator) -= cd(0.0, p.r);

    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(n, np);
    for (int p = 0; p < np; ++p) rhs(net.ports[p].resonator, p) = 1.0;

    const cd loss = qu ? cd(0.0, -1.0 / (net.fbw * *qu)) : cd(0.0, 0.0);

    SParamSweep out;
    out.freqs = freqs;
    out.s.reserve(freqs.size());
    out.z_ref = z_ref;

    Eigen::MatrixXcd a(n, n);
    for (double f : freqs) {
        const cd lambda = cd(lowpass_map(f, net.f0, net.fbw), 0.0) + loss;
        a = base;
        a.diagonal().array() += lambda;

        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
        const auto& diag = lu.matrixLU().diagonal();
        double dmin = std::abs(diag(0)), dmax = dmin;
        for (int i = 1; i < n; ++i) {
            const double d = std::abs(diag(i));
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        if (!(dmin > 1e-14 * dmax))
            throw SolverError("near-singular coupling system at " + std::to_string(f) + " Hz");

        const Eigen::MatrixXcd x = lu.solve(rhs);  // column p = A^-1 e_p

        Eigen::MatrixXcd s(np, np);
        for (int p = 0; p < np; ++p) {
            const double rp = net.ports[p].r;
            for (int q = 0; q < np; ++q) {
                const double rq = net.ports[q].r;
                const cd inv = x(net.ports[q].resonator, p);
                s(q, p) = (q == p) ? cd(1.0, 0.0) + cd(0.0, 2.0 * rp) * inv
                                   : cd(0.0, 2.0 * std::sqrt(rq * rp)) * inv;
            }
        }
        out.s.push_back(std::move(s));
    }
    return out;
}

}  // namespace fpd
