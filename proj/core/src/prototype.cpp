#include "fpd/prototype.hpp"

#include <cmath>
#include <numbers>

namespace fpd {

namespace {
constexpr double kPi = std::numbers::pi;
}

void DividerSpec::validate() const {
    if (!(f0 > 0.0)) throw InvalidSpecError("f0 must be positive");
    if (!(fbw > 0.0 && fbw < 1.0)) throw InvalidSpecError("fbw must be in (0, 1)");
    if (!(z0 > 0.0)) throw InvalidSpecError("z0 must be positive");
    if (!(ripple_db > 0.0)) throw InvalidSpecError("ripple_db must be positive");
    if (order < 1) throw InvalidSpecError("order must be at least 1");
    if (ratios.size() < 2) throw InvalidSpecError("a divider needs at least two branch ratios");
    for (double r : ratios)
        if (!(r > 0.0)) throw InvalidSpecError("branch ratios must be positive");
}

void GValues::validate() const {
    if (g.size() < 3) throw InvalidSpecError("g-vector must hold g0..g(n+1) for n >= 1");
    for (double v : g)
        if (!(v > 0.0)) throw InvalidSpecError("g-values must be positive");
    if (std::abs(g.front() - 1.0) > 1e-12) throw InvalidSpecError("g0 must be 1");
    const int n = order();
    if (n % 2 == 1) {
        if (std::abs(g.back() - 1.0) > 1e-9)
            throw InvalidSpecError("odd-order prototype must end with g(n+1) = 1");
        for (int k = 0; k < static_cast<int>(g.size()); ++k) {
            const int mirror = n + 1 - k;
            if (std::abs(g[k] - g[mirror]) > 1e-9)
                throw InvalidSpecError("odd-order prototype must be palindromic");
        }
    }
}

void CouplingPlan::validate() const {
    if (!(m_branch > 0.0)) throw InvalidSpecError("m_branch must be positive");
    if (m_split.empty()) throw InvalidSpecError("plan has no branches");
    double sumsq = 0.0;
    for (double m : m_split) {
        if (!(m > 0.0)) throw InvalidSpecError("split couplings must be positive");
        sumsq += m * m;
    }
    if (std::abs(sumsq - m_branch * m_branch) > 1e-9 * m_branch * m_branch)
        throw InvalidSpecError("split couplings must satisfy sum(m_i^2) = m_branch^2");
    if (!(qe_in > 0.0) || !(qe_out > 0.0)) throw InvalidSpecError("external Q must be positive");
    if (!(f0 > 0.0)) throw InvalidSpecError("f0 must be positive");
    if (!(fbw > 0.0 && fbw < 1.0)) throw InvalidSpecError("fbw must be in (0, 1)");
}

GValues chebyshev_gvalues(int order, double ripple_db) {
    if (order < 1) throw InvalidSpecError("prototype order must be at least 1");
    if (!(ripple_db > 0.0)) throw InvalidSpecError("ripple must be positive");

    const int n = order;
    const double beta = std::log(1.0 / std::tanh(ripple_db / 17.37));
    const double gamma = std::sinh(beta / (2.0 * n));

    std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        a[k] = std::sin((2.0 * k - 1.0) * kPi / (2.0 * n));
        const double s = std::sin(k * kPi / n);
        b[k] = gamma * gamma + s * s;
    }

    std::vector<double> g(n + 2, 1.0);
    g[1] = 2.0 * a[1] / gamma;
    for (int k = 2; k <= n; ++k) g[k] = 4.0 * a[k - 1] * a[k] / (b[k - 1] * g[k - 1]);
    if (n % 2 == 0) {
        const double t = std::tanh(beta / 4.0);
        g[n + 1] = 1.0 / (t * t);
    }
    return GValues{std::move(g)};
}

double ripple_from_return_loss(double rl_db) {
    if (!(rl_db > 0.0)) throw InvalidSpecError("return loss must be positive");
    return -10.0 * std::log10(1.0 - std::pow(10.0, -rl_db / 10.0));
}

CouplingPlan coupling_plan(const GValues& g, double fbw,
                           const std::vector<double>& ratios, double f0) {
    g.validate();
    if (g.order() != 3)
        throw InvalidSpecError("coupling plan requires an order-3 prototype (g0..g4)");
    if (!(fbw > 0.0 && fbw < 1.0)) throw InvalidSpecError("fbw must be in (0, 1)");
    if (!(f0 > 0.0)) throw InvalidSpecError("f0 must be positive");
    if (ratios.empty()) throw InvalidSpecError("at least one branch ratio required");
    double sum = 0.0;
    for (double r : ratios) {
        if (!(r > 0.0)) throw InvalidSpecError("branch ratios must be positive");
        sum += r;
    }

    CouplingPlan plan;
    plan.m_branch = fbw / std::sqrt(g.g[1] * g.g[2]);
    plan.m_split.reserve(ratios.size());
    for (double r : ratios) plan.m_split.push_back(plan.m_branch * std::sqrt(r / sum));
    plan.qe_in = plan.qe_out = g.g[0] * g.g[1] / fbw;
    plan.f0 = f0;
    plan.fbw = fbw;
    return plan;
}

}  // namespace fpd
