#include "fpd/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fpd {

void TuneTargets::validate() const {
    if (!(rl_min > 0.0)) throw InvalidSpecError("rl_min must be positive");
    if (!(band_lo > 0.0) || !(band_hi > band_lo))
        throw InvalidSpecError("tuning band must satisfy 0 < band_lo < band_hi");
    for (double r : ratios)
        if (!(r > 0.0)) throw InvalidSpecError("ratio targets must be positive");
    if (max_iterations < 1) throw InvalidSpecError("evaluation budget must be at least 1");
    if (!(tolerance >= 0.0)) throw InvalidSpecError("tolerance must be nonnegative");
    if (grid_points < 3) throw InvalidSpecError("cost grid needs at least 3 points");
}

namespace {

// Distinct nonzero coupling values (upper triangle, grouped by exact value so
// symmetric structure survives tuning) plus one trailing port-load scale.
struct ParamSpace {
    std::vector<std::vector<std::pair<int, int>>> groups;
    CouplingNetwork base;

    std::vector<double> initial() const {
        std::vector<double> x;
        for (const auto& cells : groups) x.push_back(base.m(cells[0].first, cells[0].second));
        x.push_back(1.0);
        return x;
    }

    CouplingNetwork apply(const std::vector<double>& x) const {
        CouplingNetwork net = base;
        for (size_t g = 0; g < groups.size(); ++g)
            for (auto [i, j] : groups[g]) net.m(i, j) = net.m(j, i) = x[g];
        const double rscale = x.back();
        for (size_t p = 0; p < net.ports.size(); ++p) net.ports[p].r = base.ports[p].r * rscale;
        return net;
    }
};

ParamSpace make_param_space(const CouplingNetwork& net) {
    ParamSpace space;
    space.base = net;
    for (int i = 0; i < net.n; ++i) {
        for (int j = i + 1; j < net.n; ++j) {
            const double v = net.m(i, j);
            if (v == 0.0) continue;
            bool placed = false;
            for (auto& cells : space.groups) {
                const double gv = net.m(cells[0].first, cells[0].second);
                if (std::abs(v - gv) <= 1e-9 * std::max(std::abs(v), std::abs(gv))) {
                    cells.emplace_back(i, j);
                    placed = true;
                    break;
                }
            }
            if (!placed) space.groups.push_back({{i, j}});
        }
    }
    return space;
}

std::vector<double> cost_grid(const CouplingNetwork& net, const TuneTargets& targets) {
    std::vector<double> grid = linspace(targets.band_lo, targets.band_hi, targets.grid_points);
    if (net.f0 > targets.band_lo && net.f0 < targets.band_hi) {
        grid.push_back(net.f0);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }
    return grid;
}

double cost_of_sweep(const SParamSweep& sweep, const CouplingNetwork& net,
                     const TuneTargets& targets) {
    double cost = 0.0;
    for (int k = 0; k < sweep.points(); ++k) {
        const double s11_db = 20.0 * std::log10(std::max(std::abs(sweep.s[k](0, 0)), 1e-15));
        const double violation = s11_db + targets.rl_min;
        if (violation > 0.0) cost += violation * violation;
    }
    if (!targets.ratios.empty()) {
        int i0 = 0;
        for (int k = 1; k < sweep.points(); ++k)
            if (std::abs(sweep.freqs[k] - net.f0) < std::abs(sweep.freqs[i0] - net.f0)) i0 = k;
        double wsum = 0.0;
        std::vector<double> weights;
        for (int q = 1; q < sweep.port_count(); ++q) {
            const double mag = std::abs(sweep.s[i0](q, 0));
            weights.push_back(mag * mag);
            wsum += mag * mag;
        }
        const double tsum = std::accumulate(targets.ratios.begin(), targets.ratios.end(), 0.0);
        for (size_t i = 0; i < targets.ratios.size(); ++i) {
            const double measured = wsum > 0.0 ? weights[i] / wsum * tsum : 0.0;
            const double rel = (measured - targets.ratios[i]) / targets.ratios[i];
            cost += rel * rel;
        }
    }
    return cost;
}

}  // namespace

double tune_cost(const CouplingNetwork& net, const TuneTargets& targets) {
    net.validate();
    targets.validate();
    if (!targets.ratios.empty() &&
        static_cast<int>(targets.ratios.size()) != net.port_count() - 1)
        throw InvalidSpecError("ratio target count must match the output port count");
    const SParamSweep sweep = sparameters(net, cost_grid(net, targets));
    return cost_of_sweep(sweep, net, targets);
}

TuneResult tune(const CouplingNetwork& net, const TuneTargets& targets) {
    net.validate();
    targets.validate();
    if (!targets.ratios.empty() &&
        static_cast<int>(targets.ratios.size()) != net.port_count() - 1)
        throw InvalidSpecError("ratio target count must match the output port count");

    const ParamSpace space = make_param_space(net);
    const std::vector<double> grid = cost_grid(net, targets);
    const int dim = static_cast<int>(space.groups.size()) + 1;
    const int budget = targets.max_iterations;

    int evaluations = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evaluations;
        return cost_of_sweep(sparameters(space.apply(x), grid), net, targets);
    };

    // Nelder-Mead with standard coefficients; the best vertex is monotone.
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<std::vector<double>> simplex;
    std::vector<double> fvals;
    simplex.push_back(space.initial());
    for (int i = 0; i < dim; ++i) {
        std::vector<double> v = simplex[0];
        v[i] = v[i] != 0.0 ? v[i] * 1.03 : 0.01;
        simplex.push_back(std::move(v));
    }
    for (const auto& v : simplex) {
        if (evaluations >= budget) break;
        fvals.push_back(eval(v));
    }
    // Vertices left unevaluated by a tiny budget sort last.
    while (fvals.size() < simplex.size())
        fvals.push_back(std::numeric_limits<double>::infinity());

    auto order = [&]() {
        std::vector<int> ix(simplex.size());
        std::iota(ix.begin(), ix.end(), 0);
        std::stable_sort(ix.begin(), ix.end(), [&](int a, int b) { return fvals[a] < fvals[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (int i : ix) {
            s2.push_back(simplex[i]);
            f2.push_back(fvals[i]);
        }
        simplex.swap(s2);
        fvals.swap(f2);
    };

    order();
    while (evaluations < budget && fvals.front() > targets.tolerance) {
        // Centroid of all but the worst vertex.
        std::vector<double> centroid(dim, 0.0);
        for (size_t v = 0; v + 1 < simplex.size(); ++v)
            for (int i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
        for (int i = 0; i < dim; ++i) centroid[i] /= dim;

        auto blend = [&](const std::vector<double>& from, double t) {
            std::vector<double> x(dim);
            for (int i = 0; i < dim; ++i) x[i] = centroid[i] + t * (centroid[i] - from[i]);
            return x;
        };

        const std::vector<double> reflected = blend(simplex.back(), alpha);
        const double fr = eval(reflected);
        if (fr < fvals.front()) {
            if (evaluations < budget) {
                const std::vector<double> expanded = blend(simplex.back(), gamma);
                const double fe = eval(expanded);
                simplex.back() = fe < fr ? expanded : reflected;
                fvals.back() = std::min(fe, fr);
            } else {
                simplex.back() = reflected;
                fvals.back() = fr;
            }
        } else if (fr < fvals[fvals.size() - 2]) {
            simplex.back() = reflected;
            fvals.back() = fr;
        } else if (evaluations < budget) {
            const std::vector<double> contracted = blend(simplex.back(), -rho);
            const double fc = eval(contracted);
            if (fc < fvals.back()) {
                simplex.back() = contracted;
                fvals.back() = fc;
            } else {
                // Shrink toward the best vertex.
                for (size_t v = 1; v < simplex.size() && evaluations < budget; ++v) {
                    for (int i = 0; i < dim; ++i)
                        simplex[v][i] = simplex[0][i] + sigma * (simplex[v][i] - simplex[0][i]);
                    fvals[v] = eval(simplex[v]);
                }
            }
        }
        order();
        // Degenerate simplex: no progress possible at double precision.
        double spread = 0.0;
        for (int i = 0; i < dim; ++i)
            spread = std::max(spread, std::abs(simplex.back()[i] - simplex.front()[i]));
        if (spread <= 1e-15 * (1.0 + std::abs(simplex.front()[0]))) break;
    }

    TuneResult result;
    result.network = space.apply(simplex.front());
    result.cost = fvals.front();
    result.evaluations = evaluations;
    result.converged = fvals.front() <= targets.tolerance;
    return result;
}

}  // namespace fpd
