#include <doctest.h>

#include <cmath>
#include <complex>

#include "fpd/coupling.hpp"
#include "fpd/errors.hpp"
#include "fpd/prototype.hpp"

using namespace fpd;

namespace {

CouplingNetwork divider_network() {
    const GValues gv = chebyshev_gvalues(3, 0.04321);
    return build_fpd_network(coupling_plan(gv, 0.03, {1.0, 2.0, 4.0}, 2.6e9));
}

double db(double mag) { return 20.0 * std::log10(mag); }

}  // namespace

TEST_CASE("tree network layout: one common resonator feeding three branch pairs") {
    const CouplingNetwork net = divider_network();
    const GValues gv = chebyshev_gvalues(3, 0.04321);
    const CouplingPlan plan = coupling_plan(gv, 0.03, {1.0, 2.0, 4.0}, 2.6e9);

    REQUIRE(net.n == 7);
    REQUIRE(net.port_count() == 4);
    CHECK_NOTHROW(net.validate());

    CHECK(net.m(0, 1) == doctest::Approx(plan.m_split[0]).epsilon(1e-12));
    CHECK(net.m(0, 3) == doctest::Approx(plan.m_split[1]).epsilon(1e-12));
    CHECK(net.m(0, 5) == doctest::Approx(plan.m_split[2]).epsilon(1e-12));
    CHECK(net.m(1, 2) == doctest::Approx(plan.m_branch).epsilon(1e-12));
    CHECK(net.m(3, 4) == doctest::Approx(plan.m_branch).epsilon(1e-12));
    CHECK(net.m(5, 6) == doctest::Approx(plan.m_branch).epsilon(1e-12));
    CHECK(net.m == net.m.transpose().eval());
    CHECK(net.m.diagonal().isZero(0.0));
    // six coupled pairs and nothing else
    CHECK((net.m.array() != 0.0).count() == 12);

    REQUIRE(net.ports.size() == 4);
    CHECK(net.ports[0].resonator == 0);
    CHECK(net.ports[1].resonator == 2);
    CHECK(net.ports[2].resonator == 4);
    CHECK(net.ports[3].resonator == 6);
    const double r_expect = 1.0 / (plan.qe_in * plan.fbw);
    for (const PortLoad& p : net.ports) CHECK(p.r == doctest::Approx(r_expect).epsilon(1e-12));
    CHECK(r_expect == doctest::Approx(1.1742849).epsilon(1e-6));
}

TEST_CASE("band edges are geometrically centered and fbw wide") {
    const auto [lo, hi] = band_edges(2.6e9, 0.03);
    CHECK(lo == doctest::Approx(2561292483.548726).epsilon(1e-12));
    CHECK(hi == doctest::Approx(2639292483.548725).epsilon(1e-12));
    CHECK(hi - lo == doctest::Approx(0.03 * 2.6e9).epsilon(1e-12));
    CHECK(std::sqrt(lo * hi) == doctest::Approx(2.6e9).epsilon(1e-12));
}

TEST_CASE("lowpass map hits 0 at center and +/-1 at the band edges") {
    const auto [lo, hi] = band_edges(2.6e9, 0.03);
    CHECK(lowpass_map(2.6e9, 2.6e9, 0.03) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lowpass_map(hi, 2.6e9, 0.03) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lowpass_map(lo, 2.6e9, 0.03) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("linspace grid behavior") {
    const std::vector<double> g = linspace(0.0, 1.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g[4] == 1.0);

    const std::vector<double> one = linspace(2.6e9, 2.8e9, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 2.6e9);

    const std::vector<double> sweep = linspace(2.4e9, 2.8e9, 1601);
    CHECK(sweep[800] == 2.6e9);  // center lands exactly on the default grid

    CHECK_THROWS_AS(linspace(1.0, 2.0, 0), InvalidSpecError);
    CHECK_THROWS_AS(linspace(2.0, 1.0, 5), InvalidSpecError);
}

TEST_CASE("divider response at center: matched input, oracle insertion losses") {
    const CouplingNetwork net = divider_network();
    const SParamSweep sweep = sparameters(net, {2.6e9});
    REQUIRE(sweep.points() == 1);
    const Eigen::MatrixXcd& s = sweep.s[0];

    CHECK(std::abs(s(0, 0)) < 1e-9);
    CHECK(-db(std::abs(s(1, 0))) == doctest::Approx(8.4510).epsilon(1e-4));
    CHECK(-db(std::abs(s(2, 0))) == doctest::Approx(5.4407).epsilon(1e-4));
    CHECK(-db(std::abs(s(3, 0))) == doctest::Approx(2.4304).epsilon(1e-4));
}

TEST_CASE("branch ratio invariant holds at every frequency") {
    const CouplingNetwork net = divider_network();
    const SParamSweep sweep = sparameters(net, linspace(2.3e9, 2.9e9, 401));
    for (const Eigen::MatrixXcd& s : sweep.s) {
        const double r41 = std::abs(s(3, 0)) / std::abs(s(1, 0));
        const double r31 = std::abs(s(2, 0)) / std::abs(s(1, 0));
        CHECK(r41 == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(r31 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    }
}

TEST_CASE("lossless sweep is unitary and reciprocal") {
    const CouplingNetwork net = divider_network();
    const SParamSweep sweep = sparameters(net, linspace(2.5e9, 2.7e9, 41));
    for (const Eigen::MatrixXcd& s : sweep.s) {
        const Eigen::MatrixXcd gram = s.adjoint() * s;
        CHECK((gram - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((s - s.transpose().eval()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("coupling sign flips leave magnitudes unchanged") {
    const CouplingNetwork base = divider_network();
    CouplingNetwork flipped = base;
    flipped.m(0, 1) = -flipped.m(0, 1);
    flipped.m(1, 0) = -flipped.m(1, 0);

    const std::vector<double> freqs = linspace(2.55e9, 2.65e9, 21);
    const SParamSweep a = sparameters(base, freqs);
    const SParamSweep b = sparameters(flipped, freqs);
    for (size_t i = 0; i < freqs.size(); ++i)
        CHECK((a.s[i].cwiseAbs() - b.s[i].cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("finite unloaded Q dissipates power") {
    const CouplingNetwork net = divider_network();
    const SParamSweep lossless = sparameters(net, {2.6e9});
    const SParamSweep lossy = sparameters(net, {2.6e9}, 250.0);

    double total = 0.0;
    for (int q = 0; q < 4; ++q) total += std::norm(lossy.s[0](q, 0));
    CHECK(total < 0.999);  // unitarity broken by loss
    CHECK(std::abs(lossy.s[0](3, 0)) < std::abs(lossless.s[0](3, 0)));
    CHECK(std::abs(lossy.s[0](3, 0)) > 0.5);  // but still passes the band
}

TEST_CASE("critical coupling between two resonators gives full transmission") {
    CouplingNetwork net;
    net.n = 2;
    net.f0 = 2.6e9;
    net.fbw = 0.03;
    net.m = Eigen::MatrixXd::Zero(2, 2);
    const double r = 1.2;
    net.m(0, 1) = net.m(1, 0) = net.fbw * r;  // k = fbw * sqrt(r1 r2)
    net.ports = {{0, r}, {1, r}};

    const SParamSweep sweep = sparameters(net, {2.6e9});
    CHECK(std::abs(sweep.s[0](1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(sweep.s[0](0, 0)) < 1e-12);
}

TEST_CASE("network validation rejects malformed inputs") {
    CouplingNetwork net = divider_network();
    CHECK_NOTHROW(net.validate());

    CouplingNetwork bad = net;
    bad.m(0, 1) *= 2.0;  // asymmetric
    CHECK_THROWS_AS(bad.validate(), InvalidSpecError);

    bad = net;
    bad.m(2, 2) = 0.01;  // self coupling
    CHECK_THROWS_AS(bad.validate(), InvalidSpecError);

    bad = net;
    bad.ports[1].resonator = 0;  // collides with the input port
    CHECK_THROWS_AS(bad.validate(), InvalidSpecError);

    bad = net;
    bad.ports[0].r = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidSpecError);

    bad = net;
    bad.ports[0].resonator = 9;  // out of range
    CHECK_THROWS_AS(bad.validate(), InvalidSpecError);

    CHECK_THROWS_AS(sparameters(net, {}), InvalidSpecError);
}
