#include "fpd/planfile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fpd {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "fpd-plan-1";

json network_to_json(const CouplingNetwork& net) {
    json couplings = json::array();
    for (int i = 0; i < net.n; ++i)
        for (int j = i + 1; j < net.n; ++j)
            if (net.m(i, j) != 0.0) couplings.push_back({i, j, net.m(i, j)});
    json ports = json::array();
    for (const PortLoad& p : net.ports) ports.push_back({{"resonator", p.resonator}, {"r", p.r}});
    return {{"resonators", net.n},
            {"f0_hz", net.f0},
            {"fbw", net.fbw},
            {"couplings", couplings},
            {"ports", ports}};
}

CouplingNetwork network_from_json(const json& j) {
    CouplingNetwork net;
    net.n = j.at("resonators").get<int>();
    if (net.n < 1) throw ParseError("plan field 'network.resonators' must be positive");
    net.f0 = j.at("f0_hz").get<double>();
    net.fbw = j.at("fbw").get<double>();
    net.m = Eigen::MatrixXd::Zero(net.n, net.n);
    for (const json& c : j.at("couplings")) {
        const int a = c.at(0).get<int>();
        const int b = c.at(1).get<int>();
        if (a < 0 || b < 0 || a >= net.n || b >= net.n)
            throw ParseError("plan field 'network.couplings' indexes outside the network");
        const double v = c.at(2).get<double>();
        net.m(a, b) = net.m(b, a) = v;
    }
    for (const json& p : j.at("ports"))
        net.ports.push_back({p.at("resonator").get<int>(), p.at("r").get<double>()});
    return net;
}

}  // namespace

PlanFile make_plan(const DividerSpec& spec) {
    spec.validate();
    if (spec.order != 3)
        throw InvalidSpecError("the divider pipeline is defined for order-3 prototypes");
    PlanFile out;
    out.spec = spec;
    out.gvalues = chebyshev_gvalues(spec.order, spec.ripple_db);
    out.plan = coupling_plan(out.gvalues, spec.fbw, spec.ratios, spec.f0);
    out.network = build_fpd_network(out.plan);
    return out;
}

std::string plan_to_json(const PlanFile& plan) {
    json j = {{"schema", kSchema},
              {"divider",
               {{"f0_hz", plan.spec.f0},
                {"fbw", plan.spec.fbw},
                {"z0_ohm", plan.spec.z0},
                {"ratios", plan.spec.ratios},
                {"order", plan.spec.order},
                {"ripple_db", plan.spec.ripple_db}}},
              {"gvalues", plan.gvalues.g},
              {"plan",
               {{"m_branch", plan.plan.m_branch},
                {"m_split", plan.plan.m_split},
                {"qe_in", plan.plan.qe_in},
                {"qe_out", plan.plan.qe_out},
                {"f0_hz", plan.plan.f0},
                {"fbw", plan.plan.fbw}}},
              {"network", network_to_json(plan.network)}};
    return j.dump(2) + "\n";
}

PlanFile plan_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("plan is not valid JSON: ") + e.what());
    }
    try {
        if (!j.contains("schema") || j.at("schema").get<std::string>() != kSchema)
            throw ParseError("plan field 'schema' missing or unsupported");
        PlanFile plan;
        const json& d = j.at("divider");
        plan.spec.f0 = d.at("f0_hz").get<double>();
        plan.spec.fbw = d.at("fbw").get<double>();
        plan.spec.z0 = d.at("z0_ohm").get<double>();
        plan.spec.ratios = d.at("ratios").get<std::vector<double>>();
        plan.spec.order = d.at("order").get<int>();
        plan.spec.ripple_db = d.at("ripple_db").get<double>();
        plan.gvalues.g = j.at("gvalues").get<std::vector<double>>();
        const json& p = j.at("plan");
        plan.plan.m_branch = p.at("m_branch").get<double>();
        plan.plan.m_split = p.at("m_split").get<std::vector<double>>();
        plan.plan.qe_in = p.at("qe_in").get<double>();
        plan.plan.qe_out = p.at("qe_out").get<double>();
        plan.plan.f0 = p.at("f0_hz").get<double>();
        plan.plan.fbw = p.at("fbw").get<double>();
        plan.network = network_from_json(j.at("network"));
        return plan;
    } catch (const json::exception& e) {
        // nlohmann messages name the offending key/index.
        throw ParseError(std::string("plan schema error: ") + e.what());
    }
}

void save_plan(const PlanFile& plan, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << plan_to_json(plan);
    if (!out) throw IoError("write failed for " + path);
}

PlanFile load_plan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return plan_from_json(ss.str());
}

}  // namespace fpd
