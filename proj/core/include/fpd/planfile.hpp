#pragma once

#include <string>

#include "fpd/coupling.hpp"
#include "fpd/prototype.hpp"

namespace fpd {

// Everything a divider design carries between commands: the requirements
// that produced it, the prototype values, the coupling plan, and the network
// the sweeps run on. Tuning rewrites only the network section.
struct PlanFile {
    DividerSpec spec;
    GValues gvalues;
    CouplingPlan plan;
    CouplingNetwork network;
};

// Full synthesis pipeline for an order-3 spec.
PlanFile make_plan(const DividerSpec& spec);

// JSON with schema tag "fpd-plan-1"; numbers round-trip exactly
// (deserialize(serialize(x)) == x field for field). parse throws ParseError
// naming the offending field.
std::string plan_to_json(const PlanFile& plan);
PlanFile plan_from_json(const std::string& text);

void save_plan(const PlanFile& plan, const std::string& path);
PlanFile load_plan(const std::string& path);

}  // namespace fpd
