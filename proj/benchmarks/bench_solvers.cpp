#include <benchmark/benchmark.h>

#include "fpd/coupling.hpp"
#include "fpd/mna.hpp"
#include "fpd/netlist.hpp"
#include "fpd/prototype.hpp"

namespace {

fpd::CouplingNetwork divider_network() {
    const fpd::GValues gv = fpd::chebyshev_gvalues(3, 0.04321);
    return fpd::build_fpd_network(fpd::coupling_plan(gv, 0.03, {1.0, 2.0, 4.0}, 2.6e9));
}

void bm_coupling_sweep(benchmark::State& state) {
    const fpd::CouplingNetwork net = divider_network();
    const std::vector<double> freqs = fpd::linspace(2.4e9, 2.8e9, state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpd::sparameters(net, freqs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_mna_sweep(benchmark::State& state) {
    const fpd::Netlist net = fpd::coupling_to_netlist(divider_network(), 5e-12, 50.0);
    const std::vector<double> freqs = fpd::linspace(2.4e9, 2.8e9, state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpd::sparams_mna(net, freqs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_netlist_parse(benchmark::State& state) {
    const std::string text = fpd::serialize_netlist(
        fpd::coupling_to_netlist(divider_network(), 5e-12, 50.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpd::parse_netlist(text));
    }
    state.SetBytesProcessed(state.iterations() * text.size());
}

void bm_synthesis(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(divider_network());
    }
}

}  // namespace

BENCHMARK(bm_coupling_sweep)->Arg(101)->Arg(401)->Arg(1601);
BENCHMARK(bm_mna_sweep)->Arg(101)->Arg(401)->Arg(1601);
BENCHMARK(bm_netlist_parse);
BENCHMARK(bm_synthesis);

BENCHMARK_MAIN();
