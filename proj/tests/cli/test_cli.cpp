// End-to-end checks of the installed command-line surface: spawns the
// real binary, captures combined output, and asserts on text + exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/stat.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fpd/coupling.hpp"
#include "fpd/planfile.hpp"
#include "fpd/sweep_io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;

    bool contains(const std::string& needle) const {
        return output.find(needle) != std::string::npos;
    }
};

const std::string& work_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/fpd_cli_XXXXXX";
        const char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

RunResult run(const std::string& args) {
    const std::string cmd =
        "cd " + work_dir() + " && " + FPD_CLI_PATH + " " + args + " 2>&1";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

bool file_exists(const std::string& name) {
    struct stat st{};
    return stat((work_dir() + "/" + name).c_str(), &st) == 0;
}

}  // namespace

TEST_CASE("synth prints the coupling summary and writes the plan") {
    const RunResult res =
        run("synth --f0 2.6e9 --fbw 0.03 --ripple 0.04321 --ratios 1,2,4 -o plan.json");
    CHECK(res.exit_code == 0);
    CHECK(res.contains("g-values: 1.0000 0.8516 1.1032 0.8516 1.0000"));
    CHECK(res.contains("M_branch = 0.0310"));
    CHECK(res.contains("M_split  = 0.0117 0.0165 0.0234"));
    CHECK(res.contains("Qe       = 28.3861"));
    CHECK(res.contains("wrote plan.json"));
    CHECK(file_exists("plan.json"));
}

TEST_CASE("synth accepts a return-loss spec instead of ripple") {
    const RunResult res = run("synth --f0 2.6e9 --fbw 0.03 --rl 20 --ratios 1,2,4 -o rl.json");
    CHECK(res.exit_code == 0);
    CHECK(res.contains("wrote rl.json"));
    CHECK(file_exists("rl.json"));
}

TEST_CASE("synth flag validation uses exit code 2") {
    CHECK(run("synth --f0 2.6e9 --fbw 0.03 --ratios 1,2,4").exit_code == 2);
    CHECK(run("synth --f0 2.6e9 --fbw 0.03 --ripple 0.04 --rl 20 --ratios 1,2,4").exit_code == 2);
    CHECK(run("synth --fbw 0.03 --ripple 0.04 --ratios 1,2,4").exit_code == 2);
    CHECK(run("synth --f0 2.6e9 --fbw 2.0 --ripple 0.04 --ratios 1,2,4").exit_code == 2);
    CHECK(run("synth --f0 2.6e9 --fbw 0.03 --ripple 0.04 --ratios 1,2,4 --order 4").exit_code ==
          2);
}

TEST_CASE("sim produces touchstone and csv sweeps") {
    const RunResult res = run("sim --plan plan.json --touchstone out.s4p --csv out.csv");
    CHECK(res.exit_code == 0);
    CHECK(res.contains("wrote out.s4p (1601 points, 4 ports)"));
    CHECK(res.contains("wrote out.csv"));

    std::ifstream ts(work_dir() + "/out.s4p");
    std::string header;
    std::getline(ts, header);
    CHECK(header == "# HZ S RI R 50");

    std::ifstream csv(work_dir() + "/out.csv");
    std::getline(csv, header);
    CHECK(header.rfind("freq_hz,S11_db,S21_db,S31_db,S41_db,S12_db", 0) == 0);
}

TEST_CASE("sim defaults the touchstone name to the port count") {
    const RunResult res = run("sim --plan plan.json --points 11");
    CHECK(res.exit_code == 0);
    CHECK(res.contains("wrote sweep.s4p (11 points, 4 ports)"));
    CHECK(file_exists("sweep.s4p"));
}

TEST_CASE("sim rejects a nonpositive unloaded Q") {
    CHECK(run("sim --plan plan.json --qu 0").exit_code == 2);
    CHECK(run("sim --plan plan.json --qu -50").exit_code == 2);
    CHECK(run("sim --plan plan.json --qu 250 --touchstone lossy.s4p").exit_code == 0);
}

TEST_CASE("missing and malformed inputs use exit code 4") {
    CHECK(run("sim --plan nosuch.json").exit_code == 4);
    const RunResult bad = run("report --touchstone out.csv --f0 2.6e9 --fbw 0.03");
    CHECK(bad.exit_code == 4);

    std::ofstream(work_dir() + "/broken.json") << "{ not json";
    CHECK(run("sim --plan broken.json").exit_code == 4);

    std::ofstream(work_dir() + "/schema.json") << "{\"schema\":\"other\"}";
    const RunResult schema = run("sim --plan schema.json");
    CHECK(schema.exit_code == 4);
    CHECK(schema.contains("schema"));
}

TEST_CASE("netlist export and nodal re-simulation agree with the plan sweep") {
    CHECK(run("netlist --plan plan.json --c0 5e-12 -o divider.ckt").exit_code == 0);
    CHECK(file_exists("divider.ckt"));

    const RunResult res = run("mna --netlist divider.ckt --touchstone mna.s4p --csv mna.csv");
    CHECK(res.exit_code == 0);
    CHECK(res.contains("wrote mna.s4p (1601 points, 4 ports)"));

    // both engines produce the same passband picture
    const fpd::SParamSweep a = fpd::read_touchstone(work_dir() + "/out.s4p");
    const fpd::SParamSweep b = fpd::read_touchstone(work_dir() + "/mna.s4p");
    REQUIRE(a.points() == b.points());
    double worst = 0.0;
    for (size_t i = 0; i < a.s.size(); ++i)
        worst = std::max(worst, (a.s[i] - b.s[i]).cwiseAbs().maxCoeff());
    CHECK(worst < 1e-6);
}

TEST_CASE("mna rejects a structurally bad netlist with a located message") {
    std::ofstream(work_dir() + "/bad.ckt") << "C1 1 0 5p\nL1 1 0 oops\nP1 1 0 50\n";
    const RunResult res = run("mna --netlist bad.ckt");
    CHECK(res.exit_code == 4);
    CHECK(res.contains("line 2"));
}

TEST_CASE("report passes the synthesized divider and fails a 30 dB floor") {
    const RunResult pass =
        run("report --touchstone out.s4p --f0 2.6e9 --fbw 0.03 --rl-min 20 --ratios 1,2,4");
    CHECK(pass.exit_code == 0);
    CHECK(pass.contains("min in-band return loss: 20.04 dB (target 20.00 dB: pass)"));
    CHECK(pass.contains("insertion loss at 2600000000 Hz: port 2: 8.45 dB, port 3: 5.44 dB, "
                        "port 4: 2.43 dB"));
    CHECK(pass.contains("division weights at center: 1.00 : 2.00 : 4.00"));
    CHECK(pass.contains("in-band isolation minima: S23 ="));
    CHECK(pass.contains("10.6 dB"));
    CHECK(pass.contains("result: PASS"));

    const RunResult fail = run("report --touchstone out.s4p --f0 2.6e9 --fbw 0.03 --rl-min 30");
    CHECK(fail.exit_code == 3);
    CHECK(fail.contains("result: FAIL (min in-band return loss)"));
}

TEST_CASE("extract recovers Qe and k from generated fixtures") {
    // fixtures written through the library, read back through the CLI
    {
        fpd::CouplingNetwork net;
        net.n = 1;
        net.f0 = 2.6e9;
        net.fbw = 0.03;
        net.m = Eigen::MatrixXd::Zero(1, 1);
        net.ports = {{0, 1.0 / (28.387 * net.fbw)}};
        const auto sweep = fpd::sparameters(
            net, fpd::linspace(2.6e9 * (1 - 0.088), 2.6e9 * (1 + 0.088), 2001));
        fpd::write_touchstone(sweep, work_dir() + "/qe.s1p");
    }
    {
        fpd::CouplingNetwork net;
        net.n = 2;
        net.f0 = 2.6e9;
        net.fbw = 0.031;
        net.m = Eigen::MatrixXd::Zero(2, 2);
        net.m(0, 1) = net.m(1, 0) = 0.031;
        net.ports = {{0, 0.1}, {1, 0.1}};
        const auto sweep = fpd::sparameters(
            net, fpd::linspace(2.6e9 * (1 - 0.062), 2.6e9 * (1 + 0.062), 4001));
        fpd::write_touchstone(sweep, work_dir() + "/k.s2p");
    }

    const RunResult qe = run("extract --quantity qe --touchstone qe.s1p");
    CHECK(qe.exit_code == 0);
    CHECK(qe.contains("Qe = 28."));
    CHECK(qe.contains("f0 detected at"));

    const RunResult k = run("extract --quantity k --touchstone k.s2p --f0-hint 2.6e9");
    CHECK(k.exit_code == 0);
    CHECK(k.contains("k = 0.03"));

    CHECK(run("extract --quantity z --touchstone qe.s1p").exit_code == 2);
    // a sweep with no usable feature is a validation failure, not a crash
    CHECK(run("extract --quantity k --touchstone qe.s1p").exit_code == 2);
}

TEST_CASE("tune recovers a perturbed plan and respects the budget") {
    // knock the light-branch coupling 10% high, through the plan file
    fpd::PlanFile plan = fpd::load_plan(work_dir() + "/plan.json");
    plan.network.m(0, 1) *= 1.10;
    plan.network.m(1, 0) = plan.network.m(0, 1);
    fpd::save_plan(plan, work_dir() + "/pert.json");

    const RunResult ok = run("tune --plan pert.json -o tuned.json");
    CHECK(ok.exit_code == 0);
    CHECK(ok.contains("converged"));
    CHECK(file_exists("tuned.json"));

    const RunResult sim = run("sim --plan tuned.json --touchstone tuned.s4p");
    CHECK(sim.exit_code == 0);
    const RunResult rep =
        run("report --touchstone tuned.s4p --f0 2.6e9 --fbw 0.03 --rl-min 20 --ratios 1,2,4");
    CHECK(rep.exit_code == 0);
    CHECK(rep.contains("result: PASS"));

    const RunResult starve = run("tune --plan pert.json -o starved.json --max-evals 10");
    CHECK(starve.exit_code == 3);
    CHECK(starve.contains("not converged"));
    CHECK(file_exists("starved.json"));  // best effort is still written
}

TEST_CASE("ustrip analyzes and synthesizes line geometry") {
    const RunResult synth = run("ustrip --er 10.7 --height 1.27e-3 --z0 50 --f 2.6e9");
    CHECK(synth.exit_code == 0);
    CHECK(synth.contains("w    = 1.1257 mm"));
    CHECK(synth.contains("z0   = 50.0000 ohm"));
    CHECK(synth.contains("eeff = 7.1245"));
    CHECK(synth.contains("lambda_g/2 = 21.5993 mm"));
    CHECK(synth.contains("solr side estimate = 5.5248 mm"));

    const RunResult analyze = run("ustrip --er 10.7 --height 1.27e-3 --w 1.125695e-3");
    CHECK(analyze.exit_code == 0);
    CHECK(analyze.contains("z0   = 50.0000 ohm"));

    CHECK(run("ustrip --er 10.7 --height 1.27e-3 --w 1e-3 --z0 50").exit_code == 2);
    CHECK(run("ustrip --er 10.7 --height 1.27e-3").exit_code == 2);
}

TEST_CASE("top-level help lists every subcommand") {
    const RunResult res = run("--help");
    CHECK(res.exit_code == 0);
    for (const char* cmd : {"synth", "sim", "netlist", "mna", "extract", "tune", "ustrip",
                            "report"})
        CHECK(res.contains(cmd));
    CHECK(run("").exit_code == 2);            // a subcommand is required
    CHECK(run("frobnicate").exit_code == 2);  // unknown subcommand
}
