#include "cmdp/cli.hpp"
#include "cmdp/instance_io.hpp"
#include "cmdp/instances.hpp"
#include "cmdp/report.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace cmdp;
using report::Json;

namespace {

std::string instance(const std::string& name) { return std::string(CMDP_INSTANCE_DIR) + "/" + name + ".json"; }

cli::CommandOutcome run(std::vector<std::string> args) { return cli::run(args); }

Json json_of(const cli::CommandOutcome& o) { return Json::parse(o.out); }

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("cmdp_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

} // namespace

TEST(Cli, BundledFilesMatchTheBuilders) {
    for (const auto& name : instances::names())
        EXPECT_EQ(read_file(instance(name)), serialize_instance(instances::by_name(name))) << name;
    EXPECT_EQ(run({"generate", "squander", "--eps", "1/2"}).out, serialize_instance(instances::squander(Rational(1, 2))));
}

TEST(Cli, SolveHaviv) {
    const auto o = run({"solve", instance("haviv")});
    EXPECT_EQ(o.exit_code, 0);
    const auto j = json_of(o);
    EXPECT_EQ(j["status"], "optimal");
    EXPECT_EQ(j["policy"], Json({{"y", "a"}}));
    EXPECT_EQ(j["value"], "5/1");
    EXPECT_EQ(j["W"], Json::array({"0/1"}));
}

TEST(Cli, SolveInfeasibleExitsOne) {
    const auto path = temp_file("tight.json", serialize_instance(instances::haviv(Rational::parse("0.04"))));
    const auto o = run({"solve", path});
    EXPECT_EQ(o.exit_code, 1);
    EXPECT_EQ(json_of(o)["status"], "infeasible");
}

TEST(Cli, ResidualHaviv) {
    const auto o = run({"residual", instance("haviv"), "--to", "y"});
    EXPECT_EQ(o.exit_code, 0);
    const auto j = json_of(o);
    EXPECT_EQ(j["slack"], Json::array({"3/40"}));
    EXPECT_EQ(j["residual_bound"], Json::array({"1/20"}));
    EXPECT_EQ(j["time"], 1);
    EXPECT_EQ(run({"residual", instance("haviv"), "--to", "c3_0"}).exit_code, 2);
}

TEST(Cli, SamplePathHaviv) {
    const auto o = run({"samplepath", instance("haviv"), "--policy", "y=a"});
    EXPECT_EQ(o.exit_code, 1);
    const auto j = json_of(o);
    EXPECT_EQ(j["feasible"], false);
    EXPECT_EQ(j["witness"]["index"], 0);
    EXPECT_EQ(j["witness"]["constraint_gain"], Json::array({"-3/40"}));
}

TEST(Cli, CertifySearchAndCheck) {
    const auto found = run({"certify", instance("twochain"), "--policy", "", "--search"});
    EXPECT_EQ(found.exit_code, 0) << found.err;
    EXPECT_EQ(json_of(found)["certificate"]["mu"], Json::array({"1/2"}));

    const auto unsat = run({"certify", instance("haviv"), "--policy", "y=a", "--search"});
    EXPECT_EQ(unsat.exit_code, 1);
    EXPECT_EQ(json_of(unsat)["reason"], "gain_conflict");

    const auto pot = temp_file("pot.json", R"({"x": "-1/2", "a0": "0", "b0": "0"})");
    const auto pass = run({"certify", instance("twochain"), "--policy", "", "--mu", "1/2", "--gain", "1/2",
                           "--potential", pot});
    EXPECT_EQ(pass.exit_code, 0) << pass.err;
    EXPECT_EQ(json_of(pass)["verdict"], "pass");
    const auto fail = run({"certify", instance("twochain"), "--policy", "", "--mu", "0", "--gain", "1/2",
                           "--potential", pot});
    EXPECT_EQ(fail.exit_code, 1);
    EXPECT_EQ(json_of(fail)["first_failure"], "A4");
    EXPECT_EQ(run({"certify", instance("twochain"), "--policy", "", "--mu", "1/2"}).exit_code, 2);
}

TEST(Cli, AuditAndDecompose) {
    const auto audit = run({"audit", instance("haviv")});
    EXPECT_EQ(audit.exit_code, 1);
    EXPECT_EQ(json_of(audit)["consistent"], false);
    EXPECT_EQ(run({"audit", instance("twochain")}).exit_code, 0);

    const auto dec = run({"decompose", instance("haviv"), "--selective"});
    EXPECT_EQ(dec.exit_code, 0);
    const auto j = json_of(dec);
    EXPECT_EQ(j["kept_classes"], Json::array({1, 2}));
    EXPECT_EQ(j["converted"]["constraint_dim"], 2);
    const auto sel = temp_file("sel.json", j["converted"].dump());
    EXPECT_EQ(json_of(run({"solve", sel}))["policy"], Json({{"y", "b"}}));
    EXPECT_EQ(run({"audit", sel}).exit_code, 0);
}

TEST(Cli, DecomposeRejectsPolicyDependentClasses) {
    const Mdp mdp({{"s0", {{"stay", 0, {}, {{0, 1}}}, {"leave", 0, {}, {{1, 1}}}}},
                   {"s1", {{"stay", 0, {}, {{1, 1}}}}}},
                  0, "s0");
    const auto o = run({"decompose", temp_file("nd.json", serialize_instance(mdp))});
    EXPECT_EQ(o.exit_code, 1);
    EXPECT_EQ(json_of(o)["offending"], Json::array({"s0"}));
}

TEST(Cli, SimulateIsReproducible) {
    const std::vector<std::string> args{"simulate", instance("haviv"), "--policy", "y=a", "--steps", "1000",
                                        "--seed", "7", "--trajectory"};
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json_of(a)["trajectory"].size(), 1000u);
}

TEST(Cli, ByteIdenticalAcrossThreadCounts) {
    for (const auto& cmd : std::vector<std::vector<std::string>>{
             {"solve", instance("yacht")},
             {"audit", instance("squander"), "--all-times"},
             {"decompose", instance("yacht")}}) {
        auto one = cmd;
        one.insert(one.begin(), {"--threads", "1"});
        auto four = cmd;
        four.insert(four.begin(), {"--threads", "4"});
        EXPECT_EQ(run(one).out, run(four).out) << cmd[0];
        EXPECT_EQ(run(one).out, run(cmd).out) << cmd[0];
    }
}

TEST(Cli, OutputsEqualTheModuleResults) {
    const Mdp mdp = load_instance(instance("squander"));
    const auto x = mdp.initial_state();
    EXPECT_EQ(run({"solve", instance("squander")}).out, report::dump(report::solve(mdp, solve(mdp, x))));
    const auto pi = Policy::parse(mdp, "y=save,z=yacht");
    EXPECT_EQ(run({"evaluate", instance("squander"), "--policy", "y=save,z=yacht"}).out,
              report::dump(report::evaluation(mdp, evaluate(mdp, pi, x))));
    EXPECT_EQ(run({"audit", instance("squander")}).out,
              report::dump(report::audit(mdp, audit_time_consistency(mdp, x))));
    EXPECT_EQ(run({"evaluate", instance("squander"), "--policy", "y=save,z=yacht", "--start", "z"}).out,
              report::dump(report::evaluation(mdp, evaluate(mdp, pi, mdp.state_index("z")))));
}

TEST(Cli, UsageAndInputErrorsExitTwo) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"solve"},
             {"solve", instance("haviv"), "--bogus"},
             {"solve", "/nonexistent/file.json"},
             {"evaluate", instance("haviv")},
             {"evaluate", instance("haviv"), "--policy", "y=z"},
             {"solve", instance("haviv"), "--start", "nowhere"},
             {"--format", "table", "solve", instance("haviv")},
             {"simulate", instance("haviv"), "--policy", "y=a", "--steps", "0", "--seed", "1"},
             {"generate", "unknown"},
         }) {
        const auto o = run(args);
        EXPECT_EQ(o.exit_code, 2) << (args.empty() ? "" : args[0]);
        EXPECT_TRUE(o.out.empty());
        EXPECT_FALSE(o.err.empty());
    }
    const auto bad = run({"solve", instance("haviv"), "--bogus"});
    EXPECT_NE(bad.err.find("Usage"), std::string::npos);
}

TEST(Cli, ValidateReportsViolations) {
    EXPECT_EQ(run({"validate", instance("haviv")}).exit_code, 0);
    const auto path = temp_file("bad.json", R"({"constraint_dim": 1, "initial_state": "u", "states": [
        {"id": "u", "actions": [{"id": "a", "reward": "0", "constraint": [], "transitions": {"u": "0.999"}}]}]})");
    const auto o = run({"validate", path});
    EXPECT_EQ(o.exit_code, 1);
    EXPECT_EQ(json_of(o)["violations"].size(), 2u);
    EXPECT_EQ(run({"validate", temp_file("syntax.json", "{")}).exit_code, 2);
}

TEST(Cli, PolicyCapFromEnvironment) {
    setenv("CMDP_POLICY_CAP", "1", 1);
    const auto o = run({"solve", instance("yacht")});
    unsetenv("CMDP_POLICY_CAP");
    EXPECT_EQ(o.exit_code, 2);
    EXPECT_NE(o.err.find("CMDP_POLICY_CAP"), std::string::npos);
    EXPECT_EQ(run({"solve", instance("yacht")}).exit_code, 0);
}

TEST(Cli, HelpExitsZero) {
    const auto o = run({"--help"});
    EXPECT_EQ(o.exit_code, 0);
    EXPECT_NE(o.out.find("samplepath"), std::string::npos);
}
