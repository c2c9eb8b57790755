#include "cmdp/cli.hpp"

#include "cmdp/certificate.hpp"
#include "cmdp/chain.hpp"
#include "cmdp/instance_io.hpp"
#include "cmdp/instances.hpp"
#include "cmdp/report.hpp"
#include "cmdp/residual.hpp"
#include "cmdp/samplepath.hpp"
#include "cmdp/simulate.hpp"
#include "cmdp/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace cmdp::cli {

namespace {

using report::Json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Option values for every subcommand; unused fields stay at their defaults.
struct Args {
    std::string file;
    std::string start;
    std::string policy;
    std::string to;
    std::optional<std::size_t> time;
    std::optional<std::string> mu;
    std::optional<std::string> gain;
    std::optional<std::string> potential;
    bool search = false;
    bool all_times = false;
    bool selective = false;
    bool trajectory = false;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::string name;
    std::string eps = "1/10";
    unsigned threads = 1;
    std::string format = "json";
};

std::uint64_t policy_cap() {
    const char* env = std::getenv("CMDP_POLICY_CAP");
    if (!env || !*env)
        return default_policy_cap;
    try {
        std::size_t used = 0;
        const auto cap = std::stoull(env, &used);
        if (used != std::string(env).size())
            throw std::invalid_argument("trailing characters");
        return cap;
    } catch (const std::exception&) {
        throw UsageError("CMDP_POLICY_CAP must be a nonnegative integer, got '" + std::string(env) + "'");
    }
}

StateIndex start_state(const Mdp& mdp, const Args& a) {
    return a.start.empty() ? mdp.initial_state() : mdp.state_index(a.start);
}

RationalVector parse_list(const std::string& text) {
    RationalVector out;
    std::size_t pos = 0;
    while (pos <= text.size() && !text.empty()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos)
            comma = text.size();
        out.push_back(Rational::parse(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

Certificate read_certificate(const Mdp& mdp, const Args& a) {
    Certificate cert;
    cert.mu = parse_list(*a.mu);
    cert.gain = Rational::parse(*a.gain);
    cert.potential.assign(mdp.size(), std::nullopt);
    Json doc;
    try {
        doc = Json::parse(read_file(*a.potential));
    } catch (const Json::parse_error& e) {
        throw InstanceError("potential file: syntax error at byte " + std::to_string(e.byte));
    }
    if (!doc.is_object())
        throw InstanceError("potential file must be an object of state -> \"p/q\"");
    for (const auto& [label, value] : doc.items()) {
        if (!value.is_string())
            throw InstanceError("potential file: value for '" + label + "' must be a string");
        cert.potential[mdp.state_index(label)] = Rational::parse(value.get<std::string>());
    }
    return cert;
}

CommandOutcome emit(int code, const Json& j) { return {code, report::dump(j), ""}; }

CommandOutcome dispatch(const std::string& cmd, const Args& a) {
    const SolveOptions solve_opts{policy_cap(), std::max(1u, a.threads)};

    if (cmd == "generate") {
        const Mdp mdp = instances::by_name(a.name, Rational::parse(a.eps));
        return {0, serialize_instance(mdp), ""};
    }

    if (cmd == "validate") {
        const Mdp mdp = parse_instance_unchecked(read_file(a.file));
        const auto rep = validate(mdp);
        return emit(rep.ok() ? 0 : 1, report::validation(rep));
    }

    const Mdp mdp = load_instance(a.file);
    const StateIndex x = start_state(mdp, a);

    if (cmd == "solve") {
        const auto res = solve(mdp, x, solve_opts);
        return emit(res.optimal() ? 0 : 1, report::solve(mdp, res));
    }
    if (cmd == "evaluate") {
        const Policy pi = Policy::parse(mdp, a.policy);
        return emit(0, report::evaluation(mdp, evaluate(mdp, pi, x)));
    }
    if (cmd == "residual") {
        Policy pi;
        if (a.policy.empty()) {
            const auto res = solve(mdp, x, solve_opts);
            if (!res.optimal())
                return emit(1, {{"status", "infeasible"}, {"solve", report::solve(mdp, res)}});
            pi = *res.policy;
        } else {
            pi = Policy::parse(mdp, a.policy);
        }
        const auto visit = residual_slack(mdp, pi, x, mdp.state_index(a.to), a.time);
        Json out = report::residual(mdp, visit, build_residual_problem(mdp, visit));
        out["policy"] = report::policy(mdp, pi);
        return emit(0, out);
    }
    if (cmd == "certify") {
        const Policy pi = Policy::parse(mdp, a.policy);
        if (a.search) {
            const auto found = find_certificate(mdp, x, pi);
            return emit(found.found() ? 0 : 1, report::certificate_search(mdp, found));
        }
        if (!a.mu || !a.gain || !a.potential)
            throw UsageError("certify: check mode needs --mu, --gain and --potential (or use --search)");
        const auto rep = check_certificate(mdp, x, pi, read_certificate(mdp, a));
        return emit(rep.pass() ? 0 : 1, report::certificate_check(mdp, rep));
    }
    if (cmd == "audit") {
        AuditOptions opts;
        opts.all_times = a.all_times;
        opts.solve = solve_opts;
        const auto rep = audit_time_consistency(mdp, x, opts);
        return emit(rep.consistent() ? 0 : 1, report::audit(mdp, rep));
    }
    if (cmd == "samplepath") {
        const auto v = samplepath_feasible(mdp, Policy::parse(mdp, a.policy), x);
        return emit(v.feasible ? 0 : 1, report::samplepath(mdp, v));
    }
    if (cmd == "decompose") {
        try {
            const auto classes = trans_policy_classes(mdp, solve_opts.policy_cap);
            const auto control = controllable_classes(mdp, x, solve_opts.policy_cap);
            const auto kept = converted_classes(mdp, x, a.selective, solve_opts.policy_cap);
            const Mdp converted = a.selective ? selective_convert(mdp, x, solve_opts.policy_cap)
                                              : convert_to_expected(mdp, x, solve_opts.policy_cap);
            Json out = report::decomposition(mdp, classes);
            out["decomposable"] = true;
            out["selective"] = a.selective;
            out["controllability"] = report::controllability(mdp, control);
            out["kept_classes"] = kept;
            out["converted"] = Json::parse(serialize_instance(converted));
            return emit(0, out);
        } catch (const NotDecomposable& e) {
            return emit(1, {{"decomposable", false},
                            {"offending", report::states(mdp, e.offending())},
                            {"detail", e.what()}});
        }
    }
    if (cmd == "simulate") {
        const Policy pi = Policy::parse(mdp, a.policy);
        const auto sim = simulate(mdp, pi, x, a.steps, a.seed);
        return emit(0, report::simulation(mdp, sim, evaluate(mdp, pi, x), a.trajectory));
    }
    throw UsageError("unknown command '" + cmd + "'");
}

} // namespace

CommandOutcome run(const std::vector<std::string>& argv) {
    Args a;
    CLI::App app{"Exact constrained average-reward MDP toolkit", "cmdp"};
    app.require_subcommand(1);
    app.add_option("--threads", a.threads, "Worker threads for policy enumeration");
    app.add_option("--format", a.format, "Output format (only json)")->check(CLI::IsMember({"json"}));

    auto file_cmd = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("FILE", a.file, "Instance document")->required();
        sub->add_option("--start", a.start, "Start state (default: the instance's initial state)");
        return sub;
    };
    auto policy_opt = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--policy", a.policy, "Comma-separated state=action pairs");
        if (required)
            opt->required();
    };

    app.add_subcommand("validate", "Check instance invariants")
        ->add_option("FILE", a.file, "Instance document")
        ->required();
    file_cmd("solve", "Maximize V(x) subject to W(x) >= 0");
    policy_opt(file_cmd("evaluate", "Exact V and W of a policy"), true);
    {
        auto* sub = file_cmd("residual", "Residual slackness at a reachable state");
        sub->add_option("--to", a.to, "Reached state")->required();
        sub->add_option("--time", a.time, "Time index (default: first visit)");
        policy_opt(sub, false);
    }
    {
        auto* sub = file_cmd("certify", "Check or search an optimality certificate");
        policy_opt(sub, true);
        sub->add_option("--mu", a.mu, "Comma-separated multipliers");
        sub->add_option("--gain", a.gain, "Gain constant");
        sub->add_option("--potential", a.potential, "JSON file mapping state -> potential");
        sub->add_flag("--search", a.search, "Search for a certificate");
    }
    file_cmd("audit", "Time-consistency audit of the optimal policy")
        ->add_flag("--all-times", a.all_times, "Audit every visit time, not only the first");
    policy_opt(file_cmd("samplepath", "Almost-sure constraint feasibility"), true);
    file_cmd("decompose", "Per-class expected-constraint conversion")
        ->add_flag("--selective", a.selective, "Constrain only controllable classes");
    {
        auto* sub = file_cmd("simulate", "Seeded Monte Carlo run");
        policy_opt(sub, true);
        sub->add_option("--steps", a.steps, "Horizon T")->required()->check(CLI::PositiveNumber);
        sub->add_option("--seed", a.seed, "Generator seed")->required();
        sub->add_flag("--trajectory", a.trajectory, "Include the visited states");
    }
    {
        auto* sub = app.add_subcommand("generate", "Print a bundled instance document");
        sub->add_option("NAME", a.name, "haviv, squander, yacht or twochain")
            ->required()
            ->check(CLI::IsMember(instances::names()));
        sub->add_option("--eps", a.eps, "Lottery win probability (squander, yacht)");
    }

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {0, app.help(), ""};
    } catch (const CLI::ParseError& e) {
        return {2, "", std::string("error: ") + e.what() + "\n\n" + app.help()};
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, a);
    } catch (const UsageError& e) {
        return {2, "", std::string("error: ") + e.what() + "\n\n" + app.help()};
    } catch (const PolicyCapExceeded& e) {
        return {2, "", std::string("error: ") + e.what() + " (raise CMDP_POLICY_CAP)\n"};
    } catch (const std::exception& e) {
        return {2, "", std::string("error: ") + e.what() + "\n"};
    }
}

} // namespace cmdp::cli
