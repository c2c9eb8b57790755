#include "cmdp/instance_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cmdp {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw InstanceError("schema violation at " + where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object())
        schema_error(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        schema_error(where, std::string("missing key \"") + key + "\"");
    return *it;
}

Rational number(const json& value, const std::string& where) {
    if (!value.is_string())
        schema_error(where, "numbers must be strings (\"0.125\" or \"1/8\")");
    try {
        return Rational::parse(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
        schema_error(where, e.what());
    }
}

} // namespace

Mdp parse_instance_unchecked(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InstanceError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }

    const auto& dim_node = require(doc, "constraint_dim", "document");
    if (!dim_node.is_number_integer() || dim_node.get<long long>() < 0)
        schema_error("constraint_dim", "expected a nonnegative integer");
    const auto dim = static_cast<std::size_t>(dim_node.get<long long>());

    const auto& init_node = require(doc, "initial_state", "document");
    if (!init_node.is_string())
        schema_error("initial_state", "expected a string");

    const auto& states_node = require(doc, "states", "document");
    if (!states_node.is_array())
        schema_error("states", "expected an array");

    // First pass collects labels so transitions may refer forward.
    std::unordered_map<std::string, StateIndex> index;
    for (std::size_t s = 0; s < states_node.size(); ++s) {
        const std::string where = "states[" + std::to_string(s) + "]";
        const auto& id = require(states_node[s], "id", where);
        if (!id.is_string())
            schema_error(where + ".id", "expected a string");
        index.try_emplace(id.get<std::string>(), s);
    }

    std::vector<State> states;
    states.reserve(states_node.size());
    for (std::size_t s = 0; s < states_node.size(); ++s) {
        const std::string where = "states[" + std::to_string(s) + "]";
        State st;
        st.id = states_node[s]["id"].get<std::string>();
        const auto& actions_node = require(states_node[s], "actions", where);
        if (!actions_node.is_array())
            schema_error(where + ".actions", "expected an array");
        for (std::size_t a = 0; a < actions_node.size(); ++a) {
            const std::string aw = where + ".actions[" + std::to_string(a) + "]";
            const auto& an = actions_node[a];
            Action act;
            const auto& id = require(an, "id", aw);
            if (!id.is_string())
                schema_error(aw + ".id", "expected a string");
            act.id = id.get<std::string>();
            act.reward = number(require(an, "reward", aw), aw + ".reward");
            const auto& cn = require(an, "constraint", aw);
            if (!cn.is_array())
                schema_error(aw + ".constraint", "expected an array");
            for (std::size_t j = 0; j < cn.size(); ++j)
                act.constraint.push_back(number(cn[j], aw + ".constraint[" + std::to_string(j) + "]"));
            const auto& tn = require(an, "transitions", aw);
            if (!tn.is_object())
                schema_error(aw + ".transitions", "expected an object");
            for (const auto& [label, p] : tn.items()) {
                auto it = index.find(label);
                if (it == index.end())
                    schema_error(aw + ".transitions", "unknown state '" + label + "'");
                act.transitions.push_back({it->second, number(p, aw + ".transitions." + label)});
            }
            st.actions.push_back(std::move(act));
        }
        states.push_back(std::move(st));
    }
    return Mdp(std::move(states), dim, init_node.get<std::string>());
}

Mdp parse_instance(std::string_view text) {
    Mdp mdp = parse_instance_unchecked(text);
    auto report = validate(mdp);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        std::string msg = "validation failed (" + std::to_string(report.violations.size()) +
                          " violation(s)); first: " + std::string(to_string(v.kind));
        if (!v.state.empty())
            msg += " at state '" + v.state + "'";
        if (!v.action.empty())
            msg += " action '" + v.action + "'";
        msg += ": " + v.detail;
        throw InstanceError(msg, std::move(report));
    }
    return mdp;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InstanceError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Mdp load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

std::string serialize_instance(const Mdp& mdp) {
    nlohmann::ordered_json doc;
    doc["constraint_dim"] = mdp.constraint_dim();
    doc["initial_state"] = mdp.initial_label();
    auto states = nlohmann::ordered_json::array();
    for (const auto& st : mdp.states()) {
        nlohmann::ordered_json sj;
        sj["id"] = st.id;
        auto actions = nlohmann::ordered_json::array();
        for (const auto& act : st.actions) {
            nlohmann::ordered_json aj;
            aj["id"] = act.id;
            aj["reward"] = act.reward.str();
            aj["constraint"] = to_strings(act.constraint);
            nlohmann::ordered_json tj = nlohmann::ordered_json::object();
            for (const auto& tr : act.transitions)
                tj[mdp.state(tr.target).id] = tr.probability.str();
            aj["transitions"] = std::move(tj);
            actions.push_back(std::move(aj));
        }
        sj["actions"] = std::move(actions);
        states.push_back(std::move(sj));
    }
    doc["states"] = std::move(states);
    return doc.dump(2) + "\n";
}

} // namespace cmdp
