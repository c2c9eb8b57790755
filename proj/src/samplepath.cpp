#include "cmdp/samplepath.hpp"

#include "cmdp/chain.hpp"

#include <algorithm>

namespace cmdp {

SamplePathVerdict samplepath_feasible(const Mdp& mdp, const Policy& policy, StateIndex x) {
    SamplePathVerdict v;
    v.evaluation = evaluate(mdp, policy, x);
    const auto& ev = v.evaluation;
    for (std::size_t k = 0; k < ev.decomposition.classes.size(); ++k) {
        if (ev.absorption[k].sign() <= 0 || nonnegative(ev.class_gains[k].constraint))
            continue;
        v.feasible = false;
        v.witness = k;
        v.witness_states = ev.decomposition.classes[k];
        v.witness_gain = ev.class_gains[k].constraint;
        break;
    }
    return v;
}

namespace {

std::vector<StateSet> policy_graph(const Mdp& mdp, const Policy& policy) {
    std::vector<StateSet> succ(mdp.size());
    for (StateIndex s = 0; s < mdp.size(); ++s)
        for (const auto& tr : mdp.action(s, policy[s]).transitions)
            if (tr.probability.sign() > 0)
                succ[s].push_back(tr.target);
    return succ;
}

std::vector<StateSet> union_graph(const Mdp& mdp) {
    std::vector<StateSet> succ(mdp.size());
    for (StateIndex s = 0; s < mdp.size(); ++s) {
        for (const auto& act : mdp.state(s).actions)
            for (const auto& tr : act.transitions)
                if (tr.probability.sign() > 0)
                    succ[s].push_back(tr.target);
        std::sort(succ[s].begin(), succ[s].end());
        succ[s].erase(std::unique(succ[s].begin(), succ[s].end()), succ[s].end());
    }
    return succ;
}

StateSet class_members(const ChainDecomposition& dec, StateIndex s) {
    return dec.class_of[s] ? dec.classes[*dec.class_of[s]] : StateSet{};
}

} // namespace

ChainDecomposition trans_policy_classes(const Mdp& mdp, std::uint64_t cap) {
    const auto reference = decompose_graph(union_graph(mdp));
    PolicyEnumerator(mdp).for_each(
        [&](const Policy& policy) {
            const auto dec = decompose_graph(policy_graph(mdp, policy));
            if (dec.classes == reference.classes)
                return;
            StateSet offending;
            for (StateIndex s = 0; s < mdp.size(); ++s)
                if (class_members(dec, s) != class_members(reference, s))
                    offending.push_back(s);
            std::string names;
            for (auto s : offending)
                names += (names.empty() ? "" : ", ") + mdp.state(s).id;
            throw NotDecomposable("recurrent classes change under policy {" + policy.str(mdp) +
                                      "} at states: " + names,
                                  std::move(offending));
        },
        cap);
    return reference;
}

ClassControllability controllable_classes(const Mdp& mdp, StateIndex x, std::uint64_t cap) {
    const auto classes = trans_policy_classes(mdp, cap);
    ClassControllability out;
    for (const auto& cls : classes.classes)
        out.classes.push_back({cls, Rational(), Rational(), false});
    bool first = true;
    PolicyEnumerator(mdp).for_each(
        [&](const Policy& policy) {
            const auto chain = induced_chain(mdp, policy);
            const auto row = absorption_probabilities(chain, classes, x);
            for (std::size_t k = 0; k < row.size(); ++k) {
                auto& c = out.classes[k];
                if (first || row[k] < c.min_absorption)
                    c.min_absorption = row[k];
                if (first || row[k] > c.max_absorption)
                    c.max_absorption = row[k];
            }
            first = false;
        },
        cap);
    for (auto& c : out.classes)
        c.controllable = c.min_absorption != c.max_absorption;
    return out;
}

std::vector<std::size_t> converted_classes(const Mdp& mdp, StateIndex x, bool selective, std::uint64_t cap) {
    std::vector<std::size_t> keep;
    if (selective) {
        const auto control = controllable_classes(mdp, x, cap);
        for (std::size_t k = 0; k < control.classes.size(); ++k)
            if (control.classes[k].controllable)
                keep.push_back(k);
    } else {
        const auto classes = trans_policy_classes(mdp, cap);
        for (std::size_t k = 0; k < classes.classes.size(); ++k)
            keep.push_back(k);
    }
    return keep;
}

namespace {

Mdp restrict_to_classes(const Mdp& mdp, const ChainDecomposition& classes, const std::vector<std::size_t>& keep) {
    const std::size_t n = mdp.constraint_dim();
    const std::size_t dim = n * keep.size();
    std::vector<std::vector<RationalVector>> converted(mdp.size());
    for (StateIndex s = 0; s < mdp.size(); ++s)
        for (const auto& act : mdp.state(s).actions) {
            RationalVector c(dim);
            for (std::size_t i = 0; i < keep.size(); ++i)
                if (classes.class_of[s] == keep[i])
                    for (std::size_t j = 0; j < n; ++j)
                        c[i * n + j] = act.constraint[j];
            converted[s].push_back(std::move(c));
        }
    return mdp.with_constraints(dim, converted);
}

} // namespace

Mdp convert_to_expected(const Mdp& mdp, StateIndex x, std::uint64_t cap) {
    return restrict_to_classes(mdp, trans_policy_classes(mdp, cap), converted_classes(mdp, x, false, cap));
}

Mdp selective_convert(const Mdp& mdp, StateIndex x, std::uint64_t cap) {
    return restrict_to_classes(mdp, trans_policy_classes(mdp, cap), converted_classes(mdp, x, true, cap));
}

} // namespace cmdp
