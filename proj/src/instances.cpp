#include "cmdp/instances.hpp"

namespace cmdp::instances {

namespace {

class Builder {
public:
    explicit Builder(std::size_t dim) : dim_(dim) {}

    void state(std::string id) { states_.push_back({std::move(id), {}}); }

    // Adds an action to the most recently declared state; targets are
    // resolved once every state exists.
    void action(std::string id, Rational reward, RationalVector constraint,
                std::vector<std::pair<std::string, Rational>> transitions) {
        pending_.push_back({states_.size() - 1, std::move(transitions)});
        states_.back().actions.push_back({std::move(id), std::move(reward), std::move(constraint), {}});
    }

    // A directed cycle prefix_0 -> ... -> prefix_{len-1} -> prefix_0 whose
    // first `bad` states are the bad states.
    void cycle(const std::string& prefix, int len, int bad, const Rational& reward, const Rational& threshold) {
        for (int i = 0; i < len; ++i) {
            state(prefix + std::to_string(i));
            const Rational c = threshold - (i < bad ? Rational(1) : Rational(0));
            action("next", reward, {c}, {{prefix + std::to_string((i + 1) % len), Rational(1)}});
        }
    }

    Mdp build(const std::string& initial) {
        Mdp index(states_, dim_, initial);
        std::size_t k = 0;
        for (auto& st : states_)
            for (auto& act : st.actions)
                for (auto& [label, p] : pending_[k++].second)
                    act.transitions.push_back({index.state_index(label), p});
        return Mdp(std::move(states_), dim_, initial);
    }

private:
    std::size_t dim_;
    std::vector<State> states_;
    std::vector<std::pair<std::size_t, std::vector<std::pair<std::string, Rational>>>> pending_;
};

} // namespace

Mdp haviv(const Rational& threshold) {
    Builder b(1);
    const Rational half(1, 2);
    b.state("x");
    b.action("go", 0, {threshold}, {{"c1_0", half}, {"y", half}});
    b.state("y");
    b.action("a", 0, {threshold}, {{"c2_0", 1}});
    b.action("b", 0, {threshold}, {{"c3_0", 1}});
    b.cycle("c1_", 5, 1, 0, threshold);
    b.cycle("c2_", 20, 1, 10, threshold);
    b.cycle("c3_", 10, 1, 20, threshold);
    return b.build("x");
}

Mdp squander(const Rational& eps) {
    Builder b(1);
    const Rational bound(3, 10);
    b.state("x");
    b.action("lottery", 0, {bound}, {{"y", eps}, {"z", Rational(1) - eps}});
    b.state("y");
    b.action("squander", 0, {bound}, {{"sq_0", 1}});
    b.action("save", 0, {bound}, {{"sv_0", 1}});
    b.state("z");
    b.action("yacht", 0, {bound}, {{"yt_0", 1}});
    b.action("no_yacht", 0, {bound}, {{"ny_0", 1}});
    b.cycle("sq_", 1, 1, 50, bound);
    b.cycle("sv_", 4, 1, 20, bound);
    b.cycle("yt_", 5, 2, 15, bound);
    b.cycle("ny_", 5, 1, 10, bound);
    return b.build("x");
}

Mdp yacht(const Rational& eps) {
    Builder b(1);
    const Rational bound(3, 10);
    b.state("x");
    b.action("lottery", 0, {bound}, {{"y", eps}, {"z", Rational(1) - eps}});
    b.state("y");
    b.action("yacht", 0, {bound}, {{"wy_0", 1}});
    b.action("no_yacht", 0, {bound}, {{"wn_0", 1}});
    b.state("z");
    b.action("yacht", 0, {bound}, {{"ly_0", 1}});
    b.action("no_yacht", 0, {bound}, {{"ln_0", 1}});
    b.cycle("wy_", 10, 1, 50, bound);
    b.cycle("wn_", 2, 0, 30, bound);
    b.cycle("ly_", 5, 2, 40, bound);
    b.cycle("ln_", 5, 1, 10, bound);
    return b.build("x");
}

Mdp twochain() {
    Builder b(1);
    b.state("x");
    b.action("split", 0, {0}, {{"a0", Rational(1, 2)}, {"b0", Rational(1, 2)}});
    b.state("a0");
    b.action("stay", 1, {-1}, {{"a0", 1}});
    b.state("b0");
    b.action("stay", 0, {1}, {{"b0", 1}});
    return b.build("x");
}

std::vector<std::string> names() { return {"haviv", "squander", "yacht", "twochain"}; }

Mdp by_name(const std::string& name, const Rational& eps) {
    if (name == "haviv")
        return haviv();
    if (name == "squander")
        return squander(eps);
    if (name == "yacht")
        return yacht(eps);
    if (name == "twochain")
        return twochain();
    throw ModelError("unknown bundled instance '" + name + "'");
}

} // namespace cmdp::instances
