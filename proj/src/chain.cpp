#include "cmdp/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmdp {

namespace {

std::vector<StateSet> support_graph(const RationalMatrix& chain) {
    std::vector<StateSet> succ(chain.rows());
    for (StateIndex i = 0; i < chain.rows(); ++i)
        for (StateIndex j = 0; j < chain.cols(); ++j)
            if (!chain(i, j).is_zero())
                succ[i].push_back(j);
    return succ;
}

// Iterative Tarjan; returns component id per vertex.
std::vector<std::size_t> strongly_connected(const std::vector<StateSet>& succ, std::size_t& count) {
    const std::size_t n = succ.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<StateIndex> stack;
    std::vector<std::pair<StateIndex, std::size_t>> frames;
    std::size_t next_index = 0;
    count = 0;

    for (StateIndex root = 0; root < n; ++root) {
        if (index[root] != unvisited)
            continue;
        frames.emplace_back(root, 0);
        while (!frames.empty()) {
            auto& [v, edge] = frames.back();
            if (edge == 0 && index[v] == unvisited) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (edge < succ[v].size()) {
                const StateIndex w = succ[v][edge++];
                if (index[w] == unvisited) {
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                StateIndex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            const StateIndex finished = v;
            frames.pop_back();
            if (!frames.empty()) {
                const StateIndex parent = frames.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    return comp;
}

bool reaches_all(const std::vector<StateSet>& succ, const StateSet& cls, bool reverse) {
    std::vector<bool> in(succ.size(), false), seen(succ.size(), false);
    for (auto s : cls)
        in[s] = true;
    std::vector<std::vector<StateIndex>> adj(succ.size());
    for (StateIndex i : cls)
        for (StateIndex j : succ[i])
            if (in[j])
                (reverse ? adj[j] : adj[i]).push_back(reverse ? i : j);
    std::vector<StateIndex> todo{cls.front()};
    seen[cls.front()] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                todo.push_back(w);
            }
    }
    return reached == cls.size();
}

} // namespace

ChainDecomposition decompose_graph(const std::vector<StateSet>& succ) {
    const std::size_t n = succ.size();
    std::size_t count = 0;
    const auto comp = strongly_connected(succ, count);

    std::vector<bool> closed(count, true);
    for (StateIndex i = 0; i < n; ++i)
        for (StateIndex j : succ[i])
            if (comp[j] != comp[i])
                closed[comp[i]] = false;

    ChainDecomposition dec;
    dec.class_of.assign(n, std::nullopt);
    std::vector<std::optional<std::size_t>> class_id(count);
    for (StateIndex s = 0; s < n; ++s) {
        if (!closed[comp[s]]) {
            dec.transient.push_back(s);
            continue;
        }
        auto& id = class_id[comp[s]];
        if (!id) {
            id = dec.classes.size();
            dec.classes.emplace_back();
        }
        dec.classes[*id].push_back(s);
        dec.class_of[s] = *id;
    }
    return dec;
}

ChainDecomposition decompose(const RationalMatrix& chain) { return decompose_graph(support_graph(chain)); }

RationalVector stationary_distribution(const RationalMatrix& chain, const StateSet& cls) {
    if (cls.empty())
        throw std::invalid_argument("stationary_distribution: empty class");
    const auto succ = support_graph(chain);
    std::vector<std::optional<std::size_t>> pos(chain.rows());
    for (std::size_t k = 0; k < cls.size(); ++k)
        pos[cls[k]] = k;
    for (StateIndex s : cls)
        for (StateIndex j : succ[s])
            if (!pos[j])
                throw std::invalid_argument("stationary_distribution: class is not closed");
    if (!reaches_all(succ, cls, false) || !reaches_all(succ, cls, true))
        throw std::invalid_argument("stationary_distribution: class is not strongly connected");

    // Balance equations p (M - I) = 0 with the last one replaced by sum(p) = 1.
    const std::size_t k = cls.size();
    RationalMatrix a(k, k), b(k, 1);
    for (std::size_t j = 0; j + 1 < k; ++j)
        for (std::size_t i = 0; i < k; ++i) {
            a(j, i) = chain(cls[i], cls[j]);
            if (i == j)
                a(j, i) -= 1;
        }
    for (std::size_t i = 0; i < k; ++i)
        a(k - 1, i) = 1;
    b(k - 1, 0) = 1;
    const auto x = solve_linear(std::move(a), std::move(b));
    RationalVector p(k);
    for (std::size_t i = 0; i < k; ++i)
        p[i] = x(i, 0);
    return p;
}

RationalMatrix absorption_map(const RationalMatrix& chain, const ChainDecomposition& dec) {
    const std::size_t n = chain.rows();
    const std::size_t k = dec.classes.size();
    RationalMatrix out(n, k);
    for (StateIndex s = 0; s < n; ++s)
        if (dec.class_of[s])
            out(s, *dec.class_of[s]) = 1;
    if (dec.transient.empty())
        return out;

    // First-step equations over transient states: (I - Q) H = R.
    const auto& tr = dec.transient;
    std::vector<std::optional<std::size_t>> pos(n);
    for (std::size_t i = 0; i < tr.size(); ++i)
        pos[tr[i]] = i;
    RationalMatrix a = RationalMatrix::identity(tr.size());
    RationalMatrix r(tr.size(), k);
    for (std::size_t i = 0; i < tr.size(); ++i)
        for (StateIndex j = 0; j < n; ++j) {
            const auto& p = chain(tr[i], j);
            if (p.is_zero())
                continue;
            if (pos[j])
                a(i, *pos[j]) -= p;
            else
                r(i, *dec.class_of[j]) += p;
        }
    const auto h = solve_linear(std::move(a), std::move(r));
    for (std::size_t i = 0; i < tr.size(); ++i)
        for (std::size_t c = 0; c < k; ++c)
            out(tr[i], c) = h(i, c);
    return out;
}

RationalVector absorption_probabilities(const RationalMatrix& chain, const ChainDecomposition& dec,
                                        StateIndex from) {
    if (from >= chain.rows())
        throw std::out_of_range("absorption_probabilities: state out of range");
    if (dec.class_of[from]) {
        RationalVector row(dec.classes.size());
        row[*dec.class_of[from]] = 1;
        return row;
    }
    return absorption_map(chain, dec).row(from);
}

RationalVector absorption_probabilities(const RationalMatrix& chain, StateIndex from) {
    return absorption_probabilities(chain, decompose(chain), from);
}

namespace {

StateSet bfs(std::size_t n, StateIndex x, const auto& for_each_successor) {
    std::vector<bool> seen(n, false);
    std::vector<StateIndex> todo{x};
    seen[x] = true;
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        for_each_successor(v, [&](StateIndex w) {
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
        });
    }
    StateSet out;
    for (StateIndex s = 0; s < n; ++s)
        if (seen[s])
            out.push_back(s);
    return out;
}

} // namespace

StateSet reachable_states(const Mdp& mdp, const Policy& policy, StateIndex x) {
    policy.check(mdp);
    return bfs(mdp.size(), x, [&](StateIndex v, auto&& visit) {
        for (const auto& t : mdp.action(v, policy[v]).transitions)
            if (t.probability.sign() > 0)
                visit(t.target);
    });
}

StateSet reachable_states_all(const Mdp& mdp, StateIndex x) {
    return bfs(mdp.size(), x, [&](StateIndex v, auto&& visit) {
        for (const auto& act : mdp.state(v).actions)
            for (const auto& t : act.transitions)
                if (t.probability.sign() > 0)
                    visit(t.target);
    });
}

RationalVector state_distribution_at(const RationalMatrix& chain, StateIndex x, std::size_t t) {
    if (x >= chain.rows())
        throw std::out_of_range("state_distribution_at: state out of range");
    RationalVector dist(chain.rows());
    dist[x] = 1;
    for (std::size_t step = 0; step < t; ++step)
        dist = dist * chain;
    return dist;
}

StateSet support(const RationalVector& dist) {
    StateSet out;
    for (StateIndex s = 0; s < dist.size(); ++s)
        if (dist[s].sign() != 0)
            out.push_back(s);
    return out;
}

} // namespace cmdp
