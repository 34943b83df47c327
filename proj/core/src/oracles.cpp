#include "anonpal/oracles.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "anonpal/error.hpp"
#include "anonpal/semantics.hpp"
#include "anonpal/updates.hpp"

namespace anonpal {

StateSet safe_iterative(const EpistemicModel& m, const StateSet& x, std::size_t n) {
    TripleFamily fam = TripleFamily::of(m.num_agents());
    StateSet current = x;
    for (std::size_t k = 0; k < n; ++k) {
        StateSet next = m.empty_set();
        for (const auto& g : fam.triples)
            next |= everyone_ext(m, std::vector<std::size_t>(g.begin(), g.end()), current);
        next &= x;
        if (next == current) break; // the chain is antitone, so it stays put
        current = next;
    }
    return current;
}

namespace {

// Depth-first enumeration of group assignments with the closure constraint
// checked incrementally: once f(s) = G, every state an agent of G relates to s
// must itself get a group.
class AssignmentSearch {
public:
    AssignmentSearch(const EpistemicModel& m, const StateSet& x, const TripleFamily& fam)
        : m_(m), x_(x), n_(m.num_states()), accepted_(m.num_states()) {
        required_.resize(n_);
        for (std::size_t s = 0; s < n_; ++s) {
            required_[s].reserve(fam.size());
            for (const auto& g : fam.triples) {
                StateSet r = m.empty_set();
                for (std::size_t i : g) r |= m.block_of(i, s);
                required_[s].push_back(std::move(r));
            }
        }
        choice_.assign(n_, 0);
    }

    StateSet run() {
        dfs(0, m_.empty_set(), m_.empty_set());
        return accepted_;
    }

private:
    const EpistemicModel& m_;
    const StateSet& x_;
    std::size_t n_;
    std::vector<std::vector<StateSet>> required_; // [state][triple]: states forced nonzero
    std::vector<std::size_t> choice_;             // 0 = none, v > 0 = triple v-1
    StateSet accepted_;

    // accepted states always lie in x, so equality means nothing is left to find
    bool done() const { return accepted_ == x_; }

    bool dfs(std::size_t j, const StateSet& must_nonzero, const StateSet& assigned_zero) {
        if (done()) return true;
        if (j == n_) {
            harvest();
            return done();
        }
        if (!must_nonzero.contains(j)) {
            choice_[j] = 0;
            StateSet z = assigned_zero;
            z.insert(j);
            if (dfs(j + 1, must_nonzero, z)) return true;
        }
        for (std::size_t v = 0; v < required_[j].size(); ++v) {
            if (required_[j][v].intersects(assigned_zero)) continue;
            choice_[j] = v + 1;
            StateSet mn = must_nonzero;
            mn |= required_[j][v];
            if (dfs(j + 1, mn, assigned_zero)) return true;
        }
        return false;
    }

    // The current assignment is closed; collect every state whose f-reachable
    // set stays inside x. A successful reach set is step-closed, so all of its
    // members are accepted at once.
    void harvest() {
        for (std::size_t s : x_.members()) {
            if (accepted_.contains(s) || choice_[s] == 0) continue;
            StateSet reach(n_);
            reach.insert(s);
            std::vector<std::size_t> frontier{s};
            bool ok = true;
            while (ok && !frontier.empty()) {
                std::size_t u = frontier.back();
                frontier.pop_back();
                for (std::size_t v : required_[u][choice_[u] - 1].members()) {
                    if (reach.contains(v)) continue;
                    if (!x_.contains(v)) {
                        ok = false;
                        break;
                    }
                    reach.insert(v);
                    frontier.push_back(v);
                }
            }
            if (ok) accepted_ |= reach;
        }
    }
};

} // namespace

StateSet safe_assignment(const EpistemicModel& m, const StateSet& x) {
    TripleFamily fam = TripleFamily::of(m.num_agents());
    unsigned long long total = 1;
    for (std::size_t i = 0; i < m.num_states(); ++i) {
        total *= fam.size() + 1;
        if (total > 10'000'000ULL)
            throw Error("oracle too large");
    }
    AssignmentSearch search(m, x, fam);
    return search.run();
}

std::vector<StateSet> definable_subsets(const EpistemicModel& m) {
    std::vector<StateSet> classes = bisim_classes(m);
    if (classes.size() > 16)
        throw Error("too many bisimulation classes");
    std::size_t count = std::size_t{1} << classes.size();
    std::vector<StateSet> out;
    out.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        StateSet x = m.empty_set();
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (mask >> c & 1) x |= classes[c];
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<StateSet> search_public_counterexample(const EpistemicModel& m,
                                                   std::size_t point,
                                                   const Formula& target) {
    std::vector<StateSet> hits;
    for (const StateSet& x : definable_subsets(m)) {
        if (!x.contains(point)) continue;
        EpistemicModel restricted = restrict_model(m, x);
        int p = restricted.state_index(m.state_name(point));
        if (satisfies(restricted, static_cast<std::size_t>(p), target))
            hits.push_back(x);
    }
    return hits;
}

std::vector<AnonSearchHit> search_anon_counterexample(const EpistemicModel& m,
                                                      const PointedModel& goal) {
    std::vector<AnonSearchHit> hits;
    for (const StateSet& x : definable_subsets(m)) {
        std::vector<StateSet> witnesses;
        witnesses.reserve(m.num_agents());
        for (std::size_t a = 0; a < m.num_agents(); ++a)
            witnesses.push_back(knows_ext(m, a, x));
        auto upd = anon_update_from_witnesses(m, witnesses);
        if (!upd) continue;
        auto shared = std::make_shared<const EpistemicModel>(std::move(upd->model));
        for (std::size_t s = 0; s < shared->num_states(); ++s)
            if (are_bisimilar(PointedModel{shared, s}, goal))
                hits.push_back({x, shared->state_name(s)});
    }
    return hits;
}

namespace {

std::string agent_name(std::size_t i) {
    return std::string(1, static_cast<char>('a' + i));
}

std::string prop_name(std::size_t i) {
    static const char* first[] = {"p", "q", "r"};
    if (i < 3) return first[i];
    return "p" + std::to_string(i);
}

// d[k][m]: extensions of a restricted growth string with k items left and m
// blocks in use; d[k][m] = m*d[k-1][m] + d[k-1][m+1]. Cells with m+k > n are
// never consulted and stay zero, which keeps everything inside 64 bits.
std::vector<std::vector<unsigned long long>> growth_table(std::size_t n) {
    std::vector<std::vector<unsigned long long>> d(n + 1,
        std::vector<unsigned long long>(n + 2, 0));
    for (std::size_t m = 0; m <= n + 1; ++m) d[0][m] = 1;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t m = 0; m + k <= n; ++m)
            d[k][m] = m * d[k - 1][m] + d[k - 1][m + 1];
    return d;
}

std::vector<int> sample_partition(std::mt19937_64& rng, std::size_t n,
                                  const std::vector<std::vector<unsigned long long>>& d) {
    std::vector<int> block(n, 0);
    std::size_t used = 1;
    for (std::size_t pos = 1; pos < n; ++pos) {
        std::size_t left = n - pos; // items not yet placed, this one included
        std::uniform_int_distribution<unsigned long long> pick(0, d[left][used] - 1);
        unsigned long long u = pick(rng);
        unsigned long long existing = used * d[left - 1][used];
        if (u < existing) {
            block[pos] = static_cast<int>(u / d[left - 1][used]);
        } else {
            block[pos] = static_cast<int>(used);
            ++used;
        }
    }
    return block;
}

} // namespace

EpistemicModel random_model(std::uint64_t seed, std::size_t num_states,
                            std::size_t num_agents, std::size_t num_props) {
    if (num_states == 0 || num_agents == 0)
        throw Error("model sizes must be positive");
    if (num_states > 20)
        throw Error("at most 20 states in a random model");
    if (num_agents > 26)
        throw Error("at most 26 agents in a random model");

    std::mt19937_64 rng(seed);
    auto d = growth_table(num_states);

    AgentRoster roster;
    for (std::size_t i = 0; i < num_agents; ++i) roster.names.push_back(agent_name(i));

    std::vector<std::string> states;
    for (std::size_t s = 0; s < num_states; ++s) states.push_back("s" + std::to_string(s));

    std::vector<std::vector<int>> block_of;
    block_of.reserve(num_agents);
    for (std::size_t i = 0; i < num_agents; ++i)
        block_of.push_back(sample_partition(rng, num_states, d));

    std::uniform_int_distribution<int> coin(0, 1);
    std::map<std::string, StateSet> valuation;
    for (std::size_t p = 0; p < num_props; ++p) {
        StateSet ext(num_states);
        for (std::size_t s = 0; s < num_states; ++s)
            if (coin(rng)) ext.insert(s);
        valuation.emplace(prop_name(p), std::move(ext));
    }

    return EpistemicModel(std::move(roster), std::move(states), std::move(block_of),
                          std::move(valuation));
}

namespace {

class FormulaGen {
public:
    FormulaGen(std::mt19937_64& rng, const AgentRoster& roster,
               const std::vector<std::string>& props)
        : rng_(rng), roster_(roster), props_(props) {}

    Formula gen(std::size_t depth, Fragment frag) {
        if (depth == 0) return leaf();
        std::size_t op = pick(op_count(frag));
        switch (op) {
        case 0:
            return leaf();
        case 1:
            return neg(gen(depth - 1, frag));
        case 2:
            return conj(gen(depth - 1, frag), gen(depth - 1, frag));
        case 3:
            return disj(gen(depth - 1, frag), gen(depth - 1, frag));
        case 4:
            return implies(gen(depth - 1, frag), gen(depth - 1, frag));
        case 5:
            return iff(gen(depth - 1, frag), gen(depth - 1, frag));
        case 6:
            return knows(agent(), gen(depth - 1, frag));
        default:
            return extra(op, depth, frag);
        }
    }

private:
    std::mt19937_64& rng_;
    const AgentRoster& roster_;
    const std::vector<std::string>& props_;

    std::size_t pick(std::size_t n) {
        std::uniform_int_distribution<std::size_t> dist(0, n - 1);
        return dist(rng_);
    }

    Formula leaf() {
        std::size_t r = pick(props_.size() + 2);
        if (r == 0) return top();
        if (r == 1) return bot();
        return atom(props_[r - 2]);
    }

    const std::string& agent() { return roster_.names[pick(roster_.size())]; }

    std::vector<std::string> group() {
        std::vector<std::string> g;
        for (const auto& name : roster_.names)
            if (pick(2)) g.push_back(name);
        if (g.empty()) g.push_back(agent());
        return g;
    }

    // choices beyond the shared boolean+K core, per fragment
    static std::size_t op_count(Fragment frag) {
        switch (frag) {
        case Fragment::Boolean:
            return 6;
        case Fragment::Epistemic:
            return 7;
        case Fragment::Static:
            return 10; // + E, C, safe
        case Fragment::Pal:
            return 8; // + [!.]
        case Fragment::Anon:
            return 9; // + [anon .], [anonby a: .]
        case Fragment::Sai:
            return 8; // + [safeanon .]
        case Fragment::Full:
            return 14;
        }
        return 6;
    }

    Formula extra(std::size_t chosen, std::size_t depth, Fragment frag) {
        std::size_t slot = 7;
        auto next = [&](std::size_t c) { return c == slot++; };
        switch (frag) {
        case Fragment::Static:
            if (next(chosen)) return everyone(group(), gen(depth - 1, frag));
            if (next(chosen)) return common(group(), gen(depth - 1, frag));
            return safe(gen(depth - 1, frag));
        case Fragment::Pal:
            return public_box(gen(depth - 1, frag), gen(depth - 1, frag));
        case Fragment::Anon:
            if (next(chosen)) return anon_box(gen(depth - 1, frag), gen(depth - 1, frag));
            return anon_by_box(agent(), gen(depth - 1, frag), gen(depth - 1, frag));
        case Fragment::Sai:
            // bodies stay epistemic: a safe-announcement box nested in body
            // position has no reduction, so the generator never builds one
            return safe_anon_box(gen(depth - 1, frag),
                                 gen(depth - 1, Fragment::Epistemic));
        case Fragment::Full:
            if (next(chosen)) return everyone(group(), gen(depth - 1, frag));
            if (next(chosen)) return common(group(), gen(depth - 1, frag));
            if (next(chosen)) return safe(gen(depth - 1, frag));
            if (next(chosen)) return public_box(gen(depth - 1, frag), gen(depth - 1, frag));
            if (next(chosen)) return anon_box(gen(depth - 1, frag), gen(depth - 1, frag));
            if (next(chosen))
                return anon_by_box(agent(), gen(depth - 1, frag), gen(depth - 1, frag));
            return safe_anon_box(gen(depth - 1, frag), gen(depth - 1, frag));
        default:
            return leaf(); // unreachable: Boolean/Epistemic stop at case 6
        }
    }
};

} // namespace

Formula random_formula(std::uint64_t seed, std::size_t depth, Fragment fragment,
                       const AgentRoster& roster, const std::vector<std::string>& props) {
    if (roster.names.empty())
        throw Error("empty agent roster");
    if (props.empty())
        throw Error("no propositions to draw from");
    std::mt19937_64 rng(seed);
    FormulaGen g(rng, roster, props);
    return g.gen(depth, fragment);
}

} // namespace anonpal
