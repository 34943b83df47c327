#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anonpal/formula.hpp"
#include "anonpal/model.hpp"

namespace anonpal {

// n-th approximant of the iterated safety family over X: T0 = X,
// T(k+1) = X & union over triples G of everyone_ext(G, Tk). Antitone in n and
// stable from n = |S| on, where it equals safe_ext.
StateSet safe_iterative(const EpistemicModel& m, const StateSet& x, std::size_t n);

// Independent brute-force semantics for safety: s is accepted iff some group
// assignment f (state -> agent triple or none, closed under the chosen
// agents' relations) has f(s) != none and every state f-reachable from s lies
// in x. Guard: (|triples|+1)^|S| <= 10^7, else Error("oracle too large").
StateSet safe_assignment(const EpistemicModel& m, const StateSet& x);

// All unions of bisimulation classes - exactly the announcement extensions
// definable on the model. Guard: 2^(#classes) <= 65536.
std::vector<StateSet> definable_subsets(const EpistemicModel& m);

// Every definable announcement X containing the point whose restriction
// satisfies target at the point. An empty result certifies that no public
// announcement achieves the target there.
std::vector<StateSet> search_public_counterexample(const EpistemicModel& m,
                                                   std::size_t point,
                                                   const Formula& target);

struct AnonSearchHit {
    StateSet announcement;
    std::string update_state;
};

// Every (definable announcement X, state of the induced announcer-tagged
// update) bisimilar to the goal. An empty result certifies that no
// pseudo-anonymous announcement reaches the goal up to bisimulation.
std::vector<AnonSearchHit> search_anon_counterexample(const EpistemicModel& m,
                                                      const PointedModel& goal);

// Deterministic per seed. Per-agent partitions are drawn uniformly from all
// set partitions of the states; each proposition holds at each state with
// probability 1/2. Supports up to 20 states and 26 agents.
EpistemicModel random_model(std::uint64_t seed, std::size_t num_states,
                            std::size_t num_agents, std::size_t num_props);

enum class Fragment {
    Boolean,   // atoms and booleans
    Epistemic, // + K
    Static,    // + E, C, Safe
    Pal,       // Epistemic + [!.]
    Anon,      // Epistemic + [anon .], [anonby a: .]
    Sai,       // Epistemic + [safeanon .] with epistemic bodies
    Full,      // everything except action programs
};

Formula random_formula(std::uint64_t seed, std::size_t depth, Fragment fragment,
                       const AgentRoster& roster, const std::vector<std::string>& props);

} // namespace anonpal
