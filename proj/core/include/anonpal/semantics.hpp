#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "anonpal/formula.hpp"
#include "anonpal/model.hpp"

namespace anonpal {

// All 3-element subsets of a roster of n agents (as index triples). Empty
// when n < 3.
struct TripleFamily {
    std::vector<std::array<std::size_t, 3>> triples;

    static TripleFamily of(std::size_t num_agents);
    bool empty() const { return triples.empty(); }
    std::size_t size() const { return triples.size(); }
};

// {s : M,s |= f}
StateSet extension(const EpistemicModel& m, const Formula& f);

bool satisfies(const EpistemicModel& m, std::size_t state, const Formula& f);
bool satisfies(const PointedModel& pm, const Formula& f);

// {s : the i-block of s is contained in x}
StateSet knows_ext(const EpistemicModel& m, std::size_t agent, const StateSet& x);
StateSet knows_ext(const EpistemicModel& m, const std::string& agent, const StateSet& x);

// {s : for every i in group, the i-block of s is contained in x}
StateSet everyone_ext(const EpistemicModel& m, const std::vector<std::size_t>& group,
                      const StateSet& x);
StateSet everyone_ext(const EpistemicModel& m, const std::vector<std::string>& group,
                      const StateSet& x);

// {s : every state reachable from s via the union of the group's relations
// lies in x}, computed by closing connected components
StateSet common_ext(const EpistemicModel& m, const std::vector<std::size_t>& group,
                    const StateSet& x);
StateSet common_ext(const EpistemicModel& m, const std::vector<std::string>& group,
                    const StateSet& x);

// Greatest fixpoint of f(A) = union over triples G of everyone_ext(G, x & A),
// by descending iteration from the full state set. Empty whenever the model
// has fewer than three agents.
StateSet safe_ext(const EpistemicModel& m, const StateSet& x);

} // namespace anonpal
