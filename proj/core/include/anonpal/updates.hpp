#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anonpal/formula.hpp"
#include "anonpal/model.hpp"

namespace anonpal {

// Where an update state came from: original state index plus announcing agent.
struct AnnouncerTag {
    std::size_t state = 0;
    std::size_t agent = 0;
    bool operator==(const AnnouncerTag&) const = default;
};

// Result of an announcer-tagged update. States are named "(s,a)"; tags run
// parallel to the updated model's states.
struct AnonUpdateResult {
    EpistemicModel model;
    std::vector<AnnouncerTag> tags;
    std::size_t base_states = 0;
    std::size_t base_agents = 0;
    std::vector<int> index; // index[s * base_agents + a], -1 when absent

    int index_of(std::size_t state, std::size_t agent) const {
        return index[state * base_agents + agent];
    }
};

// Restriction to the announced formula's extension; nullopt when the
// extension is empty ("inapplicable" is a value, not an error).
std::optional<EpistemicModel> public_update(const EpistemicModel& m, const Formula& f);

// States (s,a) with s |= K_a f; (s,a) ~_c (t,b) iff s ~_c t and (a=c <=> b=c);
// valuation from the first coordinate. nullopt when no agent knows f anywhere.
std::optional<AnonUpdateResult> anon_update(const EpistemicModel& m, const Formula& f);

// As anon_update with precondition K_a(safe f).
std::optional<AnonUpdateResult> safe_anon_update(const EpistemicModel& m, const Formula& f);

// Shared core: witnesses[a] = states where agent a may announce.
std::optional<AnonUpdateResult>
anon_update_from_witnesses(const EpistemicModel& m, const std::vector<StateSet>& witnesses);

// Action points with formula preconditions and per-agent partitions.
struct ActionModel {
    AgentRoster roster;
    std::vector<std::string> points;
    std::vector<std::vector<int>> block_of; // [agent][point] -> canonical block id
    std::vector<Formula> pre;               // per point

    std::size_t num_points() const { return points.size(); }
    int point_index(const std::string& name) const;
    bool operator==(const ActionModel& other) const;
};

ActionModel make_action_model(AgentRoster roster, std::vector<std::string> points,
                              std::vector<std::vector<int>> block_of,
                              std::vector<Formula> pre);

// Points are the agents themselves; pre(a) = K_a f; agent b's partition is
// {{b}, everything else}.
ActionModel anon_action_model(const AgentRoster& roster, const Formula& f);

// Non-empty list of pointed actions over one action model; a singleton is a
// pointed action, a longer list their union.
struct ActionProgram {
    std::shared_ptr<const ActionModel> model;
    std::vector<std::size_t> points;

    bool operator==(const ActionProgram& other) const;
};

ActionProgram pointed_action(std::shared_ptr<const ActionModel> model, std::size_t point);
ActionProgram union_program(std::shared_ptr<const ActionModel> model,
                            std::vector<std::size_t> points);

struct ProductResult {
    EpistemicModel model;
    std::vector<std::pair<std::size_t, std::size_t>> tags; // (state, action point)
    std::size_t base_states = 0;
    std::size_t base_points = 0;
    std::vector<int> index; // index[s * base_points + x], -1 when absent

    int index_of(std::size_t state, std::size_t point) const {
        return index[state * base_points + point];
    }
};

// Pairs (s,x) with s |= pre(x); (s,x) ~_i (t,y) iff s ~_i t and x ~_i y;
// valuation from the first coordinate. nullopt when no pair exists.
std::optional<ProductResult> product_model(const EpistemicModel& m, const ActionModel& a);

// One pointed result per program point whose precondition holds at the input
// point; the list may be empty.
std::vector<PointedModel> product_update(const PointedModel& pm, const ActionProgram& prog);

} // namespace anonpal
