#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anonpal/stateset.hpp"

namespace anonpal {

struct AgentRoster {
    std::vector<std::string> names;

    std::size_t size() const { return names.size(); }
    int index_of(const std::string& name) const;
    bool operator==(const AgentRoster& other) const = default;
};

// Raw model description fed to build_model. Per-agent relations may be given
// as explicit partition blocks or as edge pairs (closed to an equivalence
// relation at build time); agents listed in neither default to the identity
// partition.
struct ModelSpec {
    std::vector<std::string> agents;
    std::vector<std::string> states;
    std::map<std::string, std::vector<std::vector<std::string>>> partitions;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> edges;
    std::map<std::string, std::vector<std::string>> valuation; // state -> true props
    std::optional<std::string> point;
};

// Canonicalizes arbitrary block ids over n items to ids numbered by first
// occurrence; returns (block id per item, members per block). Throws Error
// on negative ids.
std::pair<std::vector<int>, std::vector<StateSet>>
normalize_partition(std::size_t n, const std::vector<int>& block_of);

// Finite S5 model: each agent's relation is stored as a partition (block id
// per state), so it is an equivalence relation by construction. Immutable
// after construction.
class EpistemicModel {
public:
    EpistemicModel(AgentRoster roster, std::vector<std::string> states,
                   std::vector<std::vector<int>> block_of,
                   std::map<std::string, StateSet> valuation);

    const AgentRoster& roster() const { return roster_; }
    std::size_t num_agents() const { return roster_.size(); }
    std::size_t num_states() const { return states_.size(); }

    const std::vector<std::string>& state_names() const { return states_; }
    const std::string& state_name(std::size_t s) const { return states_[s]; }
    int state_index(const std::string& name) const;

    int block_id(std::size_t agent, std::size_t state) const { return block_of_[agent][state]; }
    const StateSet& block_of(std::size_t agent, std::size_t state) const;
    const std::vector<StateSet>& blocks(std::size_t agent) const { return blocks_[agent]; }

    const std::map<std::string, StateSet>& valuation() const { return valuation_; }
    // everywhere-false for propositions absent from the valuation
    StateSet prop_extension(const std::string& prop) const;
    std::vector<std::string> props_at(std::size_t state) const;

    StateSet empty_set() const { return StateSet(num_states()); }
    StateSet full_set() const { return StateSet::all(num_states()); }

    bool operator==(const EpistemicModel& other) const;

private:
    AgentRoster roster_;
    std::vector<std::string> states_;
    std::vector<std::vector<int>> block_of_; // [agent][state] -> canonical block id
    std::vector<std::vector<StateSet>> blocks_; // [agent][block] -> members
    std::map<std::string, StateSet> valuation_;
    std::map<std::string, std::size_t> state_index_;
};

struct PointedModel {
    std::shared_ptr<const EpistemicModel> model;
    std::size_t point = 0;
};

PointedModel pointed(EpistemicModel model, std::size_t point);
PointedModel pointed(EpistemicModel model, const std::string& state);

EpistemicModel build_model(const ModelSpec& spec);

// Submodel induced by X: relations restricted, valuation intersected, state
// names preserved. Throws Error("inapplicable restriction") when X is empty.
EpistemicModel restrict_model(const EpistemicModel& m, const StateSet& x);

bool are_bisimilar(const EpistemicModel& a, std::size_t sa,
                   const EpistemicModel& b, std::size_t sb);
bool are_bisimilar(const PointedModel& a, const PointedModel& b);

// Coarsest auto-bisimulation: two states share a class iff they are bisimilar.
std::vector<StateSet> bisim_classes(const EpistemicModel& m);

} // namespace anonpal
