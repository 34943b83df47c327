#include "anonpal/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "anonpal/error.hpp"

namespace anonpal {

int AgentRoster::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

std::pair<std::vector<int>, std::vector<StateSet>>
normalize_partition(std::size_t n, const std::vector<int>& block_of) {
    if (block_of.size() != n)
        throw Error("partition size mismatch");
    std::vector<int> canon(n, -1);
    std::map<int, int> remap;
    for (std::size_t i = 0; i < n; ++i) {
        if (block_of[i] < 0)
            throw Error("negative block id");
        auto [it, fresh] = remap.try_emplace(block_of[i], static_cast<int>(remap.size()));
        canon[i] = it->second;
        (void)fresh;
    }
    std::vector<StateSet> blocks(remap.size(), StateSet(n));
    for (std::size_t i = 0; i < n; ++i) blocks[canon[i]].insert(i);
    return {std::move(canon), std::move(blocks)};
}

EpistemicModel::EpistemicModel(AgentRoster roster, std::vector<std::string> states,
                               std::vector<std::vector<int>> block_of,
                               std::map<std::string, StateSet> valuation)
    : roster_(std::move(roster)), states_(std::move(states)), valuation_(std::move(valuation)) {
    if (roster_.names.empty())
        throw Error("empty agent roster");
    if (states_.empty())
        throw Error("empty state set");
    if (block_of.size() != roster_.size())
        throw Error("one partition per agent required");
    block_of_.resize(roster_.size());
    blocks_.resize(roster_.size());
    for (std::size_t a = 0; a < roster_.size(); ++a) {
        auto [canon, blocks] = normalize_partition(states_.size(), block_of[a]);
        block_of_[a] = std::move(canon);
        blocks_[a] = std::move(blocks);
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (!state_index_.emplace(states_[i], i).second)
            throw Error("duplicate state name '" + states_[i] + "'");
    }
    for (const auto& [prop, ext] : valuation_) {
        if (ext.width() != states_.size())
            throw Error("valuation for '" + prop + "' out of bounds");
    }
}

int EpistemicModel::state_index(const std::string& name) const {
    auto it = state_index_.find(name);
    return it == state_index_.end() ? -1 : static_cast<int>(it->second);
}

const StateSet& EpistemicModel::block_of(std::size_t agent, std::size_t state) const {
    return blocks_[agent][static_cast<std::size_t>(block_of_[agent][state])];
}

StateSet EpistemicModel::prop_extension(const std::string& prop) const {
    auto it = valuation_.find(prop);
    return it == valuation_.end() ? empty_set() : it->second;
}

std::vector<std::string> EpistemicModel::props_at(std::size_t state) const {
    std::vector<std::string> out;
    for (const auto& [prop, ext] : valuation_)
        if (ext.contains(state)) out.push_back(prop);
    return out;
}

bool EpistemicModel::operator==(const EpistemicModel& other) const {
    if (roster_ != other.roster_ || states_ != other.states_ ||
        block_of_ != other.block_of_)
        return false;
    // a proposition missing from a valuation is false everywhere, so an empty
    // extension and an absent entry describe the same model
    for (const auto& [prop, ext] : valuation_)
        if (!ext.empty() && other.prop_extension(prop) != ext) return false;
    for (const auto& [prop, ext] : other.valuation_)
        if (!ext.empty() && prop_extension(prop) != ext) return false;
    return true;
}

PointedModel pointed(EpistemicModel model, std::size_t point) {
    if (point >= model.num_states())
        throw Error("point out of range");
    return {std::make_shared<EpistemicModel>(std::move(model)), point};
}

PointedModel pointed(EpistemicModel model, const std::string& state) {
    int idx = model.state_index(state);
    if (idx < 0)
        throw Error("unknown state '" + state + "'");
    return {std::make_shared<EpistemicModel>(std::move(model)), static_cast<std::size_t>(idx)};
}

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

EpistemicModel build_model(const ModelSpec& spec) {
    if (spec.states.empty())
        throw Error("empty state set");
    if (spec.agents.empty())
        throw Error("empty agent roster");

    std::set<std::string> seen;
    for (const auto& a : spec.agents)
        if (!seen.insert(a).second)
            throw Error("duplicate agent name '" + a + "'");
    seen.clear();
    for (const auto& s : spec.states)
        if (!seen.insert(s).second)
            throw Error("duplicate state name '" + s + "'");

    AgentRoster roster{spec.agents};
    const std::size_t n = spec.states.size();
    std::map<std::string, std::size_t> state_idx;
    for (std::size_t i = 0; i < n; ++i) state_idx.emplace(spec.states[i], i);

    auto lookup_state = [&](const std::string& name, const char* where) {
        auto it = state_idx.find(name);
        if (it == state_idx.end())
            throw Error("unknown state '" + name + "' in " + where);
        return it->second;
    };

    for (const auto& [agent, _] : spec.partitions)
        if (roster.index_of(agent) < 0)
            throw Error("unknown agent '" + agent + "' in relations");
    for (const auto& [agent, _] : spec.edges) {
        if (roster.index_of(agent) < 0)
            throw Error("unknown agent '" + agent + "' in edges");
        if (spec.partitions.count(agent))
            throw Error("agent '" + agent + "' listed under both relations and edges");
    }

    std::vector<std::vector<int>> block_of(roster.size());
    for (std::size_t a = 0; a < roster.size(); ++a) {
        const std::string& agent = roster.names[a];
        if (auto it = spec.partitions.find(agent); it != spec.partitions.end()) {
            std::vector<int> ids(n, -1);
            int next = 0;
            for (const auto& block : it->second) {
                if (block.empty())
                    throw Error("empty block for agent '" + agent + "'");
                for (const auto& name : block) {
                    std::size_t s = lookup_state(name, "a block");
                    if (ids[s] != -1)
                        throw Error("block overlap at state '" + name + "' for agent '" +
                                    agent + "'");
                    ids[s] = next;
                }
                ++next;
            }
            for (std::size_t s = 0; s < n; ++s)
                if (ids[s] == -1)
                    throw Error("block gap: state '" + spec.states[s] +
                                "' not covered for agent '" + agent + "'");
            block_of[a] = std::move(ids);
        } else if (auto jt = spec.edges.find(agent); jt != spec.edges.end()) {
            DisjointSets ds(n);
            for (const auto& [from, to] : jt->second)
                ds.unite(lookup_state(from, "an edge"), lookup_state(to, "an edge"));
            std::vector<int> ids(n);
            for (std::size_t s = 0; s < n; ++s) ids[s] = static_cast<int>(ds.find(s));
            block_of[a] = std::move(ids);
        } else {
            std::vector<int> ids(n);
            std::iota(ids.begin(), ids.end(), 0);
            block_of[a] = std::move(ids);
        }
    }

    std::map<std::string, StateSet> valuation;
    for (const auto& [state, props] : spec.valuation) {
        std::size_t s = lookup_state(state, "the valuation");
        for (const auto& prop : props) {
            auto [it, _] = valuation.try_emplace(prop, StateSet(n));
            it->second.insert(s);
        }
    }

    if (spec.point && !state_idx.count(*spec.point))
        throw Error("unknown state '" + *spec.point + "' as point");

    return EpistemicModel(std::move(roster), spec.states, std::move(block_of),
                          std::move(valuation));
}

EpistemicModel restrict_model(const EpistemicModel& m, const StateSet& x) {
    if (x.empty())
        throw Error("inapplicable restriction");
    auto kept = x.members();
    std::vector<std::string> states;
    states.reserve(kept.size());
    for (auto s : kept) states.push_back(m.state_name(s));

    std::vector<std::vector<int>> block_of(m.num_agents());
    for (std::size_t a = 0; a < m.num_agents(); ++a) {
        block_of[a].reserve(kept.size());
        for (auto s : kept) block_of[a].push_back(m.block_id(a, s));
    }

    std::map<std::string, StateSet> valuation;
    for (const auto& [prop, ext] : m.valuation()) {
        StateSet cut(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (ext.contains(kept[i])) cut.insert(i);
        valuation.emplace(prop, std::move(cut));
    }
    return EpistemicModel(m.roster(), std::move(states), std::move(block_of),
                          std::move(valuation));
}

namespace {

// Partition refinement over the disjoint union of several models: start from
// atom signatures, then split by per-agent block class sets until stable.
// Agents are aligned across models by name.
std::vector<std::vector<int>> joint_refinement(const std::vector<const EpistemicModel*>& ms) {
    std::vector<std::string> agents = ms.front()->roster().names;
    std::sort(agents.begin(), agents.end());
    for (const auto* m : ms) {
        auto other = m->roster().names;
        std::sort(other.begin(), other.end());
        if (other != agents)
            throw std::invalid_argument("agent rosters differ");
    }
    std::vector<std::vector<std::size_t>> agent_idx(ms.size());
    for (std::size_t k = 0; k < ms.size(); ++k)
        for (const auto& name : agents)
            agent_idx[k].push_back(static_cast<std::size_t>(ms[k]->roster().index_of(name)));

    std::set<std::string> props;
    for (const auto* m : ms)
        for (const auto& [prop, _] : m->valuation()) props.insert(prop);

    std::vector<std::vector<int>> cls(ms.size());
    std::map<std::vector<bool>, int> atom_class;
    for (std::size_t k = 0; k < ms.size(); ++k) {
        cls[k].resize(ms[k]->num_states());
        for (std::size_t s = 0; s < ms[k]->num_states(); ++s) {
            std::vector<bool> sig;
            sig.reserve(props.size());
            for (const auto& prop : props) sig.push_back(ms[k]->prop_extension(prop).contains(s));
            auto [it, _] = atom_class.try_emplace(sig, static_cast<int>(atom_class.size()));
            cls[k][s] = it->second;
        }
    }

    std::size_t num_classes = atom_class.size();
    for (;;) {
        using Sig = std::pair<int, std::vector<std::vector<int>>>;
        std::map<Sig, int> next;
        std::vector<std::vector<int>> refined(ms.size());
        for (std::size_t k = 0; k < ms.size(); ++k) {
            refined[k].resize(ms[k]->num_states());
            for (std::size_t s = 0; s < ms[k]->num_states(); ++s) {
                Sig sig{cls[k][s], {}};
                sig.second.reserve(agents.size());
                for (auto a : agent_idx[k]) {
                    std::vector<int> reach;
                    for (auto t : ms[k]->block_of(a, s).members()) reach.push_back(cls[k][t]);
                    std::sort(reach.begin(), reach.end());
                    reach.erase(std::unique(reach.begin(), reach.end()), reach.end());
                    sig.second.push_back(std::move(reach));
                }
                auto [it, _] = next.try_emplace(std::move(sig), static_cast<int>(next.size()));
                refined[k][s] = it->second;
            }
        }
        if (next.size() == num_classes)
            return refined;
        num_classes = next.size();
        cls = std::move(refined);
    }
}

} // namespace

bool are_bisimilar(const EpistemicModel& a, std::size_t sa,
                   const EpistemicModel& b, std::size_t sb) {
    auto cls = joint_refinement({&a, &b});
    return cls[0][sa] == cls[1][sb];
}

bool are_bisimilar(const PointedModel& a, const PointedModel& b) {
    return are_bisimilar(*a.model, a.point, *b.model, b.point);
}

std::vector<StateSet> bisim_classes(const EpistemicModel& m) {
    auto cls = joint_refinement({&m}).front();
    int max_id = *std::max_element(cls.begin(), cls.end());
    std::vector<StateSet> out(static_cast<std::size_t>(max_id) + 1, StateSet(m.num_states()));
    for (std::size_t s = 0; s < m.num_states(); ++s)
        out[static_cast<std::size_t>(cls[s])].insert(s);
    return out;
}

} // namespace anonpal
