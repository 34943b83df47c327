#include "anonpal/updates.hpp"

#include <algorithm>
#include <map>

#include "anonpal/error.hpp"
#include "anonpal/semantics.hpp"

namespace anonpal {

std::optional<EpistemicModel> public_update(const EpistemicModel& m, const Formula& f) {
    StateSet x = extension(m, f);
    if (x.empty())
        return std::nullopt;
    return restrict_model(m, x);
}

std::optional<AnonUpdateResult>
anon_update_from_witnesses(const EpistemicModel& m, const std::vector<StateSet>& witnesses) {
    if (witnesses.size() != m.num_agents())
        throw Error("one witness set per agent required");
    const std::size_t agents = m.num_agents();

    std::vector<AnnouncerTag> tags;
    std::vector<int> index(m.num_states() * agents, -1);
    std::vector<std::string> names;
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        for (std::size_t a = 0; a < agents; ++a) {
            if (!witnesses[a].contains(s))
                continue;
            index[s * agents + a] = static_cast<int>(tags.size());
            tags.push_back({s, a});
            names.push_back("(" + m.state_name(s) + "," + m.roster().names[a] + ")");
        }
    }
    if (tags.empty())
        return std::nullopt;

    const std::size_t n = tags.size();
    // (s,a) ~_i (t,b) iff s ~_i t and (a=i <=> b=i): each base i-block splits
    // into the i-announced copies and the rest
    std::vector<std::vector<int>> block_of(agents, std::vector<int>(n));
    for (std::size_t i = 0; i < agents; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            int base = m.block_id(i, tags[k].state);
            block_of[i][k] = 2 * base + (tags[k].agent == i ? 1 : 0);
        }
    }

    std::map<std::string, StateSet> valuation;
    for (const auto& [prop, ext] : m.valuation()) {
        StateSet lifted(n);
        for (std::size_t k = 0; k < n; ++k)
            if (ext.contains(tags[k].state)) lifted.insert(k);
        valuation.emplace(prop, std::move(lifted));
    }

    EpistemicModel model(m.roster(), std::move(names), std::move(block_of),
                         std::move(valuation));
    return AnonUpdateResult{std::move(model), std::move(tags), m.num_states(), agents,
                            std::move(index)};
}

std::optional<AnonUpdateResult> anon_update(const EpistemicModel& m, const Formula& f) {
    StateSet x = extension(m, f);
    std::vector<StateSet> witnesses;
    witnesses.reserve(m.num_agents());
    for (std::size_t a = 0; a < m.num_agents(); ++a)
        witnesses.push_back(knows_ext(m, a, x));
    return anon_update_from_witnesses(m, witnesses);
}

std::optional<AnonUpdateResult> safe_anon_update(const EpistemicModel& m, const Formula& f) {
    StateSet x = safe_ext(m, extension(m, f));
    std::vector<StateSet> witnesses;
    witnesses.reserve(m.num_agents());
    for (std::size_t a = 0; a < m.num_agents(); ++a)
        witnesses.push_back(knows_ext(m, a, x));
    return anon_update_from_witnesses(m, witnesses);
}

int ActionModel::point_index(const std::string& name) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == name) return static_cast<int>(i);
    return -1;
}

bool ActionModel::operator==(const ActionModel& other) const {
    return roster == other.roster && points == other.points &&
           block_of == other.block_of && pre == other.pre;
}

ActionModel make_action_model(AgentRoster roster, std::vector<std::string> points,
                              std::vector<std::vector<int>> block_of,
                              std::vector<Formula> pre) {
    if (roster.names.empty())
        throw Error("empty agent roster");
    if (points.empty())
        throw Error("empty action model");
    if (pre.size() != points.size())
        throw Error("one precondition per action point required");
    if (block_of.size() != roster.size())
        throw Error("one partition per agent required");
    ActionModel a;
    a.roster = std::move(roster);
    a.points = std::move(points);
    a.pre = std::move(pre);
    a.block_of.resize(a.roster.size());
    for (std::size_t i = 0; i < a.roster.size(); ++i)
        a.block_of[i] = normalize_partition(a.points.size(), block_of[i]).first;
    return a;
}

ActionModel anon_action_model(const AgentRoster& roster, const Formula& f) {
    if (roster.names.empty())
        throw Error("empty agent roster");
    const std::size_t n = roster.size();
    std::vector<std::vector<int>> block_of(n, std::vector<int>(n));
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t pt = 0; pt < n; ++pt)
            block_of[b][pt] = (pt == b) ? 1 : 0;
    std::vector<Formula> pre;
    pre.reserve(n);
    for (const auto& agent : roster.names) pre.push_back(knows(agent, f));
    return make_action_model(roster, roster.names, std::move(block_of), std::move(pre));
}

bool ActionProgram::operator==(const ActionProgram& other) const {
    return points == other.points &&
           (model == other.model || (model && other.model && *model == *other.model));
}

ActionProgram pointed_action(std::shared_ptr<const ActionModel> model, std::size_t point) {
    return union_program(std::move(model), {point});
}

ActionProgram union_program(std::shared_ptr<const ActionModel> model,
                            std::vector<std::size_t> points) {
    if (!model)
        throw Error("action program without an action model");
    if (points.empty())
        throw Error("empty action program");
    for (auto pt : points)
        if (pt >= model->num_points())
            throw Error("action point out of range");
    return {std::move(model), std::move(points)};
}

std::optional<ProductResult> product_model(const EpistemicModel& m, const ActionModel& a) {
    if (m.roster() != a.roster)
        throw std::invalid_argument("action model roster mismatch");

    std::vector<StateSet> pre_ext;
    pre_ext.reserve(a.num_points());
    for (const auto& pre : a.pre) pre_ext.push_back(extension(m, pre));

    std::vector<std::pair<std::size_t, std::size_t>> tags;
    std::vector<int> index(m.num_states() * a.num_points(), -1);
    std::vector<std::string> names;
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        for (std::size_t x = 0; x < a.num_points(); ++x) {
            if (!pre_ext[x].contains(s))
                continue;
            index[s * a.num_points() + x] = static_cast<int>(tags.size());
            tags.emplace_back(s, x);
            names.push_back("(" + m.state_name(s) + "," + a.points[x] + ")");
        }
    }
    if (tags.empty())
        return std::nullopt;

    const std::size_t n = tags.size();
    std::vector<std::vector<int>> block_of(m.num_agents(), std::vector<int>(n));
    const int point_blocks = static_cast<int>(a.num_points());
    for (std::size_t i = 0; i < m.num_agents(); ++i)
        for (std::size_t k = 0; k < n; ++k)
            block_of[i][k] = m.block_id(i, tags[k].first) * point_blocks +
                             a.block_of[i][tags[k].second];

    std::map<std::string, StateSet> valuation;
    for (const auto& [prop, ext] : m.valuation()) {
        StateSet lifted(n);
        for (std::size_t k = 0; k < n; ++k)
            if (ext.contains(tags[k].first)) lifted.insert(k);
        valuation.emplace(prop, std::move(lifted));
    }

    EpistemicModel model(m.roster(), std::move(names), std::move(block_of),
                         std::move(valuation));
    return ProductResult{std::move(model), std::move(tags), m.num_states(), a.num_points(),
                         std::move(index)};
}

std::vector<PointedModel> product_update(const PointedModel& pm, const ActionProgram& prog) {
    auto product = product_model(*pm.model, *prog.model);
    std::vector<PointedModel> out;
    if (!product)
        return out;
    auto shared = std::make_shared<const EpistemicModel>(std::move(product->model));
    for (auto pt : prog.points) {
        int idx = product->index[pm.point * product->base_points + pt];
        if (idx >= 0)
            out.push_back({shared, static_cast<std::size_t>(idx)});
    }
    return out;
}

} // namespace anonpal
