#include "anonpal/semantics.hpp"

#include <numeric>

#include "anonpal/error.hpp"
#include "anonpal/updates.hpp"

namespace anonpal {

TripleFamily TripleFamily::of(std::size_t num_agents) {
    TripleFamily fam;
    for (std::size_t i = 0; i + 2 < num_agents; ++i)
        for (std::size_t j = i + 1; j + 1 < num_agents; ++j)
            for (std::size_t k = j + 1; k < num_agents; ++k)
                fam.triples.push_back({i, j, k});
    return fam;
}

namespace {

std::size_t resolve_agent(const EpistemicModel& m, const std::string& name) {
    int idx = m.roster().index_of(name);
    if (idx < 0)
        throw Error("unknown agent '" + name + "'");
    return static_cast<std::size_t>(idx);
}

std::vector<std::size_t> resolve_group(const EpistemicModel& m,
                                       const std::vector<std::string>& group) {
    std::vector<std::size_t> idx;
    idx.reserve(group.size());
    for (const auto& name : group) idx.push_back(resolve_agent(m, name));
    return idx;
}

} // namespace

StateSet knows_ext(const EpistemicModel& m, std::size_t agent, const StateSet& x) {
    StateSet res = m.empty_set();
    for (const auto& block : m.blocks(agent))
        if (block.subset_of(x)) res |= block;
    return res;
}

StateSet knows_ext(const EpistemicModel& m, const std::string& agent, const StateSet& x) {
    return knows_ext(m, resolve_agent(m, agent), x);
}

StateSet everyone_ext(const EpistemicModel& m, const std::vector<std::size_t>& group,
                      const StateSet& x) {
    if (group.empty())
        throw Error("empty agent group");
    StateSet res = m.full_set();
    for (auto agent : group) res &= knows_ext(m, agent, x);
    return res;
}

StateSet everyone_ext(const EpistemicModel& m, const std::vector<std::string>& group,
                      const StateSet& x) {
    return everyone_ext(m, resolve_group(m, group), x);
}

StateSet common_ext(const EpistemicModel& m, const std::vector<std::size_t>& group,
                    const StateSet& x) {
    if (group.empty())
        throw Error("empty agent group");
    // merge the group's blocks into connected components
    std::vector<std::size_t> comp(m.num_states());
    std::iota(comp.begin(), comp.end(), std::size_t{0});
    auto find = [&](std::size_t s) {
        while (comp[s] != s) s = comp[s] = comp[comp[s]];
        return s;
    };
    for (auto agent : group) {
        for (const auto& block : m.blocks(agent)) {
            auto members = block.members();
            for (std::size_t i = 1; i < members.size(); ++i)
                comp[find(members[i])] = find(members[0]);
        }
    }
    StateSet res = m.full_set();
    StateSet bad = ~x;
    for (std::size_t s = 0; s < m.num_states(); ++s)
        if (bad.contains(s)) bad.insert(find(s));
    // a component is poisoned iff its root is marked
    for (std::size_t s = 0; s < m.num_states(); ++s)
        if (bad.contains(find(s))) res.erase(s);
    return res;
}

StateSet common_ext(const EpistemicModel& m, const std::vector<std::string>& group,
                    const StateSet& x) {
    return common_ext(m, resolve_group(m, group), x);
}

StateSet safe_ext(const EpistemicModel& m, const StateSet& x) {
    TripleFamily fam = TripleFamily::of(m.num_agents());
    StateSet current = m.full_set();
    for (;;) {
        StateSet inner = x & current;
        StateSet next(m.num_states());
        for (const auto& g : fam.triples)
            next |= everyone_ext(m, std::vector<std::size_t>(g.begin(), g.end()), inner);
        if (next == current)
            return current;
        current = std::move(next);
    }
}

namespace {

StateSet embed_restricted(const EpistemicModel& base, const StateSet& kept,
                          const StateSet& inner) {
    StateSet out = base.empty_set();
    auto members = kept.members();
    for (std::size_t i = 0; i < members.size(); ++i)
        if (inner.contains(i)) out.insert(members[i]);
    return out;
}

StateSet public_box_ext(const EpistemicModel& m, const Formula& f) {
    StateSet x = extension(m, f.announced());
    if (x.empty())
        return m.full_set(); // no announcement to survive: vacuously true
    EpistemicModel updated = restrict_model(m, x);
    StateSet body = extension(updated, f.body());
    return ~x | embed_restricted(m, x, body);
}

StateSet anon_box_ext(const EpistemicModel& m, const Formula& f, bool require_safe) {
    StateSet x = extension(m, f.announced());
    if (require_safe)
        x = safe_ext(m, x);
    std::vector<StateSet> witnesses;
    witnesses.reserve(m.num_agents());
    for (std::size_t a = 0; a < m.num_agents(); ++a)
        witnesses.push_back(knows_ext(m, a, x));
    auto update = anon_update_from_witnesses(m, witnesses);
    if (!update)
        return m.full_set();
    StateSet body = extension(update->model, f.body());
    StateSet res = m.full_set();
    for (std::size_t s = 0; s < m.num_states(); ++s)
        for (std::size_t a = 0; a < m.num_agents(); ++a)
            if (witnesses[a].contains(s) &&
                !body.contains(static_cast<std::size_t>(update->index_of(s, a))))
                res.erase(s);
    return res;
}

StateSet anon_by_box_ext(const EpistemicModel& m, const Formula& f) {
    std::size_t announcer = resolve_agent(m, f.agent());
    StateSet x = extension(m, f.announced());
    std::vector<StateSet> witnesses;
    for (std::size_t a = 0; a < m.num_agents(); ++a)
        witnesses.push_back(knows_ext(m, a, x));
    auto update = anon_update_from_witnesses(m, witnesses);
    if (!update)
        return m.full_set();
    StateSet body = extension(update->model, f.body());
    StateSet res = m.full_set();
    for (std::size_t s = 0; s < m.num_states(); ++s)
        if (witnesses[announcer].contains(s) &&
            !body.contains(static_cast<std::size_t>(update->index_of(s, announcer))))
            res.erase(s);
    return res;
}

StateSet program_box_ext(const EpistemicModel& m, const Formula& f) {
    const ActionProgram& prog = f.program();
    auto product = product_model(m, *prog.model);
    if (!product)
        return m.full_set();
    StateSet body = extension(product->model, f.body());
    std::vector<StateSet> pre_ext;
    pre_ext.reserve(prog.model->num_points());
    for (const auto& pre : prog.model->pre) pre_ext.push_back(extension(m, pre));
    StateSet res = m.full_set();
    for (std::size_t s = 0; s < m.num_states(); ++s)
        for (auto pt : prog.points)
            if (pre_ext[pt].contains(s) &&
                !body.contains(static_cast<std::size_t>(product->index_of(s, pt))))
                res.erase(s);
    return res;
}

} // namespace

StateSet extension(const EpistemicModel& m, const Formula& f) {
    switch (f.kind()) {
    case FKind::Atom:
        return m.prop_extension(f.prop());
    case FKind::Top:
        return m.full_set();
    case FKind::Bot:
        return m.empty_set();
    case FKind::Not:
        return ~extension(m, f.child());
    case FKind::And:
        return extension(m, f.lhs()) & extension(m, f.rhs());
    case FKind::Or:
        return extension(m, f.lhs()) | extension(m, f.rhs());
    case FKind::Implies:
        return ~extension(m, f.lhs()) | extension(m, f.rhs());
    case FKind::Iff: {
        StateSet l = extension(m, f.lhs());
        StateSet r = extension(m, f.rhs());
        return (l & r) | (~l & ~r);
    }
    case FKind::Knows:
        return knows_ext(m, resolve_agent(m, f.agent()), extension(m, f.child()));
    case FKind::Everyone:
        return everyone_ext(m, resolve_group(m, f.group()), extension(m, f.child()));
    case FKind::Common:
        return common_ext(m, resolve_group(m, f.group()), extension(m, f.child()));
    case FKind::Safe:
        return safe_ext(m, extension(m, f.child()));
    case FKind::PublicBox:
        return public_box_ext(m, f);
    case FKind::AnonBox:
        return anon_box_ext(m, f, /*require_safe=*/false);
    case FKind::SafeAnonBox:
        return anon_box_ext(m, f, /*require_safe=*/true);
    case FKind::AnonByBox:
        return anon_by_box_ext(m, f);
    case FKind::ProgramBox:
        return program_box_ext(m, f);
    }
    throw Error("unhandled formula kind");
}

bool satisfies(const EpistemicModel& m, std::size_t state, const Formula& f) {
    if (state >= m.num_states())
        throw Error("state index out of range");
    return extension(m, f).contains(state);
}

bool satisfies(const PointedModel& pm, const Formula& f) {
    return satisfies(*pm.model, pm.point, f);
}

} // namespace anonpal
