#include "anonpal/reduce.hpp"

#include <utility>

#include "anonpal/error.hpp"
#include "anonpal/updates.hpp"

namespace anonpal {

namespace {

// constructors with top/bottom absorption, used only for formulas the
// translations introduce; input subtrees are otherwise preserved verbatim
Formula mk_not(Formula f) {
    if (f.kind() == FKind::Top) return bot();
    if (f.kind() == FKind::Bot) return top();
    return neg(std::move(f));
}

Formula mk_and(Formula l, Formula r) {
    if (l.kind() == FKind::Top) return r;
    if (r.kind() == FKind::Top) return l;
    if (l.kind() == FKind::Bot || r.kind() == FKind::Bot) return bot();
    return conj(std::move(l), std::move(r));
}

Formula mk_or(Formula l, Formula r) {
    if (l.kind() == FKind::Bot) return r;
    if (r.kind() == FKind::Bot) return l;
    if (l.kind() == FKind::Top || r.kind() == FKind::Top) return top();
    return disj(std::move(l), std::move(r));
}

Formula mk_implies(Formula l, Formula r) {
    if (l.kind() == FKind::Top) return r;
    if (l.kind() == FKind::Bot || r.kind() == FKind::Top) return top();
    if (r.kind() == FKind::Bot) return mk_not(std::move(l));
    return implies(std::move(l), std::move(r));
}

Formula mk_iff(Formula l, Formula r) {
    if (l.kind() == FKind::Top) return r;
    if (r.kind() == FKind::Top) return l;
    if (l.kind() == FKind::Bot) return mk_not(std::move(r));
    if (r.kind() == FKind::Bot) return mk_not(std::move(l));
    return iff(std::move(l), std::move(r));
}

Formula mk_big_and(std::vector<Formula> fs) {
    Formula acc = top();
    for (auto& f : fs) acc = mk_and(std::move(acc), std::move(f));
    return acc;
}

bool is_static_boolean(FKind k) {
    return k == FKind::Atom || k == FKind::Top || k == FKind::Bot || k == FKind::Not ||
           k == FKind::And || k == FKind::Or || k == FKind::Implies || k == FKind::Iff;
}

Formula rebuild_unary(const Formula& f, Formula child) {
    switch (f.kind()) {
    case FKind::Not:
        return neg(std::move(child));
    case FKind::Knows:
        return knows(f.agent(), std::move(child));
    case FKind::Everyone:
        return everyone(f.group(), std::move(child));
    case FKind::Common:
        return common(f.group(), std::move(child));
    case FKind::Safe:
        return safe(std::move(child));
    default:
        throw Error("not a unary formula");
    }
}

Formula rebuild_binary(const Formula& f, Formula l, Formula r) {
    switch (f.kind()) {
    case FKind::And:
        return conj(std::move(l), std::move(r));
    case FKind::Or:
        return disj(std::move(l), std::move(r));
    case FKind::Implies:
        return implies(std::move(l), std::move(r));
    case FKind::Iff:
        return iff(std::move(l), std::move(r));
    default:
        throw Error("not a binary formula");
    }
}

} // namespace

Formula eliminate_safe(const Formula& f) {
    switch (f.kind()) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bot:
        return f;
    case FKind::Safe:
        return neg(safe_anon_box(eliminate_safe(f.child()), bot()));
    case FKind::Not:
    case FKind::Knows:
    case FKind::Everyone:
    case FKind::Common:
        return rebuild_unary(f, eliminate_safe(f.child()));
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
        return rebuild_binary(f, eliminate_safe(f.lhs()), eliminate_safe(f.rhs()));
    case FKind::PublicBox:
        return public_box(eliminate_safe(f.announced()), eliminate_safe(f.body()));
    case FKind::AnonBox:
        return anon_box(eliminate_safe(f.announced()), eliminate_safe(f.body()));
    case FKind::AnonByBox:
        return anon_by_box(f.agent(), eliminate_safe(f.announced()),
                           eliminate_safe(f.body()));
    case FKind::SafeAnonBox:
        return safe_anon_box(eliminate_safe(f.announced()), eliminate_safe(f.body()));
    case FKind::ProgramBox: {
        const ActionProgram& prog = f.program();
        std::vector<Formula> pre;
        pre.reserve(prog.model->pre.size());
        for (const auto& p : prog.model->pre) pre.push_back(eliminate_safe(p));
        auto rebuilt = std::make_shared<const ActionModel>(
            make_action_model(prog.model->roster, prog.model->points,
                              prog.model->block_of, std::move(pre)));
        return program_box(
            std::make_shared<const ActionProgram>(union_program(rebuilt, prog.points)),
            eliminate_safe(f.body()));
    }
    }
    throw Error("unhandled formula kind");
}

namespace {

// [announced!] pushed through an announcement-free body
Formula push_pal(const Formula& announced, const Formula& body) {
    switch (body.kind()) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bot:
        return mk_implies(announced, body);
    case FKind::Not:
        return mk_implies(announced, mk_not(push_pal(announced, body.child())));
    case FKind::And:
        return mk_and(push_pal(announced, body.lhs()), push_pal(announced, body.rhs()));
    case FKind::Or:
        return mk_or(push_pal(announced, body.lhs()), push_pal(announced, body.rhs()));
    case FKind::Implies:
        return mk_implies(push_pal(announced, body.lhs()), push_pal(announced, body.rhs()));
    case FKind::Iff:
        return mk_iff(push_pal(announced, body.lhs()), push_pal(announced, body.rhs()));
    case FKind::Knows:
        return mk_implies(announced, knows(body.agent(), push_pal(announced, body.child())));
    case FKind::Common:
        throw Error("common knowledge not reducible in PAL fragment");
    case FKind::Everyone:
        throw Error("everyone-knows not reducible in PAL fragment");
    case FKind::Safe:
        throw Error("safety not reducible in PAL fragment");
    default:
        throw Error("nested announcement left unreduced"); // unreachable
    }
}

} // namespace

Formula reduce_pal(const Formula& f) {
    switch (f.kind()) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bot:
        return f;
    case FKind::Not:
    case FKind::Knows:
        return rebuild_unary(f, reduce_pal(f.child()));
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
        return rebuild_binary(f, reduce_pal(f.lhs()), reduce_pal(f.rhs()));
    case FKind::PublicBox:
        return push_pal(reduce_pal(f.announced()), reduce_pal(f.body()));
    case FKind::Common:
        throw Error("common knowledge not reducible in PAL fragment");
    case FKind::Everyone:
        throw Error("everyone-knows not reducible in PAL fragment");
    case FKind::Safe:
        throw Error("safety not reducible in PAL fragment");
    default:
        throw Error("operator outside the PAL fragment");
    }
}

namespace {

// Push an announcer-tagged box through a box-free body. The announcer points
// are the agents; point b is i-indistinguishable from point a iff
// (a=i <=> b=i). `pre` carries the per-announcer precondition.
class AnonPusher {
public:
    AnonPusher(const AgentRoster& roster, std::vector<Formula> pre, bool safe_flavour)
        : roster_(roster), pre_(std::move(pre)), safe_flavour_(safe_flavour) {}

    Formula push(std::size_t a, const Formula& body) const {
        switch (body.kind()) {
        case FKind::Atom:
        case FKind::Top:
        case FKind::Bot:
            return mk_implies(pre_[a], body);
        case FKind::Not:
            return mk_implies(pre_[a], mk_not(push(a, body.child())));
        case FKind::And:
            return mk_and(push(a, body.lhs()), push(a, body.rhs()));
        case FKind::Or:
            return mk_or(push(a, body.lhs()), push(a, body.rhs()));
        case FKind::Implies:
            return mk_implies(push(a, body.lhs()), push(a, body.rhs()));
        case FKind::Iff:
            return mk_iff(push(a, body.lhs()), push(a, body.rhs()));
        case FKind::Knows: {
            std::size_t i = agent_index(body.agent());
            std::vector<Formula> branches;
            for (std::size_t b = 0; b < roster_.size(); ++b)
                if ((a == i) == (b == i))
                    branches.push_back(push(b, body.child()));
            return mk_implies(pre_[a],
                              knows(body.agent(), mk_big_and(std::move(branches))));
        }
        case FKind::Safe:
            if (safe_flavour_)
                throw Error("cannot reduce: safety under a dynamic box");
            throw Error("safety outside the pseudo-anonymous fragment");
        default:
            throw Error("nested announcement left unreduced"); // unreachable
        }
    }

private:
    const AgentRoster& roster_;
    std::vector<Formula> pre_;
    bool safe_flavour_;

    std::size_t agent_index(const std::string& name) const {
        int idx = roster_.index_of(name);
        if (idx < 0)
            throw Error("unknown agent '" + name + "'");
        return static_cast<std::size_t>(idx);
    }
};

Formula reduce_anon_rec(const Formula& f, const AgentRoster& roster) {
    switch (f.kind()) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bot:
        return f;
    case FKind::Not:
    case FKind::Knows:
        return rebuild_unary(f, reduce_anon_rec(f.child(), roster));
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
        return rebuild_binary(f, reduce_anon_rec(f.lhs(), roster),
                              reduce_anon_rec(f.rhs(), roster));
    case FKind::AnonBox: {
        if (roster.names.empty())
            throw Error("no agents to reduce over");
        Formula announced = reduce_anon_rec(f.announced(), roster);
        Formula body = reduce_anon_rec(f.body(), roster);
        std::vector<Formula> pre;
        pre.reserve(roster.size());
        for (const auto& agent : roster.names) pre.push_back(knows(agent, announced));
        AnonPusher pusher(roster, std::move(pre), /*safe_flavour=*/false);
        std::vector<Formula> conjuncts;
        for (std::size_t a = 0; a < roster.size(); ++a)
            conjuncts.push_back(pusher.push(a, body));
        return mk_big_and(std::move(conjuncts));
    }
    case FKind::AnonByBox: {
        int idx = roster.index_of(f.agent());
        if (idx < 0)
            throw Error("unknown agent '" + f.agent() + "'");
        Formula announced = reduce_anon_rec(f.announced(), roster);
        Formula body = reduce_anon_rec(f.body(), roster);
        std::vector<Formula> pre;
        pre.reserve(roster.size());
        for (const auto& agent : roster.names) pre.push_back(knows(agent, announced));
        AnonPusher pusher(roster, std::move(pre), /*safe_flavour=*/false);
        return pusher.push(static_cast<std::size_t>(idx), body);
    }
    default:
        throw Error("operator outside the pseudo-anonymous fragment");
    }
}

Formula reduce_sai_rec(const Formula& f, const AgentRoster& roster) {
    switch (f.kind()) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bot:
        return f;
    case FKind::Not:
    case FKind::Knows:
        return rebuild_unary(f, reduce_sai_rec(f.child(), roster));
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
        return rebuild_binary(f, reduce_sai_rec(f.lhs(), roster),
                              reduce_sai_rec(f.rhs(), roster));
    case FKind::SafeAnonBox: {
        if (roster.names.empty())
            throw Error("no agents to reduce over");
        Formula announced = reduce_sai_rec(f.announced(), roster);
        Formula body = reduce_sai_rec(f.body(), roster);
        std::vector<Formula> pre;
        pre.reserve(roster.size());
        for (const auto& agent : roster.names)
            pre.push_back(knows(agent, safe(announced)));
        AnonPusher pusher(roster, std::move(pre), /*safe_flavour=*/true);
        std::vector<Formula> conjuncts;
        for (std::size_t a = 0; a < roster.size(); ++a)
            conjuncts.push_back(pusher.push(a, body));
        return mk_big_and(std::move(conjuncts));
    }
    case FKind::Safe:
        throw Error("the input must be safety-free");
    default:
        throw Error("operator outside the safe-announcement fragment");
    }
}

} // namespace

Formula reduce_anon(const Formula& f, const AgentRoster& roster) {
    return reduce_anon_rec(f, roster);
}

Formula reduce_sai(const Formula& f, const AgentRoster& roster) {
    return reduce_sai_rec(f, roster);
}

bool in_epistemic_fragment(const Formula& f) {
    if (is_static_boolean(f.kind()) || f.kind() == FKind::Knows) {
        switch (f.kind()) {
        case FKind::Atom:
        case FKind::Top:
        case FKind::Bot:
            return true;
        case FKind::Not:
        case FKind::Knows:
            return in_epistemic_fragment(f.child());
        default:
            return in_epistemic_fragment(f.lhs()) && in_epistemic_fragment(f.rhs());
        }
    }
    return false;
}

bool in_safe_fragment(const Formula& f) {
    if (f.kind() == FKind::Safe)
        return in_safe_fragment(f.child());
    if (is_static_boolean(f.kind()) || f.kind() == FKind::Knows) {
        switch (f.kind()) {
        case FKind::Atom:
        case FKind::Top:
        case FKind::Bot:
            return true;
        case FKind::Not:
        case FKind::Knows:
            return in_safe_fragment(f.child());
        default:
            return in_safe_fragment(f.lhs()) && in_safe_fragment(f.rhs());
        }
    }
    return false;
}

} // namespace anonpal
