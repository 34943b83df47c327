#include "anonpal/formula.hpp"

#include <algorithm>
#include <utility>

#include "anonpal/error.hpp"
#include "anonpal/updates.hpp"

namespace anonpal {

struct Formula::Node {
    FKind kind;
    std::string name;               // prop (Atom) or agent (Knows, AnonByBox)
    std::vector<std::string> group; // Everyone, Common
    std::vector<Formula> args;
    std::shared_ptr<const ActionProgram> program; // ProgramBox
};

Formula make_node(Formula::Node&& node) {
    return Formula(std::make_shared<const Formula::Node>(std::move(node)));
}

FKind Formula::kind() const { return node_->kind; }
const std::string& Formula::prop() const { return node_->name; }
const std::string& Formula::agent() const { return node_->name; }
const std::vector<std::string>& Formula::group() const { return node_->group; }
const Formula& Formula::child() const { return node_->args[0]; }
const Formula& Formula::lhs() const { return node_->args[0]; }
const Formula& Formula::rhs() const { return node_->args[1]; }

const Formula& Formula::announced() const { return node_->args[0]; }

const Formula& Formula::body() const {
    return node_->kind == FKind::ProgramBox ? node_->args[0] : node_->args[1];
}

const ActionProgram& Formula::program() const { return *node_->program; }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_)
        return true;
    if (!node_ || !other.node_)
        return false;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.kind != b.kind || a.name != b.name || a.group != b.group ||
        a.args.size() != b.args.size())
        return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (a.args[i] != b.args[i]) return false;
    if (a.kind == FKind::ProgramBox)
        return a.program == b.program || *a.program == *b.program;
    return true;
}

namespace {

std::vector<std::string> normalize_group(std::vector<std::string> group) {
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    if (group.empty())
        throw Error("empty agent group");
    return group;
}

Formula unary(FKind kind, Formula f) {
    return make_node({kind, "", {}, {std::move(f)}, nullptr});
}

Formula binary(FKind kind, Formula l, Formula r) {
    return make_node({kind, "", {}, {std::move(l), std::move(r)}, nullptr});
}

} // namespace

Formula atom(std::string prop) {
    if (prop.empty())
        throw Error("empty proposition name");
    return make_node({FKind::Atom, std::move(prop), {}, {}, nullptr});
}

Formula top() { return make_node({FKind::Top, "", {}, {}, nullptr}); }
Formula bot() { return make_node({FKind::Bot, "", {}, {}, nullptr}); }

Formula neg(Formula f) { return unary(FKind::Not, std::move(f)); }
Formula conj(Formula l, Formula r) { return binary(FKind::And, std::move(l), std::move(r)); }
Formula disj(Formula l, Formula r) { return binary(FKind::Or, std::move(l), std::move(r)); }
Formula implies(Formula l, Formula r) { return binary(FKind::Implies, std::move(l), std::move(r)); }
Formula iff(Formula l, Formula r) { return binary(FKind::Iff, std::move(l), std::move(r)); }

Formula knows(std::string agent, Formula f) {
    return make_node({FKind::Knows, std::move(agent), {}, {std::move(f)}, nullptr});
}

Formula everyone(std::vector<std::string> group, Formula f) {
    return make_node({FKind::Everyone, "", normalize_group(std::move(group)),
                      {std::move(f)}, nullptr});
}

Formula common(std::vector<std::string> group, Formula f) {
    return make_node({FKind::Common, "", normalize_group(std::move(group)),
                      {std::move(f)}, nullptr});
}

Formula safe(Formula f) { return unary(FKind::Safe, std::move(f)); }

Formula public_box(Formula announced, Formula body) {
    return binary(FKind::PublicBox, std::move(announced), std::move(body));
}

Formula anon_box(Formula announced, Formula body) {
    return binary(FKind::AnonBox, std::move(announced), std::move(body));
}

Formula anon_by_box(std::string agent, Formula announced, Formula body) {
    return make_node({FKind::AnonByBox, std::move(agent), {},
                      {std::move(announced), std::move(body)}, nullptr});
}

Formula safe_anon_box(Formula announced, Formula body) {
    return binary(FKind::SafeAnonBox, std::move(announced), std::move(body));
}

Formula program_box(std::shared_ptr<const ActionProgram> program, Formula body) {
    if (!program || program->points.empty())
        throw Error("empty action program");
    return make_node({FKind::ProgramBox, "", {}, {std::move(body)}, std::move(program)});
}

Formula knows_hat(std::string agent, Formula f) {
    return neg(knows(std::move(agent), neg(std::move(f))));
}

bool is_box(FKind k) {
    return k == FKind::PublicBox || k == FKind::AnonBox || k == FKind::AnonByBox ||
           k == FKind::SafeAnonBox || k == FKind::ProgramBox;
}

namespace {

template <class Pred>
bool contains_impl(const Formula& f, Pred&& pred) {
    if (pred(f))
        return true;
    switch (f.kind()) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bot:
        return false;
    case FKind::Not:
    case FKind::Knows:
    case FKind::Everyone:
    case FKind::Common:
    case FKind::Safe:
        return contains_impl(f.child(), pred);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
        return contains_impl(f.lhs(), pred) || contains_impl(f.rhs(), pred);
    case FKind::PublicBox:
    case FKind::AnonBox:
    case FKind::AnonByBox:
    case FKind::SafeAnonBox:
        return contains_impl(f.announced(), pred) || contains_impl(f.body(), pred);
    case FKind::ProgramBox:
        if (contains_impl(f.body(), pred))
            return true;
        for (const auto& pre : f.program().model->pre)
            if (contains_impl(pre, pred)) return true;
        return false;
    }
    return false;
}

} // namespace

bool contains(const Formula& f, bool (*pred)(const Formula&)) {
    return contains_impl(f, pred);
}

bool contains_kind(const Formula& f, FKind k) {
    return contains_impl(f, [k](const Formula& g) { return g.kind() == k; });
}

bool contains_safe(const Formula& f) { return contains_kind(f, FKind::Safe); }

bool contains_box(const Formula& f) {
    return contains_impl(f, [](const Formula& g) { return is_box(g.kind()); });
}

std::vector<std::string> agents_mentioned(const Formula& f) {
    std::vector<std::string> out;
    contains_impl(f, [&out](const Formula& g) {
        switch (g.kind()) {
        case FKind::Knows:
        case FKind::AnonByBox:
            out.push_back(g.agent());
            break;
        case FKind::Everyone:
        case FKind::Common:
            out.insert(out.end(), g.group().begin(), g.group().end());
            break;
        default:
            break;
        }
        return false;
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace anonpal
