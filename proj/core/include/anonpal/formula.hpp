#pragma once

#include <memory>
#include <string>
#include <vector>

namespace anonpal {

struct ActionProgram;

enum class FKind {
    Atom,
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Knows,
    Everyone,
    Common,
    Safe,
    PublicBox,
    AnonBox,
    AnonByBox,
    SafeAnonBox,
    ProgramBox,
};

// Immutable formula tree. Agent references are stored by name and resolved
// against a model's roster at evaluation time. Groups are kept sorted and
// deduplicated.
class Formula {
public:
    Formula() = default; // empty handle; only assignment is valid on it

    FKind kind() const;
    bool valid() const { return node_ != nullptr; }

    const std::string& prop() const;   // Atom
    const std::string& agent() const;  // Knows, AnonByBox
    const std::vector<std::string>& group() const; // Everyone, Common

    const Formula& child() const;     // Not, Knows, Everyone, Common, Safe
    const Formula& lhs() const;       // And, Or, Implies, Iff
    const Formula& rhs() const;
    const Formula& announced() const; // announcement boxes
    const Formula& body() const;      // all boxes
    const ActionProgram& program() const; // ProgramBox

    bool operator==(const Formula& other) const; // structural
    bool operator!=(const Formula& other) const { return !(*this == other); }

    struct Node;

private:
    std::shared_ptr<const Node> node_;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    friend Formula make_node(Node&& node);
};

Formula atom(std::string prop);
Formula top();
Formula bot();
Formula neg(Formula f);
Formula conj(Formula l, Formula r);
Formula disj(Formula l, Formula r);
Formula implies(Formula l, Formula r);
Formula iff(Formula l, Formula r);
Formula knows(std::string agent, Formula f);
Formula everyone(std::vector<std::string> group, Formula f);
Formula common(std::vector<std::string> group, Formula f);
Formula safe(Formula f);
Formula public_box(Formula announced, Formula body);
Formula anon_box(Formula announced, Formula body);
Formula anon_by_box(std::string agent, Formula announced, Formula body);
Formula safe_anon_box(Formula announced, Formula body);
Formula program_box(std::shared_ptr<const ActionProgram> program, Formula body);

// K̂_a f, as its box normal form ~K{a}~f
Formula knows_hat(std::string agent, Formula f);

bool is_box(FKind k);
// true when some node of f satisfies pred
bool contains(const Formula& f, bool (*pred)(const Formula&));
bool contains_kind(const Formula& f, FKind k);
bool contains_safe(const Formula& f);
bool contains_box(const Formula& f);
// agent names mentioned in K/E/C/anonby nodes, sorted and deduplicated
std::vector<std::string> agents_mentioned(const Formula& f);

} // namespace anonpal
