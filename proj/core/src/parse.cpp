#include "anonpal/parse.hpp"

#include <cctype>

#include "anonpal/error.hpp"

namespace anonpal {

namespace {

bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

class Parser {
public:
    Parser(std::string_view text, const AgentRoster& roster)
        : text_(text), roster_(roster) {}

    Formula parse() {
        Formula f = parse_iff();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(pos_, "unexpected trailing input");
        return f;
    }

private:
    std::string_view text_;
    const AgentRoster& roster_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }

    char peek() { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool try_consume(std::string_view token) {
        skip_ws();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(pos_, std::string("expected '") + c + "' " + what);
        ++pos_;
    }

    std::string read_ident(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (pos_ == start)
            throw ParseError(start, std::string("expected ") + what);
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string read_agent(const char* where) {
        std::size_t start;
        skip_ws();
        start = pos_;
        std::string name = read_ident("an agent name");
        if (!roster_.names.empty() && roster_.index_of(name) < 0)
            throw ParseError(start, "unknown agent '" + name + "' in " + where);
        return name;
    }

    std::vector<std::string> read_group(const char* where) {
        std::vector<std::string> names;
        names.push_back(read_agent(where));
        while (try_consume(","))
            names.push_back(read_agent(where));
        return names;
    }

    Formula parse_iff() {
        Formula f = parse_imp();
        while (try_consume("<->"))
            f = iff(std::move(f), parse_imp());
        return f;
    }

    Formula parse_imp() {
        Formula f = parse_or();
        skip_ws();
        // "->" but not "<->", and "-" alone is not a token
        if (text_.substr(pos_, 2) == "->") {
            pos_ += 2;
            return implies(std::move(f), parse_imp());
        }
        return f;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (true) {
            skip_ws();
            if (peek() == '|') {
                ++pos_;
                f = disj(std::move(f), parse_and());
            } else {
                return f;
            }
        }
    }

    Formula parse_and() {
        Formula f = parse_un();
        while (try_consume("&"))
            f = conj(std::move(f), parse_un());
        return f;
    }

    Formula parse_un() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError(pos_, "expected a formula");
        char c = text_[pos_];
        if (c == '~') {
            ++pos_;
            return neg(parse_un());
        }
        if (c == 'K') {
            ++pos_;
            expect('{', "after K");
            std::string agent = read_agent("K");
            expect('}', "after the agent");
            return knows(std::move(agent), parse_un());
        }
        if (c == 'E' || c == 'C') {
            ++pos_;
            expect('{', c == 'E' ? "after E" : "after C");
            auto group = read_group(c == 'E' ? "E" : "C");
            expect('}', "after the group");
            return c == 'E' ? everyone(std::move(group), parse_un())
                            : common(std::move(group), parse_un());
        }
        if (c == '(') {
            ++pos_;
            Formula f = parse_iff();
            expect(')', "to close the group");
            return f;
        }
        if (c == '[')
            return parse_box();
        if (ident_char(c)) {
            std::size_t start = pos_;
            std::string word = read_ident("a formula");
            if (word == "true")
                return top();
            if (word == "false")
                return bot();
            if (word == "safe")
                return safe(parse_un());
            (void)start;
            return atom(std::move(word));
        }
        throw ParseError(pos_, "expected a formula");
    }

    Formula parse_box() {
        ++pos_; // '['
        skip_ws();
        if (peek() == '!') {
            ++pos_;
            Formula announced = parse_iff();
            expect(']', "to close the announcement");
            return public_box(std::move(announced), parse_un());
        }
        std::size_t start = pos_;
        std::string word = read_ident("an announcement operator");
        if (word == "anon") {
            Formula announced = parse_iff();
            expect(']', "to close the announcement");
            return anon_box(std::move(announced), parse_un());
        }
        if (word == "anonby") {
            std::string agent = read_agent("anonby");
            expect(':', "after the announcer");
            Formula announced = parse_iff();
            expect(']', "to close the announcement");
            return anon_by_box(std::move(agent), std::move(announced), parse_un());
        }
        if (word == "safeanon") {
            Formula announced = parse_iff();
            expect(']', "to close the announcement");
            return safe_anon_box(std::move(announced), parse_un());
        }
        throw ParseError(start, "unknown announcement operator '" + word + "'");
    }
};

// precedence levels; higher binds tighter
enum Level { kIff = 0, kImp = 1, kOr = 2, kAnd = 3, kUn = 4, kPrim = 5 };

int level_of(const Formula& f) {
    switch (f.kind()) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bot:
        return kPrim;
    case FKind::Iff:
        return kIff;
    case FKind::Implies:
        return kImp;
    case FKind::Or:
        return kOr;
    case FKind::And:
        return kAnd;
    default:
        return kUn;
    }
}

void render(const Formula& f, int min_level, std::string& out);

std::string rendered(const Formula& f, int min_level) {
    std::string out;
    render(f, min_level, out);
    return out;
}

void join_group(const std::vector<std::string>& group, std::string& out) {
    for (std::size_t i = 0; i < group.size(); ++i) {
        if (i) out += ',';
        out += group[i];
    }
}

// prefix heads K{a}/E{G}/C{G} take a space before the child unless the child
// opens with '(' or '~'; "safe" always takes one; a closing ']' always does
void prefix_child(const std::string& head, const Formula& child, std::string& out) {
    out += head;
    std::string inner = rendered(child, kUn);
    if (inner.front() != '(' && inner.front() != '~')
        out += ' ';
    out += inner;
}

void render(const Formula& f, int min_level, std::string& out) {
    if (level_of(f) < min_level) {
        out += '(';
        render(f, kIff, out);
        out += ')';
        return;
    }
    switch (f.kind()) {
    case FKind::Atom:
        out += f.prop();
        break;
    case FKind::Top:
        out += "true";
        break;
    case FKind::Bot:
        out += "false";
        break;
    case FKind::Not:
        out += '~';
        render(f.child(), kUn, out);
        break;
    case FKind::And:
        render(f.lhs(), kAnd, out);
        out += " & ";
        render(f.rhs(), kAnd + 1, out);
        break;
    case FKind::Or:
        render(f.lhs(), kOr, out);
        out += " | ";
        render(f.rhs(), kOr + 1, out);
        break;
    case FKind::Implies:
        render(f.lhs(), kImp + 1, out);
        out += " -> ";
        render(f.rhs(), kImp, out);
        break;
    case FKind::Iff:
        render(f.lhs(), kIff, out);
        out += " <-> ";
        render(f.rhs(), kIff + 1, out);
        break;
    case FKind::Knows:
        prefix_child("K{" + f.agent() + "}", f.child(), out);
        break;
    case FKind::Everyone: {
        std::string head = "E{";
        join_group(f.group(), head);
        head += '}';
        prefix_child(head, f.child(), out);
        break;
    }
    case FKind::Common: {
        std::string head = "C{";
        join_group(f.group(), head);
        head += '}';
        prefix_child(head, f.child(), out);
        break;
    }
    case FKind::Safe:
        out += "safe ";
        render(f.child(), kUn, out);
        break;
    case FKind::PublicBox:
        out += "[!";
        render(f.announced(), kIff, out);
        out += "] ";
        render(f.body(), kUn, out);
        break;
    case FKind::AnonBox:
        out += "[anon ";
        render(f.announced(), kIff, out);
        out += "] ";
        render(f.body(), kUn, out);
        break;
    case FKind::AnonByBox:
        out += "[anonby " + f.agent() + ": ";
        render(f.announced(), kIff, out);
        out += "] ";
        render(f.body(), kUn, out);
        break;
    case FKind::SafeAnonBox:
        out += "[safeanon ";
        render(f.announced(), kIff, out);
        out += "] ";
        render(f.body(), kUn, out);
        break;
    case FKind::ProgramBox:
        // no concrete syntax; deliberately refuses to re-parse
        out += "[program] ";
        render(f.body(), kUn, out);
        break;
    }
}

} // namespace

Formula parse_formula(std::string_view text, const AgentRoster& roster) {
    return Parser(text, roster).parse();
}

std::string print_formula(const Formula& f) {
    return rendered(f, kIff);
}

} // namespace anonpal
