#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "anonpal/anonpal.hpp"

using namespace anonpal;

namespace {

const AgentRoster kAbc{{"a", "b", "c"}};

Formula parse(const std::string& text) { return parse_formula(text, kAbc); }

} // namespace

TEST_CASE("parser maps text onto constructors") {
    Formula f = parse("[anon p] ~K{b} q");
    CHECK(f.kind() == FKind::AnonBox);
    CHECK(f.announced() == atom("p"));
    CHECK(f.body() == neg(knows("b", atom("q"))));

    Formula g = parse("safe p -> E{a,b,c} p");
    CHECK(g.kind() == FKind::Implies);
    CHECK(g.lhs() == safe(atom("p")));
    CHECK(g.rhs() == everyone({"a", "b", "c"}, atom("p")));

    CHECK(parse("true") == top());
    CHECK(parse("false") == bot());
    CHECK(parse("C{a,b} p") == common({"a", "b"}, atom("p")));
    CHECK(parse("[!p] q") == public_box(atom("p"), atom("q")));
    CHECK(parse("[anonby a: p] q") == anon_by_box("a", atom("p"), atom("q")));
    CHECK(parse("[safeanon p] q") == safe_anon_box(atom("p"), atom("q")));
}

TEST_CASE("parser reports positions and bad agents") {
    CHECK_THROWS_AS(parse("K{a} p &"), ParseError);
    try {
        parse("K{a} p &");
    } catch (const ParseError& e) {
        CHECK(e.offset() >= 7); // at or just past the dangling connective
    }
    CHECK_THROWS_AS(parse("K{z} p"), ParseError);   // z not in the roster
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("(p & q"), ParseError);
    CHECK_THROWS_AS(parse("p q"), ParseError);
    CHECK_THROWS_AS(parse("E{} p"), ParseError);

    // an empty roster turns off the agent check
    CHECK(parse_formula("K{z} p", AgentRoster{}).kind() == FKind::Knows);
}

TEST_CASE("precedence and associativity") {
    Formula f = parse("p & q | r");
    CHECK(f.kind() == FKind::Or);
    CHECK(f.lhs().kind() == FKind::And);

    Formula imp = parse("p -> q -> r"); // right-associative
    CHECK(imp.rhs().kind() == FKind::Implies);

    Formula iffs = parse("p <-> q <-> r"); // left-associative
    CHECK(iffs.lhs().kind() == FKind::Iff);

    Formula un = parse("~K{a} p & q");
    CHECK(un.kind() == FKind::And);
    CHECK(un.lhs().kind() == FKind::Not);

    CHECK(parse("safe p & q") == conj(safe(atom("p")), atom("q")));
    CHECK(parse("safe (p & q)") == safe(conj(atom("p"), atom("q"))));
}

TEST_CASE("printer emits canonical text") {
    CHECK(print_formula(anon_box(atom("p"), knows("a", atom("r")))) == "[anon p] K{a} r");
    CHECK(print_formula(safe(conj(atom("p"), atom("q")))) == "safe (p & q)");
    CHECK(print_formula(knows_hat("a", atom("q"))) == "~K{a}~q");
    CHECK(print_formula(parse("~p & q | r -> s0")) == "~p & q | r -> s0");
    CHECK(print_formula(parse("(p -> q) -> r")) == "(p -> q) -> r");
    CHECK(print_formula(parse("p & (q | r)")) == "p & (q | r)");
}

TEST_CASE("parse of print is the identity") {
    AgentRoster roster{{"a", "b", "c", "d"}};
    std::vector<std::string> props = {"p", "q", "r"};
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        Formula f = random_formula(seed, 4, Fragment::Full, roster, props);
        Formula back = parse_formula(print_formula(f), roster);
        CHECK(back == f);
        CHECK(print_formula(back) == print_formula(f));
    }
}

TEST_CASE("formula helpers") {
    Formula f = parse("[anon p] (K{c} q & E{a,b} r)");
    CHECK(contains_kind(f, FKind::AnonBox));
    CHECK(contains_kind(f, FKind::Knows));
    CHECK(!contains_kind(f, FKind::Safe));
    CHECK(contains_box(f));
    CHECK(!contains_safe(f));
    CHECK(contains_safe(parse("safe p")));
    CHECK(agents_mentioned(f) == std::vector<std::string>{"a", "b", "c"});
    CHECK(agents_mentioned(parse("K{b} p & [anonby a: q] true")) ==
          std::vector<std::string>{"a", "b"});
    CHECK(is_box(FKind::PublicBox));
    CHECK(!is_box(FKind::Knows));
}

TEST_CASE("groups are sorted, deduplicated, and non-empty") {
    CHECK(everyone({"c", "a", "c"}, atom("p")).group() ==
          std::vector<std::string>{"a", "c"});
    CHECK_THROWS_AS(everyone({}, atom("p")), Error);
    CHECK_THROWS_AS(common({}, atom("p")), Error);
    CHECK(parse("E{b,a} p") == parse("E{a,b} p"));
}
