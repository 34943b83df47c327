#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "anonpal/anonpal.hpp"

using namespace anonpal;

namespace {

StateSet set_of(const EpistemicModel& m, const std::vector<std::string>& names) {
    StateSet x = m.empty_set();
    for (const auto& n : names) x.insert(static_cast<std::size_t>(m.state_index(n)));
    return x;
}

ModelSpec fig2_spec() {
    ModelSpec spec;
    spec.agents = {"a", "b", "c"};
    spec.states = {"s0", "s1"};
    spec.partitions["b"] = {{"s0", "s1"}};
    spec.valuation["s0"] = {"p"};
    return spec;
}

} // namespace

TEST_CASE("state set basics") {
    StateSet x(5);
    CHECK(x.empty());
    CHECK(x.width() == 5);
    x.insert(0);
    x.insert(3);
    CHECK(x.count() == 2);
    CHECK(x.contains(3));
    CHECK(!x.contains(1));
    x.erase(3);
    CHECK(x.members() == std::vector<std::size_t>{0});

    StateSet all = StateSet::all(5);
    CHECK(all.is_all());
    CHECK(x.subset_of(all));
    CHECK((all - x).count() == 4);
    CHECK((~x).count() == 4);
    CHECK((x & all) == x);
    CHECK((x | ~x) == all);
    CHECK(x.intersects(all));
    CHECK(!x.intersects(~x));
}

TEST_CASE("state set members ascend and ordering is lexicographic") {
    StateSet x(70);
    x.insert(65);
    x.insert(2);
    x.insert(40);
    CHECK(x.members() == std::vector<std::size_t>{2, 40, 65});

    StateSet y(70);
    y.insert(2);
    CHECK(y < x);
    CHECK(!(x < y));
}

TEST_CASE("state set width mismatch is rejected") {
    StateSet a(3), b(4);
    CHECK_THROWS(a &= b);
}

TEST_CASE("normalize_partition canonicalizes by first occurrence") {
    auto [ids, blocks] = normalize_partition(4, {7, 2, 7, 5});
    CHECK(ids == std::vector<int>{0, 1, 0, 2});
    CHECK(blocks.size() == 3);
    CHECK(blocks[0].members() == std::vector<std::size_t>{0, 2});
    CHECK_THROWS_AS(normalize_partition(2, {0, -1}), Error);
}

TEST_CASE("build_model validates a two-state spec") {
    EpistemicModel m = build_model(fig2_spec());
    CHECK(m.num_states() == 2);
    CHECK(m.num_agents() == 3);
    CHECK(m.blocks(static_cast<std::size_t>(m.roster().index_of("b"))).size() == 1);
    CHECK(m.blocks(static_cast<std::size_t>(m.roster().index_of("a"))).size() == 2);
    CHECK(m.prop_extension("p").members() == std::vector<std::size_t>{0});
    CHECK(m.prop_extension("nosuch").empty());
}

TEST_CASE("build_model accepts the smallest model") {
    ModelSpec spec;
    spec.agents = {"a"};
    spec.states = {"s"};
    EpistemicModel m = build_model(spec);
    CHECK(m.num_states() == 1);
    CHECK(m.blocks(0).size() == 1);
}

TEST_CASE("build_model rejects malformed specs") {
    ModelSpec overlap = fig2_spec();
    overlap.partitions["a"] = {{"s0"}, {"s0", "s1"}};
    CHECK_THROWS_WITH_AS(build_model(overlap),
                         "block overlap at state 's0' for agent 'a'", Error);

    ModelSpec gap = fig2_spec();
    gap.partitions["a"] = {{"s0"}};
    CHECK_THROWS_AS(build_model(gap), Error);

    ModelSpec dup = fig2_spec();
    dup.states = {"s0", "s0"};
    CHECK_THROWS_AS(build_model(dup), Error);

    ModelSpec unknown = fig2_spec();
    unknown.valuation["zz"] = {"p"};
    CHECK_THROWS_AS(build_model(unknown), Error);

    ModelSpec unknown_block = fig2_spec();
    unknown_block.partitions["b"] = {{"s0", "zz"}};
    CHECK_THROWS_AS(build_model(unknown_block), Error);

    ModelSpec empty;
    empty.agents = {"a"};
    CHECK_THROWS_WITH_AS(build_model(empty), "empty state set", Error);

    ModelSpec both = fig2_spec();
    both.edges["b"] = {{"s0", "s1"}};
    CHECK_THROWS_AS(build_model(both), Error);
}

TEST_CASE("edge lists close to equivalence relations") {
    ModelSpec spec;
    spec.agents = {"a", "b"};
    spec.states = {"s", "t", "u", "v"};
    spec.edges["a"] = {{"s", "t"}, {"t", "u"}};
    EpistemicModel m = build_model(spec);
    std::size_t a = 0;
    CHECK(m.block_id(a, 0) == m.block_id(a, 2)); // s ~ u through t
    CHECK(m.block_id(a, 0) != m.block_id(a, 3));
    // agents absent from relations and edges default to the identity partition
    CHECK(m.blocks(1).size() == 4);
}

TEST_CASE("restriction induces partitions and keeps names") {
    EpistemicModel m = figures::fig1();
    EpistemicModel top = restrict_model(m, set_of(m, {"u", "s", "v", "x"}));
    CHECK(top.num_states() == 4);
    CHECK(top.state_index("t") < 0);
    CHECK(top.state_index("u") >= 0);
    std::size_t a = static_cast<std::size_t>(top.roster().index_of("a"));
    CHECK(top.block_id(a, static_cast<std::size_t>(top.state_index("u"))) ==
          top.block_id(a, static_cast<std::size_t>(top.state_index("s"))));
    CHECK(top.block_id(a, static_cast<std::size_t>(top.state_index("v"))) !=
          top.block_id(a, static_cast<std::size_t>(top.state_index("x"))));

    CHECK(restrict_model(m, m.full_set()) == m);
    CHECK_THROWS_WITH_AS(restrict_model(m, m.empty_set()), "inapplicable restriction",
                         Error);
}

TEST_CASE("restriction of the four-agent model to its safe region") {
    EpistemicModel m = figures::fig4();
    EpistemicModel sub = restrict_model(m, set_of(m, {"v", "w"}));
    CHECK(sub.num_states() == 2);
    std::size_t a = static_cast<std::size_t>(sub.roster().index_of("a"));
    CHECK(sub.blocks(a).size() == 1); // v ~ w for a
    for (const char* name : {"b", "c", "d"}) {
        std::size_t i = static_cast<std::size_t>(sub.roster().index_of(name));
        CHECK(sub.blocks(i).size() == 2);
    }
}

TEST_CASE("bisimilarity across a safe update and the restriction") {
    EpistemicModel m = figures::fig4();
    auto up = safe_anon_update(m, atom("p"));
    REQUIRE(up.has_value());
    EpistemicModel sub = restrict_model(m, set_of(m, {"v", "w"}));
    for (std::size_t i = 0; i < up->model.num_states(); ++i) {
        int j = sub.state_index(m.state_name(up->tags[i].state));
        REQUIRE(j >= 0);
        CHECK(are_bisimilar(up->model, i, sub, static_cast<std::size_t>(j)));
        CHECK(are_bisimilar(sub, static_cast<std::size_t>(j), up->model, i));
    }
}

TEST_CASE("bisimilarity is reflexive and distinguishes the three-state chain") {
    EpistemicModel m = figures::fig5();
    for (std::size_t s = 0; s < m.num_states(); ++s)
        CHECK(are_bisimilar(m, s, m, s));
    std::size_t t = static_cast<std::size_t>(m.state_index("t"));
    std::size_t u = static_cast<std::size_t>(m.state_index("u"));
    CHECK(!are_bisimilar(m, t, m, u));

    PointedModel pt = pointed(figures::fig5(), "t");
    PointedModel pu = pointed(figures::fig5(), "u");
    CHECK(!are_bisimilar(pt, pu));
    CHECK(are_bisimilar(pt, pt));
}

TEST_CASE("bisimulation classes on the figure models") {
    auto classes5 = bisim_classes(figures::fig5());
    CHECK(classes5.size() == 3);
    for (const auto& c : classes5) CHECK(c.count() == 1);

    CHECK(bisim_classes(figures::fig1()).size() == 6);

    ModelSpec spec;
    spec.agents = {"a"};
    spec.states = {"s", "t", "u"};
    spec.partitions["a"] = {{"s"}, {"t"}, {"u"}};
    spec.valuation["s"] = {"p"};
    spec.valuation["t"] = {"p"};
    auto classes = bisim_classes(build_model(spec));
    CHECK(classes.size() == 2);
    bool found_pair = false;
    for (const auto& c : classes) found_pair = found_pair || c.count() == 2;
    CHECK(found_pair);
}

TEST_CASE("blocks partition the states for every agent") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        EpistemicModel m = random_model(seed, 6, 4, 3);
        for (std::size_t i = 0; i < m.num_agents(); ++i) {
            StateSet seen = m.empty_set();
            for (const auto& block : m.blocks(i)) {
                CHECK(!block.empty());
                CHECK(!seen.intersects(block));
                seen |= block;
            }
            CHECK(seen.is_all());
            for (std::size_t s = 0; s < m.num_states(); ++s)
                CHECK(m.block_of(i, s).contains(s)); // reflexive
        }
    }
}

TEST_CASE("bisimilar points satisfy the same static formulas") {
    EpistemicModel m = figures::fig4();
    auto up = safe_anon_update(m, atom("p"));
    REQUIRE(up.has_value());
    StateSet vw = set_of(m, {"v", "w"});
    EpistemicModel sub = restrict_model(m, vw);

    std::vector<std::string> props = {"p", "q"};
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Formula f = random_formula(seed, 3, Fragment::Static, m.roster(), props);
        for (std::size_t i = 0; i < up->model.num_states(); ++i) {
            std::size_t j = static_cast<std::size_t>(
                sub.state_index(m.state_name(up->tags[i].state)));
            CHECK(satisfies(up->model, i, f) == satisfies(sub, j, f));
        }
    }

    // same-model bisimilar pairs drawn from random models
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        EpistemicModel r = random_model(seed, 5, 3, 1);
        auto classes = bisim_classes(r);
        for (const auto& cls : classes) {
            auto mem = cls.members();
            if (mem.size() < 2) continue;
            for (std::uint64_t fs = 1; fs <= 20; ++fs) {
                Formula f = random_formula(seed * 100 + fs, 3, Fragment::Static,
                                           r.roster(), {"p"});
                CHECK(satisfies(r, mem[0], f) == satisfies(r, mem[1], f));
            }
        }
    }
}
