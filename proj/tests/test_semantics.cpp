#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
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

Formula at(const EpistemicModel& m, const std::string& text) {
    return parse_formula(text, m.roster());
}

StateSet random_subset(const EpistemicModel& m, std::mt19937_64& rng) {
    StateSet x = m.empty_set();
    std::bernoulli_distribution coin(0.5);
    for (std::size_t s = 0; s < m.num_states(); ++s)
        if (coin(rng)) x.insert(s);
    return x;
}

// the fixpoint body: union over triples of E_G(x & a)
StateSet safety_step(const EpistemicModel& m, const StateSet& x, const StateSet& a) {
    TripleFamily fam = TripleFamily::of(m.num_agents());
    StateSet out = m.empty_set();
    for (const auto& g : fam.triples)
        out |= everyone_ext(m, std::vector<std::size_t>(g.begin(), g.end()), x & a);
    return out;
}

} // namespace

TEST_CASE("triple families") {
    CHECK(TripleFamily::of(2).empty());
    CHECK(TripleFamily::of(3).size() == 1);
    CHECK(TripleFamily::of(4).size() == 4);
    CHECK(TripleFamily::of(5).size() == 10);
}

TEST_CASE("extensions on the figure models") {
    EpistemicModel f4 = figures::fig4();
    CHECK(extension(f4, at(f4, "safe p")) == set_of(f4, {"v", "w"}));

    EpistemicModel f2 = figures::fig2();
    CHECK(extension(f2, at(f2, "safe p")).empty());

    EpistemicModel f1 = figures::fig1();
    CHECK(extension(f1, at(f1, "K{a} p")) == set_of(f1, {"u", "s"}));
    CHECK(extension(f1, at(f1, "safe true")) == f1.full_set());
    CHECK(extension(f1, at(f1, "true")) == f1.full_set());
    CHECK(extension(f1, at(f1, "false")).empty());

    EpistemicModel f3 = figures::fig3();
    CHECK(extension(f3, at(f3, "safe p")).empty());
}

TEST_CASE("pointed checks on the figure models") {
    EpistemicModel f1 = figures::fig1();
    std::size_t s = static_cast<std::size_t>(f1.state_index("s"));
    CHECK(satisfies(f1, s, at(f1, "[anon p] ~K{b}~(r & K{a}~q)")));
    CHECK(!satisfies(f1, s, at(f1, "[anon p] K{a} r")));

    EpistemicModel f4 = figures::fig4();
    std::size_t v = static_cast<std::size_t>(f4.state_index("v"));
    CHECK(satisfies(f4, v, at(f4, "[safeanon p] K{c} K{d} q")));
    CHECK(satisfies(f4, v, at(f4, "K{a} safe p")));
    CHECK(satisfies(pointed(figures::fig4(), "v"), at(f4, "safe p")));
}

TEST_CASE("everyone-knows extension") {
    EpistemicModel f4 = figures::fig4();
    StateSet p = f4.prop_extension("p");
    CHECK(everyone_ext(f4, std::vector<std::string>{"a", "b", "c"}, p) ==
          set_of(f4, {"t", "u", "v"}));
    // a singleton group collapses to individual knowledge
    CHECK(everyone_ext(f4, std::vector<std::string>{"a"}, p) == knows_ext(f4, "a", p));
    CHECK(everyone_ext(f4, std::vector<std::string>{"a", "b", "c", "d"}, f4.full_set()) ==
          f4.full_set());
    CHECK_THROWS_AS(everyone_ext(f4, std::vector<std::string>{}, p), Error);
    CHECK_THROWS_AS(knows_ext(f4, "z", p), Error);
}

TEST_CASE("common-knowledge extension closes components") {
    EpistemicModel f1 = figures::fig1();
    StateSet p = f1.prop_extension("p");
    CHECK(common_ext(f1, std::vector<std::string>{"a", "b", "c"}, p).empty());

    auto top = public_update(f1, at(f1, "p"));
    REQUIRE(top.has_value());
    CHECK(common_ext(*top, std::vector<std::string>{"a", "b", "c"},
                     top->prop_extension("p")) == top->full_set());

    ModelSpec spec;
    spec.agents = {"a"};
    spec.states = {"s"};
    spec.valuation["s"] = {"p"};
    EpistemicModel one = build_model(spec);
    CHECK(common_ext(one, std::vector<std::string>{"a"}, one.prop_extension("p")) ==
          one.prop_extension("p"));
}

TEST_CASE("safety fixpoint endpoints") {
    EpistemicModel f4 = figures::fig4();
    CHECK(safe_ext(f4, f4.prop_extension("p")) == set_of(f4, {"v", "w"}));

    EpistemicModel f3 = figures::fig3();
    CHECK(safe_ext(f3, f3.prop_extension("p")).empty());

    // fewer than three agents: the triple family is empty, nothing is safe
    ModelSpec spec;
    spec.agents = {"a", "b"};
    spec.states = {"s", "t"};
    spec.valuation["s"] = {"p"};
    spec.valuation["t"] = {"p"};
    EpistemicModel two = build_model(spec);
    CHECK(safe_ext(two, two.full_set()).empty());
    CHECK(extension(two, at(two, "safe true")).empty());
}

TEST_CASE("safety is a fixpoint and the greatest one") {
    std::mt19937_64 rng(2026);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        EpistemicModel m = random_model(seed, 6, 3 + seed % 2, 2);
        StateSet x = random_subset(m, rng);
        StateSet fix = safe_ext(m, x);
        CHECK(fix == safety_step(m, x, fix));       // Mix as extension equality
        CHECK(fix.subset_of(x));                     // Truth containment, |N| >= 3

        // any post-fixpoint is below the greatest fixpoint
        StateSet cand = random_subset(m, rng);
        if (cand.subset_of(safety_step(m, x, cand))) CHECK(cand.subset_of(fix));
    }
}

TEST_CASE("safety is monotone") {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        EpistemicModel m = random_model(seed, 6, 3, 2);
        StateSet x = random_subset(m, rng);
        StateSet y = x | random_subset(m, rng);
        CHECK(safe_ext(m, x).subset_of(safe_ext(m, y)));
    }
}

TEST_CASE("knowing safety means the whole block is safe") {
    EpistemicModel f4 = figures::fig4();
    StateSet safe_p = safe_ext(f4, f4.prop_extension("p"));
    CHECK(extension(f4, at(f4, "K{a} safe p")) == knows_ext(f4, "a", safe_p));

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        EpistemicModel m = random_model(seed, 5, 3, 2);
        StateSet target = safe_ext(m, m.prop_extension("p"));
        CHECK(extension(m, at(m, "K{a} safe p")) == knows_ext(m, "a", target));
    }
}

TEST_CASE("dynamic boxes quantify over applicable announcers") {
    EpistemicModel f1 = figures::fig1();
    // inapplicable announcements make boxes vacuously true
    CHECK(extension(f1, at(f1, "[!false] false")) == f1.full_set());
    CHECK(extension(f1, at(f1, "[anon false] false")) == f1.full_set());
    CHECK(extension(f1, at(f1, "[safeanon false] false")) == f1.full_set());

    // [anonby a: p] reads the single announcer branch
    std::size_t s = static_cast<std::size_t>(f1.state_index("s"));
    CHECK(satisfies(f1, s, at(f1, "[anonby b: p] false"))); // b never knows p
    CHECK(!satisfies(f1, s, at(f1, "[anonby a: p] false")));

    // the anonymous box is the conjunction over announcers
    Formula decomposed = at(f1, "[anonby a: p] q & [anonby b: p] q & [anonby c: p] q");
    CHECK(extension(f1, at(f1, "[anon p] q")) == extension(f1, decomposed));
}
