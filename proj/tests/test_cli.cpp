#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "anonpal/anonpal.hpp"

using namespace anonpal;

namespace {

const std::string kCli = ANONPAL_CLI_PATH;
const std::string kFixtures = FIXTURES_DIR;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = kCli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string tmp_path(const std::string& name) { return "/tmp/anonpal_cli_" + name; }

} // namespace

TEST_CASE("check prints verdicts and encodes them in the exit code") {
    auto yes = run("check " + fixture("fig4.json") + " v '[safeanon p] K{c} K{d} q'");
    CHECK(yes.exit_code == 0);
    CHECK(yes.output == "true\n");

    auto no = run("check " + fixture("fig1.json") + " s '[anon p] K{a} r'");
    CHECK(no.exit_code == 1);
    CHECK(no.output == "false\n");

    auto missing = run("check /no/such/model.json s p");
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("error:") == 0);

    auto bad_state = run("check " + fixture("fig1.json") + " zz p");
    CHECK(bad_state.exit_code == 2);

    auto bad_formula = run("check " + fixture("fig1.json") + " s 'p &'");
    CHECK(bad_formula.exit_code == 2);
    CHECK(bad_formula.output.find("syntax error") != std::string::npos);
}

TEST_CASE("extension lists sorted state names") {
    auto safe_p = run("extension " + fixture("fig4.json") + " 'safe p'");
    CHECK(safe_p.exit_code == 0);
    CHECK(safe_p.output == "v w\n");

    auto none = run("extension " + fixture("fig2.json") + " 'safe p'");
    CHECK(none.exit_code == 1);
    CHECK(none.output == "\n");

    auto all = run("extension " + fixture("fig1.json") + " true");
    CHECK(all.exit_code == 0);
    CHECK(all.output == "s t u v w x\n");
}

TEST_CASE("update writes reloadable models") {
    std::string out = tmp_path("anon_fig1.json");
    auto r = run("update " + fixture("fig1.json") + " anon p --out " + out);
    CHECK(r.exit_code == 0);

    auto loaded = io::load_model_file(out);
    auto direct = anon_update(figures::fig1(), atom("p"));
    REQUIRE(direct.has_value());
    CHECK(loaded.model == direct->model);
    CHECK(!loaded.point.has_value());

    auto inner = run("check " + out + " '(s,a)' 'K{a} p'");
    CHECK(inner.exit_code == 0);
    std::remove(out.c_str());
}

TEST_CASE("public updates keep the surviving point") {
    std::string out = tmp_path("pub_fig1.json");
    auto r = run("update " + fixture("fig1.json") + " public p --out " + out);
    CHECK(r.exit_code == 0);
    auto loaded = io::load_model_file(out);
    REQUIRE(loaded.point.has_value());
    CHECK(loaded.model.state_name(*loaded.point) == "s");
    std::remove(out.c_str());
}

TEST_CASE("inapplicable updates exit with one") {
    auto r = run("update " + fixture("fig3.json") + " safeanon p");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("inapplicable") != std::string::npos);
}

TEST_CASE("dot export") {
    std::string dot = tmp_path("fig2_anon.dot");
    auto r = run("update " + fixture("fig2.json") + " anon p --out /dev/null --dot " + dot);
    CHECK(r.exit_code == 0);
    std::ifstream in(dot);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.rfind("graph model {", 0) == 0);
    CHECK(text.find("\"(s,a)\" -- \"(s,c)\" [label=\"b\"];") != std::string::npos);
    std::remove(dot.c_str());
}

TEST_CASE("bisim compares pointed models across files") {
    std::string restr = tmp_path("fig4_safe_region.json");
    std::string updated = tmp_path("fig4_safeanon.json");
    REQUIRE(run("update " + fixture("fig4.json") + " public 'safe p' --out " + restr)
                .exit_code == 0);
    REQUIRE(run("update " + fixture("fig4.json") + " safeanon p --out " + updated)
                .exit_code == 0);

    auto same = run("bisim " + updated + " '(v,a)' " + restr + " v");
    CHECK(same.exit_code == 0);
    CHECK(same.output == "bisimilar\n");

    auto diff = run("bisim " + fixture("fig5.json") + " t " + fixture("fig5.json") + " u");
    CHECK(diff.exit_code == 1);
    CHECK(diff.output == "not bisimilar\n");

    auto self = run("bisim " + fixture("fig1.json") + " s " + fixture("fig1.json") + " s");
    CHECK(self.exit_code == 0);
    std::remove(restr.c_str());
    std::remove(updated.c_str());
}

TEST_CASE("reduce rewrites into the requested fragment") {
    auto pal = run("reduce '[!p] K{a} q' pal");
    CHECK(pal.exit_code == 0);
    CHECK(pal.output == "p -> K{a}(p -> q)\n");

    auto elim = run("reduce 'safe p' safe-elim");
    CHECK(elim.output == "~[safeanon p] false\n");

    auto anon = run("reduce '[anon p] q' anon --agents a,b,c");
    CHECK(anon.output == "(K{a} p -> q) & (K{b} p -> q) & (K{c} p -> q)\n");

    auto sai = run("reduce '[safeanon p] q' sai --agents a,b,c");
    CHECK(sai.output == "(K{a} safe p -> q) & (K{b} safe p -> q) & (K{c} safe p -> q)\n");

    // the roster defaults to the agents the formula mentions
    auto inferred = run("reduce '[anonby b: p] q' anon");
    CHECK(inferred.exit_code == 0);
    CHECK(inferred.output == "K{b} p -> q\n");

    auto id = run("reduce p pal");
    CHECK(id.output == "p\n");

    auto bad = run("reduce '[!p] C{a,b} q' pal");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("common knowledge not reducible") != std::string::npos);

    auto dup = run("reduce '[anon p] q' anon --agents a,a");
    CHECK(dup.exit_code == 2);
}

TEST_CASE("oracle compares the three safety evaluators") {
    auto all = run("oracle " + fixture("fig4.json") + " p");
    CHECK(all.exit_code == 0);
    CHECK(all.output.find("agree") != std::string::npos);
    CHECK(all.output.find("gfp: v w") != std::string::npos);

    auto one = run("oracle " + fixture("fig4.json") + " p --method assign");
    CHECK(one.exit_code == 0);
    CHECK(one.output == "v w\n");

    auto capped = run("oracle " + fixture("fig4.json") + " p --max-states 3");
    CHECK(capped.exit_code == 2);
    CHECK(capped.output.find("--max-states") != std::string::npos);
}

TEST_CASE("search runs the announcement experiments") {
    auto verbose = run("search " + fixture("fig1.json") +
                       " public --state s --target 'r & ~K{a}~q & ~K{b}~(K{a}(~q & r)) & K{b} p'");
    CHECK(verbose.exit_code == 1);
    CHECK(verbose.output.empty());

    auto hits = run("search " + fixture("fig1.json") + " public --state s --target p");
    CHECK(hits.exit_code == 0);
    CHECK(!hits.output.empty());

    std::string goal = tmp_path("fig5_goal.json");
    REQUIRE(run("update " + fixture("fig5.json") + " public p --out " + goal).exit_code == 0);
    auto anon = run("search " + fixture("fig5.json") + " anon --goal " + goal);
    CHECK(anon.exit_code == 1);
    CHECK(anon.output.empty());
    std::remove(goal.c_str());

    auto misuse = run("search " + fixture("fig1.json") + " public");
    CHECK(misuse.exit_code == 2);
}

TEST_CASE("random generation is reproducible") {
    auto a = run("random --kind model --seed 12 --states 5 --agents 3 --props 2");
    auto b = run("random --kind model --seed 12 --states 5 --agents 3 --props 2");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    auto loaded = io::load_model_json(a.output);
    CHECK(loaded.model.num_states() == 5);

    auto f1 = run("random --kind formula --seed 4 --depth 3 --fragment static");
    auto f2 = run("random --kind formula --seed 4 --depth 3 --fragment static");
    CHECK(f1.output == f2.output);
    Formula f = parse_formula(f1.output.substr(0, f1.output.size() - 1), AgentRoster{});
    CHECK(!contains_box(f));

    auto bad = run("random --kind formula --fragment nosuch");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("demo replays the documented figure checks") {
    auto all = run("demo all");
    CHECK(all.exit_code == 0);
    CHECK(all.output.find("FAIL") == std::string::npos);
    CHECK(all.output.find("ok   fig4: safe p holds exactly at v and w") != std::string::npos);

    auto one = run("demo fig2");
    CHECK(one.exit_code == 0);

    auto unknown = run("demo nope");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("json output is machine readable") {
    auto verdict = run("--json check " + fixture("fig2.json") + " s 'K{a} p'");
    CHECK(verdict.exit_code == 0);
    auto parsed = nlohmann::json::parse(verdict.output);
    CHECK(parsed["verdict"] == true);

    auto oracle = run("--json oracle " + fixture("fig4.json") + " p");
    auto agree = nlohmann::json::parse(oracle.output);
    CHECK(agree["agree"] == true);
    CHECK(agree["gfp"] == nlohmann::json::array({"v", "w"}));

    auto reduce = run("--json reduce 'safe p' safe-elim");
    auto formula = nlohmann::json::parse(reduce.output);
    CHECK(formula["formula"] == "~[safeanon p] false");

    auto update = run("--json update " + fixture("fig2.json") + " safeanon p");
    auto inapp = nlohmann::json::parse(update.output);
    CHECK(inapp["applicable"] == false);
}

TEST_CASE("safety on a small roster warns") {
    std::string two = tmp_path("two_agents.json");
    {
        std::ofstream out(two);
        out << R"({"agents": ["a", "b"], "states": ["s"],
                   "valuation": {"s": ["p"]}, "point": "s"})";
    }
    auto r = run("check " + two + " s 'safe p'");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("warning: fewer than three agents") != std::string::npos);
    std::remove(two.c_str());
}

TEST_CASE("help and dispatch") {
    auto help = run("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("check") != std::string::npos);

    auto nothing = run("");
    CHECK(nothing.exit_code == 2);

    auto unknown = run("frobnicate");
    CHECK(unknown.exit_code == 2);
}
