#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "anonpal/anonpal.hpp"

using namespace anonpal;
using ojson = nlohmann::ordered_json;

namespace {

bool g_json = false;

void out_json(const ojson& payload) { std::cout << payload.dump(2) << "\n"; }

std::vector<std::string> sorted_names(const EpistemicModel& m, const StateSet& x) {
    std::vector<std::string> names;
    for (std::size_t s : x.members()) names.push_back(m.state_name(s));
    std::sort(names.begin(), names.end());
    return names;
}

std::string joined(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += " ";
        out += names[i];
    }
    return out;
}

std::size_t state_or_throw(const EpistemicModel& m, const std::string& name) {
    int idx = m.state_index(name);
    if (idx < 0)
        throw Error("unknown state '" + name + "'");
    return static_cast<std::size_t>(idx);
}

void warn_vacuous_safety(const EpistemicModel& m) {
    static bool warned = false;
    if (!warned && m.num_agents() < 3) {
        std::cerr << "warning: fewer than three agents, nothing is safe to announce\n";
        warned = true;
    }
}

void warn_if_safety_used(const EpistemicModel& m, const Formula& f) {
    if (contains_kind(f, FKind::Safe) || contains_kind(f, FKind::SafeAnonBox))
        warn_vacuous_safety(m);
}

void check_size(const EpistemicModel& m, std::size_t max_states) {
    if (max_states && m.num_states() > max_states)
        throw Error("model exceeds --max-states");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write file '" + path + "'");
    out << text;
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    for (char c : csv) {
        if (c == ',') {
            out.push_back(item);
            item.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            item += c;
        }
    }
    out.push_back(item);
    for (const auto& name : out)
        if (name.empty())
            throw Error("empty agent name in the list");
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (out[i] == out[j])
                throw Error("duplicate agent name '" + out[i] + "'");
    return out;
}

std::string default_agent(std::size_t i) {
    return std::string(1, static_cast<char>('a' + i));
}

std::string default_prop(std::size_t i) {
    static const char* first[] = {"p", "q", "r"};
    if (i < 3) return first[i];
    return "p" + std::to_string(i);
}

Fragment fragment_of(const std::string& name) {
    if (name == "boolean") return Fragment::Boolean;
    if (name == "epistemic") return Fragment::Epistemic;
    if (name == "static") return Fragment::Static;
    if (name == "pal") return Fragment::Pal;
    if (name == "anon") return Fragment::Anon;
    if (name == "sai") return Fragment::Sai;
    if (name == "full") return Fragment::Full;
    throw Error("unknown fragment '" + name + "'");
}

int cmd_check(const std::string& model_file, const std::string& state,
              const std::string& text) {
    auto loaded = io::load_model_file(model_file);
    std::size_t s = state_or_throw(loaded.model, state);
    Formula f = parse_formula(text, loaded.model.roster());
    warn_if_safety_used(loaded.model, f);
    bool verdict = satisfies(loaded.model, s, f);
    if (g_json)
        out_json({{"verdict", verdict}});
    else
        std::cout << (verdict ? "true" : "false") << "\n";
    return verdict ? 0 : 1;
}

int cmd_extension(const std::string& model_file, const std::string& text) {
    auto loaded = io::load_model_file(model_file);
    Formula f = parse_formula(text, loaded.model.roster());
    warn_if_safety_used(loaded.model, f);
    StateSet ext = extension(loaded.model, f);
    auto names = sorted_names(loaded.model, ext);
    if (g_json)
        out_json({{"states", names}});
    else
        std::cout << joined(names) << "\n";
    return ext.empty() ? 1 : 0;
}

int cmd_update(const std::string& model_file, const std::string& op,
               const std::string& text, const std::string& out_file,
               const std::string& dot_file) {
    auto loaded = io::load_model_file(model_file);
    Formula f = parse_formula(text, loaded.model.roster());
    warn_if_safety_used(loaded.model, f);
    if (op == "safeanon")
        warn_vacuous_safety(loaded.model);

    std::optional<EpistemicModel> updated;
    std::optional<std::size_t> point;
    if (op == "public") {
        auto r = public_update(loaded.model, f);
        if (r) {
            if (loaded.point) {
                int idx = r->state_index(loaded.model.state_name(*loaded.point));
                if (idx >= 0) point = static_cast<std::size_t>(idx);
            }
            updated = std::move(r);
        }
    } else if (op == "anon" || op == "safeanon") {
        auto r = op == "anon" ? anon_update(loaded.model, f)
                              : safe_anon_update(loaded.model, f);
        if (r) updated = std::move(r->model);
    } else {
        throw Error("unknown update operation '" + op + "'");
    }

    if (!updated) {
        if (g_json)
            out_json({{"applicable", false}});
        else
            std::cout << "inapplicable\n";
        return 1;
    }
    std::string model_text = io::model_to_json(*updated, point);
    if (!out_file.empty()) write_text_file(out_file, model_text);
    if (!dot_file.empty()) write_text_file(dot_file, io::model_to_dot(*updated));
    if (g_json) {
        ojson payload;
        payload["applicable"] = true;
        payload["model"] = ojson::parse(model_text);
        out_json(payload);
    } else if (out_file.empty()) {
        std::cout << model_text;
    }
    return 0;
}

int cmd_bisim(const std::string& file_a, const std::string& state_a,
              const std::string& file_b, const std::string& state_b) {
    auto la = io::load_model_file(file_a);
    auto lb = io::load_model_file(file_b);
    std::size_t sa = state_or_throw(la.model, state_a);
    std::size_t sb = state_or_throw(lb.model, state_b);
    bool verdict = are_bisimilar(la.model, sa, lb.model, sb);
    if (g_json)
        out_json({{"bisimilar", verdict}});
    else
        std::cout << (verdict ? "bisimilar" : "not bisimilar") << "\n";
    return verdict ? 0 : 1;
}

int cmd_reduce(const std::string& text, const std::string& target,
               const std::string& agents_csv) {
    Formula f = parse_formula(text, AgentRoster{});
    AgentRoster roster;
    roster.names = agents_csv.empty() ? agents_mentioned(f) : split_csv(agents_csv);
    Formula out;
    if (target == "safe-elim")
        out = eliminate_safe(f);
    else if (target == "pal")
        out = reduce_pal(f);
    else if (target == "anon")
        out = reduce_anon(f, roster);
    else if (target == "sai")
        out = reduce_sai(f, roster);
    else
        throw Error("unknown reduction target '" + target + "'");
    std::string printed = print_formula(out);
    if (g_json)
        out_json({{"formula", printed}});
    else
        std::cout << printed << "\n";
    return 0;
}

int cmd_oracle(const std::string& model_file, const std::string& text,
               const std::string& method, std::size_t max_states) {
    auto loaded = io::load_model_file(model_file);
    check_size(loaded.model, max_states);
    warn_vacuous_safety(loaded.model);
    Formula f = parse_formula(text, loaded.model.roster());
    StateSet x = extension(loaded.model, f);
    auto run = [&](const std::string& name) -> StateSet {
        if (name == "gfp") return safe_ext(loaded.model, x);
        if (name == "iter")
            return safe_iterative(loaded.model, x, loaded.model.num_states());
        if (name == "assign") return safe_assignment(loaded.model, x);
        throw Error("unknown oracle method '" + name + "'");
    };
    if (!method.empty()) {
        StateSet r = run(method);
        auto names = sorted_names(loaded.model, r);
        if (g_json)
            out_json({{"method", method}, {"states", names}});
        else
            std::cout << joined(names) << "\n";
        return r.empty() ? 1 : 0;
    }
    StateSet gfp = run("gfp");
    StateSet iter = run("iter");
    StateSet assign = run("assign");
    bool agree = gfp == iter && iter == assign;
    if (g_json) {
        out_json({{"gfp", sorted_names(loaded.model, gfp)},
                  {"iter", sorted_names(loaded.model, iter)},
                  {"assign", sorted_names(loaded.model, assign)},
                  {"agree", agree}});
    } else {
        std::cout << "gfp: " << joined(sorted_names(loaded.model, gfp)) << "\n";
        std::cout << "iter: " << joined(sorted_names(loaded.model, iter)) << "\n";
        std::cout << "assign: " << joined(sorted_names(loaded.model, assign)) << "\n";
        std::cout << (agree ? "agree" : "MISMATCH") << "\n";
    }
    return agree ? 0 : 1;
}

int cmd_search(const std::string& model_file, const std::string& kind,
               const std::string& state, const std::string& target_text,
               const std::string& goal_file, const std::string& goal_state,
               std::size_t max_states) {
    auto loaded = io::load_model_file(model_file);
    check_size(loaded.model, max_states);
    if (kind == "public") {
        if (state.empty() || target_text.empty())
            throw Error("search public needs --state and --target");
        std::size_t s = state_or_throw(loaded.model, state);
        Formula target = parse_formula(target_text, loaded.model.roster());
        warn_if_safety_used(loaded.model, target);
        auto hits = search_public_counterexample(loaded.model, s, target);
        if (g_json) {
            ojson arr = ojson::array();
            for (const auto& x : hits) arr.push_back(sorted_names(loaded.model, x));
            out_json({{"hits", arr}});
        } else {
            for (const auto& x : hits)
                std::cout << joined(sorted_names(loaded.model, x)) << "\n";
        }
        return hits.empty() ? 1 : 0;
    }
    if (kind == "anon") {
        if (goal_file.empty())
            throw Error("search anon needs --goal");
        auto gl = io::load_model_file(goal_file);
        std::optional<std::size_t> gp = gl.point;
        if (!goal_state.empty()) gp = state_or_throw(gl.model, goal_state);
        if (!gp)
            throw Error("the goal model needs a point ('point' in the file or --goal-state)");
        PointedModel goal{std::make_shared<const EpistemicModel>(std::move(gl.model)), *gp};
        auto hits = search_anon_counterexample(loaded.model, goal);
        if (g_json) {
            ojson arr = ojson::array();
            for (const auto& h : hits)
                arr.push_back({{"announcement", sorted_names(loaded.model, h.announcement)},
                               {"point", h.update_state}});
            out_json({{"hits", arr}});
        } else {
            for (const auto& h : hits)
                std::cout << h.update_state << ": "
                          << joined(sorted_names(loaded.model, h.announcement)) << "\n";
        }
        return hits.empty() ? 1 : 0;
    }
    throw Error("unknown search kind '" + kind + "'");
}

int cmd_random(const std::string& kind, std::uint64_t seed, std::size_t states,
               std::size_t agents, std::size_t props, std::size_t depth,
               const std::string& fragment, const std::string& out_file) {
    if (kind == "model") {
        EpistemicModel m = random_model(seed, states, agents, props);
        std::string text = io::model_to_json(m);
        if (!out_file.empty())
            write_text_file(out_file, text);
        else
            std::cout << text;
        return 0;
    }
    if (kind == "formula") {
        if (agents == 0 || agents > 26)
            throw Error("between 1 and 26 agents for a random formula");
        AgentRoster roster;
        for (std::size_t i = 0; i < agents; ++i) roster.names.push_back(default_agent(i));
        std::vector<std::string> plist;
        for (std::size_t i = 0; i < std::max<std::size_t>(props, 1); ++i)
            plist.push_back(default_prop(i));
        Formula f = random_formula(seed, depth, fragment_of(fragment), roster, plist);
        std::string printed = print_formula(f);
        if (!out_file.empty()) write_text_file(out_file, printed + "\n");
        if (g_json)
            out_json({{"formula", printed}});
        else if (out_file.empty())
            std::cout << printed << "\n";
        return 0;
    }
    throw Error("unknown random kind '" + kind + "'");
}

class DemoReport {
public:
    void check(const std::string& what, bool ok) {
        results_.emplace_back(what, ok);
        if (!ok) ++failures_;
    }

    int finish() const {
        if (g_json) {
            ojson arr = ojson::array();
            for (const auto& [what, ok] : results_)
                arr.push_back({{"check", what}, {"pass", ok}});
            out_json({{"checks", arr}, {"failures", failures_}});
        } else {
            for (const auto& [what, ok] : results_)
                std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        }
        return failures_ ? 1 : 0;
    }

private:
    std::vector<std::pair<std::string, bool>> results_;
    int failures_ = 0;
};

void demo_fig1(DemoReport& d) {
    EpistemicModel m = figures::fig1();
    auto F = [&](const char* t) { return parse_formula(t, m.roster()); };
    std::size_t s = state_or_throw(m, "s");
    d.check("fig1: [anon p] ~K{b}~(r & K{a}~q) at s",
            satisfies(m, s, F("[anon p] ~K{b}~(r & K{a}~q)")));
    d.check("fig1: [!p] ~K{b}~(r & K{a}~q) fails at s",
            !satisfies(m, s, F("[!p] ~K{b}~(r & K{a}~q)")));
    d.check("fig1: [!(K{a} p | K{b} p | K{c} p)] ~K{b}~(r & K{a}~q) fails at s",
            !satisfies(m, s, F("[!(K{a} p | K{b} p | K{c} p)] ~K{b}~(r & K{a}~q)")));
    d.check("fig1: [anon p] K{a} r fails at s", !satisfies(m, s, F("[anon p] K{a} r")));
    auto pub = public_update(m, F("p"));
    auto anon = anon_update(m, F("p"));
    auto some = public_update(m, F("K{a} p | K{b} p | K{c} p"));
    bool distinct = pub && anon && some;
    if (distinct) {
        std::size_t ps = state_or_throw(*pub, "s");
        std::size_t ss = state_or_throw(*some, "s");
        std::size_t sa = state_or_throw(anon->model, "(s,a)");
        distinct = !are_bisimilar(*pub, ps, anon->model, sa) &&
                   !are_bisimilar(*pub, ps, *some, ss) &&
                   !are_bisimilar(anon->model, sa, *some, ss);
    }
    d.check("fig1: p!, anon p, somebody-knows-p! pairwise non-bisimilar at s", distinct);
}

void demo_fig2(DemoReport& d) {
    EpistemicModel m = figures::fig2();
    auto F = [&](const char* t) { return parse_formula(t, m.roster()); };
    d.check("fig2: safe p holds nowhere", extension(m, F("safe p")).empty());
    auto anon = anon_update(m, F("p"));
    bool shape = anon.has_value();
    if (shape) {
        auto names = anon->model.state_names();
        std::sort(names.begin(), names.end());
        shape = names == std::vector<std::string>{"(s,a)", "(s,c)"};
    }
    d.check("fig2: anon p yields exactly (s,a) and (s,c)", shape);
    bool blink = false;
    if (anon) {
        auto b = static_cast<std::size_t>(anon->model.roster().index_of("b"));
        blink = anon->model.block_id(b, 0) == anon->model.block_id(b, 1);
    }
    d.check("fig2: b cannot tell the two announcers apart", blink);
    d.check("fig2: safeanon p is inapplicable", !safe_anon_update(m, F("p")));
}

void demo_fig3(DemoReport& d) {
    EpistemicModel m = figures::fig3();
    auto F = [&](const char* t) { return parse_formula(t, m.roster()); };
    d.check("fig3: safe p holds nowhere", extension(m, F("safe p")).empty());
    auto anon = anon_update(m, F("p"));
    d.check("fig3: anon p yields five states", anon && anon->model.num_states() == 5);
    d.check("fig3: safeanon p is inapplicable", !safe_anon_update(m, F("p")));
}

void demo_fig4(DemoReport& d) {
    EpistemicModel m = figures::fig4();
    auto F = [&](const char* t) { return parse_formula(t, m.roster()); };
    StateSet vw = m.empty_set();
    vw.insert(state_or_throw(m, "v"));
    vw.insert(state_or_throw(m, "w"));
    d.check("fig4: safe p holds exactly at v and w", extension(m, F("safe p")) == vw);
    d.check("fig4: safe p fails at s, t, u",
            !satisfies(m, state_or_throw(m, "s"), F("safe p")) &&
                !satisfies(m, state_or_throw(m, "t"), F("safe p")) &&
                !satisfies(m, state_or_throw(m, "u"), F("safe p")));
    d.check("fig4: K{a} safe p at v",
            satisfies(m, state_or_throw(m, "v"), F("K{a} safe p")));
    d.check("fig4: [safeanon p] K{c} K{d} q at v",
            satisfies(m, state_or_throw(m, "v"), F("[safeanon p] K{c} K{d} q")));
    auto up = safe_anon_update(m, F("p"));
    bool shape = up.has_value();
    if (shape) {
        auto names = up->model.state_names();
        std::sort(names.begin(), names.end());
        shape = names == std::vector<std::string>{"(v,a)", "(v,b)", "(v,c)",
                                                  "(w,a)", "(w,b)", "(w,d)"};
    }
    d.check("fig4: safeanon p yields the six expected states", shape);
    bool bis = up.has_value();
    if (bis) {
        EpistemicModel sub = restrict_model(m, vw);
        for (std::size_t i = 0; i < up->model.num_states(); ++i) {
            int j = sub.state_index(m.state_name(up->tags[i].state));
            bis = bis && j >= 0 &&
                  are_bisimilar(up->model, i, sub, static_cast<std::size_t>(j));
        }
    }
    d.check("fig4: each updated point is bisimilar to the {v,w} submodel", bis);
}

void demo_fig5(DemoReport& d) {
    EpistemicModel m = figures::fig5();
    auto F = [&](const char* t) { return parse_formula(t, m.roster()); };
    d.check("fig5: three singleton bisimulation classes", bisim_classes(m).size() == 3);
    auto pub = public_update(m, F("p"));
    d.check("fig5: p! leaves the single state s", pub && pub->num_states() == 1);
    bool empty_hits = false;
    if (pub) {
        PointedModel goal{std::make_shared<const EpistemicModel>(std::move(*pub)), 0};
        empty_hits = search_anon_counterexample(m, goal).empty();
    }
    d.check("fig5: no pseudo-anonymous announcement matches p!", empty_hits);
}

int cmd_demo(const std::string& id) {
    DemoReport d;
    if (id == "fig1") demo_fig1(d);
    else if (id == "fig2") demo_fig2(d);
    else if (id == "fig3") demo_fig3(d);
    else if (id == "fig4") demo_fig4(d);
    else if (id == "fig5") demo_fig5(d);
    else if (id == "all") {
        demo_fig1(d);
        demo_fig2(d);
        demo_fig3(d);
        demo_fig4(d);
        demo_fig5(d);
    } else {
        throw Error("unknown figure '" + id + "' (try fig1..fig5 or all)");
    }
    return d.finish();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"anonpal: model checking for anonymous public announcements"};
    app.fallthrough();
    app.add_flag("--json", g_json, "machine-readable verdicts");

    std::string model_file, state, formula_text, op, out_file, dot_file;
    std::string file_b, state_b, target, agents_csv, method, srch_kind;
    std::string goal_file, goal_state, rnd_kind = "model", fragment = "full";
    std::uint64_t seed = 1;
    std::size_t n_states = 5, n_agents = 3, n_props = 3, depth = 3, max_states = 0;
    std::string demo_id;

    auto* check = app.add_subcommand("check", "evaluate a formula at a state");
    check->add_option("model", model_file, "model file")->required();
    check->add_option("state", state, "state name")->required();
    check->add_option("formula", formula_text, "formula text")->required();

    auto* extension_cmd = app.add_subcommand("extension", "list the states satisfying a formula");
    extension_cmd->add_option("model", model_file, "model file")->required();
    extension_cmd->add_option("formula", formula_text, "formula text")->required();

    auto* update = app.add_subcommand("update", "announce and write the updated model");
    update->add_option("model", model_file, "model file")->required();
    update->add_option("op", op, "public, anon or safeanon")
        ->required()
        ->check(CLI::IsMember({"public", "anon", "safeanon"}));
    update->add_option("formula", formula_text, "announced formula")->required();
    update->add_option("--out", out_file, "write the updated model here");
    update->add_option("--dot", dot_file, "write a DOT rendering here");

    auto* bisim = app.add_subcommand("bisim", "compare two pointed models");
    bisim->add_option("modelA", model_file, "first model file")->required();
    bisim->add_option("stateA", state, "state in the first model")->required();
    bisim->add_option("modelB", file_b, "second model file")->required();
    bisim->add_option("stateB", state_b, "state in the second model")->required();

    auto* reduce = app.add_subcommand("reduce", "rewrite a formula into a static fragment");
    reduce->add_option("formula", formula_text, "formula text")->required();
    reduce->add_option("target", target, "pal, anon, sai or safe-elim")
        ->required()
        ->check(CLI::IsMember({"pal", "anon", "sai", "safe-elim"}));
    reduce->add_option("--agents", agents_csv,
                       "comma-separated roster (default: agents mentioned)");

    auto* oracle = app.add_subcommand("oracle", "compare the safety evaluators");
    oracle->add_option("model", model_file, "model file")->required();
    oracle->add_option("formula", formula_text, "announced formula")->required();
    oracle->add_option("--method", method, "gfp, iter or assign (default: compare all)")
        ->check(CLI::IsMember({"gfp", "iter", "assign"}));
    oracle->add_option("--max-states", max_states, "refuse larger models");

    auto* search = app.add_subcommand("search", "enumerate announcements reaching a goal");
    search->add_option("model", model_file, "model file")->required();
    search->add_option("kind", srch_kind, "public or anon")
        ->required()
        ->check(CLI::IsMember({"public", "anon"}));
    search->add_option("--state", state, "evaluation state (public)");
    search->add_option("--target", target, "target formula (public)");
    search->add_option("--goal", goal_file, "goal model file (anon)");
    search->add_option("--goal-state", goal_state, "goal point (anon)");
    search->add_option("--max-states", max_states, "refuse larger models");

    auto* random_cmd = app.add_subcommand("random", "seeded model or formula generator");
    random_cmd->add_option("--kind", rnd_kind, "model or formula")
        ->check(CLI::IsMember({"model", "formula"}));
    random_cmd->add_option("--seed", seed, "generator seed");
    random_cmd->add_option("--states", n_states, "number of states");
    random_cmd->add_option("--agents", n_agents, "number of agents");
    random_cmd->add_option("--props", n_props, "number of propositions");
    random_cmd->add_option("--depth", depth, "formula depth");
    random_cmd->add_option("--fragment", fragment,
                           "boolean, epistemic, static, pal, anon, sai or full");
    random_cmd->add_option("--out", out_file, "write the result here");

    auto* demo = app.add_subcommand("demo", "replay the documented figure checks");
    demo->add_option("figure", demo_id, "fig1..fig5 or all")->required();

    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(check)) return cmd_check(model_file, state, formula_text);
        if (app.got_subcommand(extension_cmd)) return cmd_extension(model_file, formula_text);
        if (app.got_subcommand(update))
            return cmd_update(model_file, op, formula_text, out_file, dot_file);
        if (app.got_subcommand(bisim)) return cmd_bisim(model_file, state, file_b, state_b);
        if (app.got_subcommand(reduce)) return cmd_reduce(formula_text, target, agents_csv);
        if (app.got_subcommand(oracle))
            return cmd_oracle(model_file, formula_text, method, max_states);
        if (app.got_subcommand(search))
            return cmd_search(model_file, srch_kind, state, target, goal_file, goal_state,
                              max_states);
        if (app.got_subcommand(random_cmd))
            return cmd_random(rnd_kind, seed, n_states, n_agents, n_props, depth, fragment,
                              out_file);
        if (app.got_subcommand(demo)) return cmd_demo(demo_id);
        std::cerr << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
