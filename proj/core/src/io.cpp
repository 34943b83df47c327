#include "anonpal/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "anonpal/error.hpp"
#include "anonpal/parse.hpp"

namespace anonpal::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string(what) + " is not valid JSON: " + e.what());
    }
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
    if (!j.is_array())
        throw Error("'" + what + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string())
            throw Error("'" + what + "' must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::map<std::string, std::vector<std::vector<std::string>>>
block_map(const json& j, const std::string& what) {
    if (!j.is_object())
        throw Error("'" + what + "' must map agents to lists of blocks");
    std::map<std::string, std::vector<std::vector<std::string>>> out;
    for (const auto& [agent, blocks] : j.items()) {
        if (!blocks.is_array())
            throw Error("'" + what + "." + agent + "' must be a list of blocks");
        std::vector<std::vector<std::string>> parsed;
        for (const auto& b : blocks)
            parsed.push_back(string_list(b, what + "." + agent + " block"));
        out.emplace(agent, std::move(parsed));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ModelSpec spec_from_json(const json& j, const char* what) {
    if (!j.is_object())
        throw Error(std::string(what) + " must be a JSON object");
    ModelSpec spec;
    if (!j.contains("agents"))
        throw Error(std::string(what) + " lacks 'agents'");
    spec.agents = string_list(j.at("agents"), "agents");
    const char* states_key = j.contains("points") ? "points" : "states";
    if (!j.contains(states_key))
        throw Error(std::string(what) + " lacks 'states'");
    spec.states = string_list(j.at(states_key), states_key);
    if (j.contains("relations"))
        spec.partitions = block_map(j.at("relations"), "relations");
    if (j.contains("edges")) {
        auto pairs = block_map(j.at("edges"), "edges");
        for (auto& [agent, blocks] : pairs) {
            std::vector<std::pair<std::string, std::string>> edges;
            for (auto& b : blocks) {
                if (b.size() != 2)
                    throw Error("'edges." + agent + "' entries must be pairs");
                edges.emplace_back(std::move(b[0]), std::move(b[1]));
            }
            spec.edges.emplace(agent, std::move(edges));
        }
    }
    if (j.contains("valuation")) {
        const json& val = j.at("valuation");
        if (!val.is_object())
            throw Error("'valuation' must map states to proposition lists");
        for (const auto& [state, props] : val.items())
            spec.valuation.emplace(state, string_list(props, "valuation." + state));
    }
    if (j.contains("point")) {
        if (!j.at("point").is_string())
            throw Error("'point' must be a state name");
        spec.point = j.at("point").get<std::string>();
    }
    return spec;
}

} // namespace

LoadedModel load_model_json(const std::string& text) {
    json j = parse_json(text, "model file");
    ModelSpec spec = spec_from_json(j, "model file");
    EpistemicModel model = build_model(spec);
    std::optional<std::size_t> point;
    if (spec.point)
        point = static_cast<std::size_t>(model.state_index(*spec.point));
    return {std::move(model), point};
}

LoadedModel load_model_file(const std::string& path) {
    return load_model_json(read_file(path));
}

std::string model_to_json(const EpistemicModel& m, std::optional<std::size_t> point) {
    ordered_json j;
    j["agents"] = m.roster().names;
    j["states"] = m.state_names();
    ordered_json valuation = ordered_json::object();
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        auto props = m.props_at(s);
        if (!props.empty())
            valuation[m.state_name(s)] = props;
    }
    j["valuation"] = std::move(valuation);
    ordered_json relations = ordered_json::object();
    for (std::size_t i = 0; i < m.num_agents(); ++i) {
        ordered_json blocks = ordered_json::array();
        for (const StateSet& block : m.blocks(i)) {
            ordered_json names = ordered_json::array();
            for (std::size_t s : block.members())
                names.push_back(m.state_name(s));
            blocks.push_back(std::move(names));
        }
        relations[m.roster().names[i]] = std::move(blocks);
    }
    j["relations"] = std::move(relations);
    if (point)
        j["point"] = m.state_name(*point);
    return j.dump(2) + "\n";
}

ActionModel load_action_model_json(const std::string& text) {
    json j = parse_json(text, "action model file");
    ModelSpec spec = spec_from_json(j, "action model file");
    if (!spec.valuation.empty())
        throw Error("action model files take 'pre', not 'valuation'");
    EpistemicModel skeleton = build_model(spec);

    if (!j.contains("pre") || !j.at("pre").is_object())
        throw Error("action model file lacks 'pre'");
    AgentRoster roster = skeleton.roster();
    std::vector<Formula> pre;
    for (std::size_t x = 0; x < skeleton.num_states(); ++x) {
        const std::string& name = skeleton.state_name(x);
        if (!j.at("pre").contains(name))
            throw Error("missing precondition for point '" + name + "'");
        const json& entry = j.at("pre").at(name);
        if (!entry.is_string())
            throw Error("precondition for point '" + name + "' must be formula text");
        pre.push_back(parse_formula(entry.get<std::string>(), roster));
    }
    for (const auto& [name, entry] : j.at("pre").items())
        if (skeleton.state_index(name) < 0)
            throw Error("precondition for unknown point '" + name + "'");

    std::vector<std::vector<int>> block_of;
    block_of.reserve(skeleton.num_agents());
    for (std::size_t i = 0; i < skeleton.num_agents(); ++i) {
        std::vector<int> row;
        for (std::size_t x = 0; x < skeleton.num_states(); ++x)
            row.push_back(skeleton.block_id(i, x));
        block_of.push_back(std::move(row));
    }
    return make_action_model(std::move(roster), skeleton.state_names(),
                             std::move(block_of), std::move(pre));
}

ActionModel load_action_model_file(const std::string& path) {
    return load_action_model_json(read_file(path));
}

std::string action_model_to_json(const ActionModel& a) {
    ordered_json j;
    j["agents"] = a.roster.names;
    j["points"] = a.points;
    ordered_json pre = ordered_json::object();
    for (std::size_t x = 0; x < a.num_points(); ++x)
        pre[a.points[x]] = print_formula(a.pre[x]);
    j["pre"] = std::move(pre);
    ordered_json relations = ordered_json::object();
    for (std::size_t i = 0; i < a.roster.size(); ++i) {
        int max_block = 0;
        for (std::size_t x = 0; x < a.num_points(); ++x)
            max_block = std::max(max_block, a.block_of[i][x]);
        ordered_json blocks = ordered_json::array();
        for (int b = 0; b <= max_block; ++b) {
            ordered_json names = ordered_json::array();
            for (std::size_t x = 0; x < a.num_points(); ++x)
                if (a.block_of[i][x] == b)
                    names.push_back(a.points[x]);
            blocks.push_back(std::move(names));
        }
        relations[a.roster.names[i]] = std::move(blocks);
    }
    j["relations"] = std::move(relations);
    return j.dump(2) + "\n";
}

std::string model_to_dot(const EpistemicModel& m) {
    std::ostringstream out;
    out << "graph model {\n";
    out << "  node [shape=circle];\n";
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        out << "  \"" << m.state_name(s) << "\" [label=\"" << m.state_name(s);
        auto props = m.props_at(s);
        if (!props.empty()) {
            out << "\\n";
            for (std::size_t p = 0; p < props.size(); ++p)
                out << (p ? " " : "") << props[p];
        }
        out << "\"];\n";
    }
    // one spanning chain per non-singleton block; edges shared by several
    // agents carry their concatenated names
    std::map<std::pair<std::size_t, std::size_t>, std::string> labels;
    for (std::size_t i = 0; i < m.num_agents(); ++i) {
        for (const StateSet& block : m.blocks(i)) {
            auto members = block.members();
            for (std::size_t k = 0; k + 1 < members.size(); ++k)
                labels[{members[k], members[k + 1]}] += m.roster().names[i];
        }
    }
    for (const auto& [edge, label] : labels)
        out << "  \"" << m.state_name(edge.first) << "\" -- \""
            << m.state_name(edge.second) << "\" [label=\"" << label << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace anonpal::io
