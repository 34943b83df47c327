#pragma once

#include <optional>
#include <string>

#include "anonpal/model.hpp"
#include "anonpal/updates.hpp"

namespace anonpal::io {

// Model files are JSON:
//   { "agents": ["a","b","c"], "states": ["s","t"],
//     "valuation": {"s": ["p","r"]},
//     "relations": {"b": [["s","t"]]},      // per-agent partition blocks
//     "edges": {"c": [["s","t"]]},          // or edge pairs, closed to an
//                                           // equivalence relation
//     "point": "s" }                        // optional
// Agents appearing in neither "relations" nor "edges" get the identity
// partition. Action-model files use "pre": {"point": "formula text"} in
// place of "valuation".

struct LoadedModel {
    EpistemicModel model;
    std::optional<std::size_t> point;
};

LoadedModel load_model_json(const std::string& text);
LoadedModel load_model_file(const std::string& path);
std::string model_to_json(const EpistemicModel& m,
                          std::optional<std::size_t> point = std::nullopt);

ActionModel load_action_model_json(const std::string& text);
ActionModel load_action_model_file(const std::string& path);
std::string action_model_to_json(const ActionModel& a);

// Deterministic DOT rendering: one spanning chain per non-singleton block,
// edge labels concatenate the agents sharing the pair.
std::string model_to_dot(const EpistemicModel& m);

} // namespace anonpal::io
