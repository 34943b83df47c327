#include "anonpal/figures.hpp"

namespace anonpal::figures {

EpistemicModel fig1() {
    ModelSpec spec;
    spec.agents = {"a", "b", "c"};
    spec.states = {"t", "u", "s", "v", "w", "x"};
    spec.partitions["a"] = {{"t", "x"}, {"u", "s"}, {"v", "w"}};
    spec.partitions["b"] = {{"t", "u", "s", "v", "w", "x"}};
    spec.partitions["c"] = {{"t", "u"}, {"x", "w"}, {"s"}, {"v"}};
    spec.valuation["u"] = {"p", "q"};
    spec.valuation["s"] = {"p", "r"};
    spec.valuation["v"] = {"p"};
    spec.valuation["x"] = {"p", "o"};
    spec.point = "s";
    return build_model(spec);
}

EpistemicModel fig2() {
    ModelSpec spec;
    spec.agents = {"a", "b", "c"};
    spec.states = {"s", "t"};
    spec.partitions["b"] = {{"s", "t"}};
    spec.valuation["s"] = {"p"};
    spec.point = "s";
    return build_model(spec);
}

EpistemicModel fig3() {
    ModelSpec spec;
    spec.agents = {"a", "b", "c"};
    spec.states = {"s", "t", "u"};
    spec.partitions["a"] = {{"s", "t"}, {"u"}};
    spec.partitions["c"] = {{"t", "u"}, {"s"}};
    spec.valuation["s"] = {"p"};
    spec.valuation["t"] = {"p"};
    spec.point = "s";
    return build_model(spec);
}

EpistemicModel fig4() {
    ModelSpec spec;
    spec.agents = {"a", "b", "c", "d"};
    spec.states = {"r", "s", "t", "u", "v", "w", "x"};
    spec.partitions["a"] = {{"r", "s"}, {"t", "u"}, {"v", "w"}, {"x"}};
    spec.partitions["b"] = {{"r", "s"}, {"t"}, {"u"}, {"v"}, {"w"}, {"x"}};
    spec.partitions["c"] = {{"s", "t"}, {"w", "x"}, {"r"}, {"u"}, {"v"}};
    spec.partitions["d"] = {{"s", "t"}, {"u", "v", "x"}, {"r"}, {"w"}};
    spec.valuation["s"] = {"p"};
    spec.valuation["t"] = {"p"};
    spec.valuation["u"] = {"p"};
    spec.valuation["v"] = {"p", "q"};
    spec.valuation["w"] = {"p"};
    spec.point = "v";
    return build_model(spec);
}

EpistemicModel fig5() {
    ModelSpec spec;
    spec.agents = {"a", "b", "c"};
    spec.states = {"t", "s", "u"};
    spec.partitions["a"] = {{"t", "s"}, {"u"}};
    spec.partitions["b"] = {{"s", "u"}, {"t"}};
    spec.partitions["c"] = {{"t", "s", "u"}};
    spec.valuation["s"] = {"p"};
    spec.point = "s";
    return build_model(spec);
}

} // namespace anonpal::figures
