#pragma once

#include <string>
#include <string_view>

#include "anonpal/formula.hpp"
#include "anonpal/model.hpp"

namespace anonpal {

// Grammar (ASCII, idents are [a-z0-9_]+; true/false/safe are reserved words):
//   formula := iff
//   iff     := imp ("<->" imp)*          (left-associative)
//   imp     := or ("->" imp)?            (right-associative)
//   or      := and ("|" and)*
//   and     := un ("&" un)*
//   un      := "~" un | "K{" ident "}" un | "E{" idents "}" un
//            | "C{" idents "}" un | "safe" un
//            | "[!" formula "]" un | "[anon" formula "]" un
//            | "[anonby" ident ":" formula "]" un | "[safeanon" formula "]" un
//            | "true" | "false" | ident | "(" formula ")"
// Agent names in K/E/C/anonby must belong to the roster; an empty roster
// disables that check, for formula text standing on its own. Throws
// ParseError with the offending offset.
Formula parse_formula(std::string_view text, const AgentRoster& roster);

// Canonical text with minimal parentheses; parse_formula(print_formula(f))
// is structurally equal to f for every program-free formula. Program boxes
// have no concrete syntax and print as a deliberately non-parseable tag.
std::string print_formula(const Formula& f);

} // namespace anonpal
