#pragma once

#include "anonpal/formula.hpp"
#include "anonpal/model.hpp"

namespace anonpal {

// Replaces every Safe node bottom-up by ~[.‡]false; the output contains no
// Safe nodes. Accepts the full language, including action programs (their
// preconditions are rewritten too).
Formula eliminate_safe(const Formula& f);

// Public-announcement elimination over atoms, booleans, K and [!.]. Rejects
// E/C/Safe and other boxes with an error; output contains no boxes.
Formula reduce_pal(const Formula& f);

// Pseudo-anonymous announcement elimination over atoms, booleans, K, [anon .]
// and [anonby a: .]; boxes may nest in both positions. Output is a pure
// epistemic formula. The roster supplies the announcer conjunction.
Formula reduce_anon(const Formula& f, const AgentRoster& roster);

// Safe-announcement elimination over atoms, booleans, K and [safeanon .].
// Announced formulas may nest arbitrarily; every Safe the translation
// introduces lands outside all boxes. A [safeanon .] nested in body position
// would require safety relativised to the updated model, which the target
// language cannot express, and raises an error instead.
Formula reduce_sai(const Formula& f, const AgentRoster& roster);

// Syntactic fragment checks used to certify reduction outputs.
bool in_epistemic_fragment(const Formula& f); // atoms, booleans, K
bool in_safe_fragment(const Formula& f);      // atoms, booleans, K, Safe

} // namespace anonpal
