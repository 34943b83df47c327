#pragma once

#include "anonpal/model.hpp"

namespace anonpal::figures {

// Built-in demonstration models, also shipped as JSON fixtures. The `demo`
// CLI subcommand replays the documented checks on them.

// Three agents a, b, c over six states t, u, s, v, w, x; propositions p, q,
// r, o. A rich playground where announcing p publicly, pseudo-anonymously,
// and as "somebody knows p" all differ.
EpistemicModel fig1();

// Two states, agent b cannot tell them apart; p can be announced
// pseudo-anonymously but never safely.
EpistemicModel fig2();

// A three-state chain where two agents know p but no announcement of p is
// safe.
EpistemicModel fig3();

// Four agents over seven states; safety of p holds exactly at v and w, and
// the safe announcement produces a six-state update.
EpistemicModel fig4();

// Three singleton bisimulation classes; the public announcement of p cannot
// be matched by any pseudo-anonymous announcement.
EpistemicModel fig5();

} // namespace anonpal::figures
