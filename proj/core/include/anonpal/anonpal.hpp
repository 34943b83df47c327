#pragma once

#include "anonpal/error.hpp"
#include "anonpal/figures.hpp"
#include "anonpal/formula.hpp"
#include "anonpal/io.hpp"
#include "anonpal/model.hpp"
#include "anonpal/oracles.hpp"
#include "anonpal/parse.hpp"
#include "anonpal/reduce.hpp"
#include "anonpal/semantics.hpp"
#include "anonpal/stateset.hpp"
#include "anonpal/updates.hpp"
