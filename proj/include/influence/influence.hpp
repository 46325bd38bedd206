#pragma once

#include "influence/agent_set.hpp"
#include "influence/canonical.hpp"
#include "influence/formula.hpp"
#include "influence/io.hpp"
#include "influence/logic.hpp"
#include "influence/network.hpp"
#include "influence/rational.hpp"
#include "influence/solver.hpp"
