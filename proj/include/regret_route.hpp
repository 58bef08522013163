#pragma once

#include "regret_route/error.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/path.hpp"
#include "regret_route/zero_regret.hpp"
#include "regret_route/held_karp.hpp"
#include "regret_route/pricing.hpp"
#include "regret_route/simplex.hpp"
#include "regret_route/lp.hpp"
#include "regret_route/min_cost_flow.hpp"
#include "regret_route/rational.hpp"
#include "regret_route/rounding.hpp"
#include "regret_route/reductions.hpp"
#include "regret_route/generators.hpp"
#include "regret_route/oracles.hpp"
#include "regret_route/verify.hpp"
#include "regret_route/json_io.hpp"
#include "regret_route/report.hpp"
