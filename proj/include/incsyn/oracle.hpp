#pragma once

#include <vector>

#include "incsyn/game.hpp"
#include "incsyn/pm.hpp"

namespace incsyn {

// Test instrument: exact winners on small instances, computed with machinery
// deliberately disjoint from the measure/fixpoint engines.
struct OracleResult {
    std::vector<vertex_t> win0, win1; // sorted; partition of the alive vertices
};

// Classical repeated-attractor solver for normal Buchi/coBuchi games.
OracleResult solve_normal(const GameGraph& g, const Spec& spec);

// Fair Buchi winners by enumerating P0 positional strategies and searching,
// per strategy, for a reachable vertex set that is strongly connected with at
// least one edge, B-free, and closed under fair successors. Guarded by an
// operation estimate; throws too_large beyond it.
OracleResult solve_fair_buchi_bruteforce(const GameGraph& g, const Spec& spec);

// Cofair coBuchi winners via the same enumeration on the locally
// ownership-swapped graph.
OracleResult solve_cofair_cobuchi_bruteforce(const GameGraph& g, const Spec& spec);

// True iff the positional P0 policy is winning from `from`: no reachable
// violating structure in the policy-restricted graph. Supports fair/normal
// Buchi and normal coBuchi specs.
bool check_policy(const GameGraph& g, const Spec& spec, const PositionalStrategy& policy,
                  vertex_t from);

} // namespace incsyn
