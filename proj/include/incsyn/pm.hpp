#pragma once

#include <cstdint>
#include <vector>

#include "incsyn/game.hpp"

namespace incsyn {

// Which lifting rules apply. The cofair rules run on cofair coBuchi games;
// the direct variant runs the same measure on the primal fair Buchi game
// with the ownership cases swapped, so the dual never gets materialized.
enum class PmFlavor : uint8_t { CofairCoBuchi = 0, PlainCoBuchi = 1, FairBuchiDirect = 2 };

enum class RangeHint : uint8_t { General = 0, AbstractDual = 1 };

inline constexpr uint32_t kPmTop = UINT32_MAX;

struct ProgressMeasure {
    std::vector<uint32_t> values; // indexed by vertex id; {0..range} plus kPmTop
    uint32_t range = 0;           // L; L+1 saturates to top
    PmFlavor flavor = PmFlavor::CofairCoBuchi;

    uint32_t at(vertex_t v) const { return values[v]; }
    bool is_top(vertex_t v) const { return values[v] == kPmTop; }
    std::vector<vertex_t> top_set(const GameGraph& g) const;
};

ProgressMeasure pm_zero(const GameGraph& g, uint32_t range, PmFlavor flavor);

// L+1 = top, top+1 = top.
inline uint32_t pm_plus_one(uint32_t x, uint32_t range) {
    return x >= range ? kPmTop : x + 1;
}

// Range of the valid measure: General gives |B| + |V^f| (so |B| for normal
// graphs); AbstractDual gives |S| + |B| where S is the non-fair player's side
// of a game built by build_abstract_game (or its dual).
uint32_t pm_range(const GameGraph& g, const Spec& spec, RangeHint hint);

// The pr value of one vertex under the current measure.
uint32_t pm_pr(vertex_t v, const ProgressMeasure& rho, const GameGraph& g, const Spec& spec);

// Single lifting step at v: the new measure equals rho except possibly at v,
// where it becomes pr(v) (+1 if v is a B vertex, saturating at top).
ProgressMeasure pm_lift(const ProgressMeasure& rho, vertex_t v, const GameGraph& g, const Spec& spec);

enum class WorklistOrder : uint8_t { Fifo = 0, Lifo = 1, Shuffled = 2 };

struct LiftStats {
    size_t lifts = 0;     // value increases applied
    size_t examined = 0;  // worklist pops
};

// Worklist lifting to the least simultaneous fixpoint above `init`. The seed
// must contain every vertex whose constraint may be violated under init.
ProgressMeasure solve_by_lifting(const GameGraph& g, const Spec& spec, PmFlavor flavor,
                                 ProgressMeasure init, const std::vector<vertex_t>& seed,
                                 LiftStats* stats = nullptr,
                                 WorklistOrder order = WorklistOrder::Fifo,
                                 uint64_t shuffle_seed = 0);

// Convenience: run from the all-zero measure with a full seed.
ProgressMeasure solve_from_scratch(const GameGraph& g, const Spec& spec, PmFlavor flavor,
                                   uint32_t range, LiftStats* stats = nullptr);

// True iff rho satisfies the validity constraint at every alive vertex.
bool pm_is_valid(const ProgressMeasure& rho, const GameGraph& g, const Spec& spec);

struct GadgetGame {
    GameGraph graph;   // normal flavor
    Spec spec;         // coBuchi on B' = B plus the right gadget nodes
    vertex_t original_count = 0; // ids [0, original_count) are the input's vertices
};

// Replaces each fair non-B vertex of a cofair coBuchi game by the two-node
// gadget; fair edges of fair B vertices are demoted to plain edges. Winners
// restricted to the original vertices are preserved.
GadgetGame gadgetize(const GameGraph& g, const Spec& spec);

struct PositionalStrategy {
    std::vector<vertex_t> choice; // kNoVertex where undefined

    vertex_t at(vertex_t v) const {
        if (v < 0 || v >= (vertex_t)choice.size() || choice[v] == kNoVertex)
            throw vertex_is_top("no move recorded at vertex " + std::to_string(v));
        return choice[v];
    }
};

// Minimal-successor strategy for `player` over a measure-like value map:
// every owned vertex with a non-top value moves to a successor of minimal
// value, ties broken by the lowest vertex index. The player must own no fair
// vertices.
PositionalStrategy extract_min_strategy(const std::vector<uint32_t>& values, const GameGraph& g,
                                        Player player);

} // namespace incsyn
