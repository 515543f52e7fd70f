#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "incsyn/game.hpp"
#include "incsyn/grid.hpp"
#include "incsyn/learn.hpp"

namespace incsyn {

inline constexpr cell_t kNoCell = -1;

// Per (abstract state, input) approximation sets. `branches` is F_over minus
// F_under in the fixed order assigned at first construction; refinements only
// delete from it, never reshuffle.
struct ApproxEntry {
    std::vector<cell_t> under;     // sorted
    std::vector<cell_t> branches;  // stable order
    CellBoundsCache cache;         // learner state backing incremental updates
    bool has_data = false;
    bool overridden = false;       // pinned entry (losing cells), exempt from learning

    bool in_under(cell_t c) const;
    bool in_over(cell_t c) const;
    std::vector<cell_t> over_sorted() const;
};

class ApproxTable {
public:
    ApproxTable() = default;
    ApproxTable(cell_t cell_count, int input_count);

    cell_t cell_count() const { return cell_count_; }
    cell_t sink() const { return cell_count_; }
    int input_count() const { return input_count_; }

    ApproxEntry& entry(cell_t s, input_t u) { return entries_[(size_t)s * input_count_ + u]; }
    const ApproxEntry& entry(cell_t s, input_t u) const { return entries_[(size_t)s * input_count_ + u]; }

    // Installs sets directly (fixtures, deserialization). Branch order = f_over
    // minus f_under in the given f_over order.
    void set_entry(cell_t s, input_t u, std::vector<cell_t> f_under, std::vector<cell_t> f_over);

    // Worst-case D4 entry: everything (plus the sink) possible, nothing sure.
    void set_unknown(cell_t s, input_t u);

    // Pins the cell's every action to the sink; used for losing/obstacle cells.
    void pin_losing(cell_t s);

private:
    cell_t cell_count_ = 0;
    int input_count_ = 0;
    std::vector<ApproxEntry> entries_;
};

// Builds the full table from data; losing cells are pinned to the sink.
ApproxTable learn_table(const Dataset& d, const LearnerConfig& cfg, const GridPartition& grid,
                        const std::vector<cell_t>& losing = {});

// Recomputes the derived sets of one entry from its cache (or from scratch via
// cell_reach_boxes when the subgrid knob is active). Returns the fresh sets
// without touching the stable order; callers diff and then commit.
AbstractReachSets entry_sets_from_cache(const ApproxEntry& e, const LearnerConfig& cfg,
                                        const GridPartition& grid);

struct GraphDelta {
    enum class Kind { AddFairEdges, RemoveBranch };
    Kind kind;
    cell_t s;
    input_t u;
    int branch_index;  // RemoveBranch: position in the stable order at application time
    cell_t target;
};

// Atomic deltas turning `oldt` into `newt`; throws monotonicity_violation if
// the tables are not a Thm-3 refinement of each other.
std::vector<GraphDelta> diff_approx(const ApproxTable& oldt, const ApproxTable& newt);

// Per-entry form: deltas turning the entry's sets into the given ones. The
// RemoveBranch indices are positions in the stable order at application time.
std::vector<GraphDelta> diff_entry(const ApproxEntry& e, const std::vector<cell_t>& new_under_sorted,
                                   const std::vector<cell_t>& new_over_sorted, cell_t s, input_t u);

// Replays one delta on the table entry (target leaves the branch list and,
// for under-growth, joins F_under).
void commit_delta_to_entry(ApproxEntry& e, const GraphDelta& d);

// One gadget of the abstract game: the action vertex s^u plus its branch layer.
struct GadgetInfo {
    vertex_t action = kNoVertex;
    vertex_t branch0 = kNoVertex;
    // Branches with an extra successor from F_over \ F_under, in stable order.
    // Entries whose extra later joined F_under stay (node retention).
    std::vector<std::pair<cell_t, vertex_t>> extra_branches;
    bool placeholder = false;  // branch0 currently carries the fair sink edge (empty F_under)
    int under_count = 0;
};

// Abstract fair Buchi game: cells are vertices 0..cell_count-1, the sink is
// cell_count, then one gadget per (s,u).
struct AbstractGame {
    GameGraph graph{Flavor::Fair};
    Spec spec;
    cell_t cell_count = 0;
    int input_count = 0;
    std::vector<GadgetInfo> gadgets;

    vertex_t sink() const { return cell_count; }
    GadgetInfo& gadget(cell_t s, input_t u) { return gadgets[(size_t)s * input_count + u]; }
    const GadgetInfo& gadget(cell_t s, input_t u) const { return gadgets[(size_t)s * input_count + u]; }
    bool is_cell(vertex_t v) const { return v >= 0 && v <= cell_count; }
};

AbstractGame build_abstract_game(const ApproxTable& tab, const std::vector<cell_t>& buchi_cells);

struct TouchedInfo {
    std::vector<vertex_t> seed;   // worklist seed for the lifting engine
    std::vector<vertex_t> reset;  // measure entries to re-initialize to 0
    std::vector<vertex_t> removed;
};

// Applies one delta in place and reports the vertices whose successor sets
// changed plus their predecessors.
TouchedInfo apply_delta(AbstractGame& ag, const GraphDelta& d);

} // namespace incsyn
