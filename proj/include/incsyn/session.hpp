#pragma once

#include <optional>

#include "incsyn/abstract_game.hpp"
#include "incsyn/fixpoint.hpp"
#include "incsyn/grid.hpp"
#include "incsyn/learn.hpp"
#include "incsyn/pm.hpp"

namespace incsyn {

struct SessionConfig {
    LearnerConfig learner;
    GridPartition grid;
    std::vector<cell_t> buchi;    // B, abstract goal cells
    std::vector<cell_t> initial;  // I, cells a controller is requested for
    std::vector<cell_t> losing;   // obstacle cells, pinned to the sink
};

struct Policy {
    std::vector<input_t> input_of; // indexed by cell; -1 where not winning
    bool defined(cell_t s) const {
        return s >= 0 && s < (cell_t)input_of.size() && input_of[s] >= 0;
    }
};

struct StepReport {
    size_t win0_before = 0;
    size_t win0_after = 0;
    size_t deltas_applied = 0;
    size_t lifts_performed = 0;
    double wall_time_s = 0.0;
    bool policy_emitted = false;
};

// One incremental synthesis run: learned table, abstract game, and the
// warm-startable measure, kept mutually consistent across steps.
class SynthesisSession {
public:
    static SynthesisSession initialise(Dataset dataset, SessionConfig cfg);

    // Absorbs a batch of samples, patches the game with the induced deltas and
    // lifts the measure to the new least fixpoint.
    StepReport step(const std::vector<Sample>& new_samples);

    input_t controller_lookup(const Vec& x) const;

    const std::vector<cell_t>& win0_cells() const { return win0_; }
    bool cell_winning(cell_t s) const;
    const ProgressMeasure& rho() const { return rho_; }
    const ApproxTable& table() const { return tab_; }
    const AbstractGame& game() const { return game_; }
    const Dataset& dataset() const { return dataset_; }
    const SessionConfig& config() const { return cfg_; }
    const std::optional<Policy>& policy() const { return policy_; }

    // Rebuilds measure/regions from already-loaded state (checkpoint resume).
    static SynthesisSession resume(Dataset dataset, SessionConfig cfg, ApproxTable tab,
                                   ProgressMeasure rho);

private:
    SynthesisSession() = default;
    void adopt_measure(ProgressMeasure rho);
    void recompute_regions();
    void refresh_policy();

    SessionConfig cfg_;
    Dataset dataset_;
    ApproxTable tab_;
    AbstractGame game_;
    ProgressMeasure rho_;
    std::vector<cell_t> win0_; // sorted winning cells (top-set of the measure on cells)
    std::optional<Policy> policy_;
};

// Winning cells of a one-shot solve on the current table; the session's
// step() must stay equal to this on every schedule (the central differential
// check, exercised heavily by the tests).
std::vector<cell_t> batch_win0_cells(const Dataset& d, const SessionConfig& cfg);

} // namespace incsyn
