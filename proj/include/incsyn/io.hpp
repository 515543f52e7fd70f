#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "incsyn/abstract_game.hpp"
#include "incsyn/fixpoint.hpp"
#include "incsyn/pm.hpp"
#include "incsyn/session.hpp"
#include "incsyn/sim.hpp"

namespace incsyn {

using json = nlohmann::json;

// Game dump: flavor, spec, and one record per alive vertex with owner, plain
// and fair successor lists, and the Buchi flag.
json game_to_json(const GameGraph& g, const Spec& spec);
std::pair<GameGraph, Spec> game_from_json(const json& j);

json pm_to_json(const ProgressMeasure& rho, const GameGraph& g);
ProgressMeasure pm_from_json(const json& j, const GameGraph& g);

json table_to_json(const ApproxTable& tab);
ApproxTable table_from_json(const json& j);

json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const json& j);

json trace_to_json(const FixpointTrace& tr);

// Region file: bare JSON array of winning cell indices.
json region_to_json(const std::vector<cell_t>& win0_cells);
std::vector<cell_t> region_from_json(const json& j);

json policy_to_json(const Policy& pol);
Policy policy_from_json(const json& j);

// Session checkpoint: config, dataset file references, learned table, game
// dump and measure dump.
json session_to_json(const SynthesisSession& s, const std::vector<std::string>& dataset_files);
struct CheckpointData {
    SessionConfig cfg;
    ApproxTable table;
    ProgressMeasure rho;
    std::vector<std::string> dataset_files;
    size_t sample_count = 0;
};
CheckpointData checkpoint_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

void write_trajectory_csv(const std::string& path, const Trajectory& tr);

} // namespace incsyn
