#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "incsyn/grid.hpp"
#include "incsyn/learn.hpp"

namespace incsyn {

// Planar vehicle with velocity/heading inputs and additive bounded noise:
// x' = x + 10*delta*v*cos(theta) + w1, y' = y + 10*delta*v*sin(theta) + w2.
struct CarModel {
    double delta = 1.0;
    std::vector<double> velocities{-0.2, -0.1, 0.1, 0.2};
    std::vector<double> angles;   // default: 9 headings over [0, pi]
    NoiseSupport noise;           // default: [-1.5, 1.5]^2

    CarModel();

    int input_count() const { return (int)(velocities.size() * angles.size()); }
    // Nominal displacement of input u.
    Vec displacement(input_t u) const;
    Vec nominal(const Vec& x, input_t u) const { return x + displacement(u); }
    Vec step(const Vec& x, input_t u, std::mt19937_64& rng) const;
    Vec draw_noise(std::mt19937_64& rng) const;
};

struct SampleRegion {
    Box box;
    int budget = 0;
};

struct Scenario {
    std::string name;
    Box domain;
    std::vector<int> cells_per_dim;
    std::vector<cell_t> obstacles;
    std::vector<cell_t> goals;   // Buchi cells
    std::vector<cell_t> starts;  // cells a controller is requested for
    std::vector<SampleRegion> low_data_regions; // rooms of the bench protocol
    int base_budget = 0;         // samples over the domain minus the rooms
    double lipschitz = 1.0;
    CarModel model;
    uint64_t seed = 0;

    GridPartition grid() const { return GridPartition(domain, cells_per_dim); }
    LearnerConfig learner() const { return LearnerConfig{lipschitz, model.noise, 0}; }
    void validate() const;
};

// Initial dataset: base_budget uniform samples outside every room, plus each
// room's own budget inside it; uniform random inputs. Reproducible per seed.
Dataset generate_dataset(const CarModel& model, const Scenario& sc);

// `count` samples uniform in `box`, for streaming rooms into a session.
std::vector<Sample> sample_region(const CarModel& model, const Scenario& sc, const Box& box,
                                  int count, uint64_t seed);

struct Trajectory {
    std::vector<Vec> states; // x0 .. x_horizon
    size_t goal_visits = 0;
    size_t obstacle_hits = 0;
};

using ControllerFn = std::function<input_t(const Vec&)>;

// Closed-loop run from x0; records per-step cell visits against the
// scenario's goal and obstacle sets.
Trajectory rollout(const CarModel& model, const Scenario& sc, const ControllerFn& controller,
                   const Vec& x0, int horizon, uint64_t seed);

// The one-low-data-region benchmark scenario on a 20x20 grid, with the room
// split into `rooms` slices for the streaming protocol.
Scenario make_experiment1_scenario(uint64_t seed, int rooms = 5);

// Tiny deterministic scenario for smoke tests.
Scenario make_smoke_scenario(uint64_t seed);

} // namespace incsyn
