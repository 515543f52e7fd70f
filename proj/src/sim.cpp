#include "incsyn/sim.hpp"

#include <algorithm>
#include <cmath>

namespace incsyn {

CarModel::CarModel() {
    angles.resize(9);
    for (int i = 0; i < 9; ++i) angles[i] = i * M_PI / 8.0;
    noise.l = Vec::Constant(2, -1.5);
    noise.h = Vec::Constant(2, 1.5);
}

Vec CarModel::displacement(input_t u) const {
    int na = (int)angles.size();
    double v = velocities.at(u / na);
    double th = angles.at(u % na);
    Vec d(2);
    d << 10.0 * delta * v * std::cos(th), 10.0 * delta * v * std::sin(th);
    return d;
}

Vec CarModel::draw_noise(std::mt19937_64& rng) const {
    Vec w(noise.l.size());
    for (int i = 0; i < w.size(); ++i) {
        std::uniform_real_distribution<double> dist(noise.l(i), noise.h(i));
        w(i) = dist(rng);
    }
    return w;
}

Vec CarModel::step(const Vec& x, input_t u, std::mt19937_64& rng) const {
    return nominal(x, u) + draw_noise(rng);
}

void Scenario::validate() const {
    GridPartition g = grid();
    auto in_range = [&](cell_t c) { return c >= 0 && c < g.cell_count(); };
    for (cell_t c : obstacles)
        if (!in_range(c)) throw error("scenario: obstacle cell out of range");
    for (cell_t c : goals) {
        if (!in_range(c)) throw error("scenario: goal cell out of range");
        if (std::find(obstacles.begin(), obstacles.end(), c) != obstacles.end())
            throw error("scenario: goal cell is an obstacle");
    }
    for (cell_t c : starts)
        if (!in_range(c)) throw error("scenario: start cell out of range");
}

namespace {

Vec uniform_in_box(const Box& b, std::mt19937_64& rng) {
    Vec x(b.dim());
    for (int i = 0; i < b.dim(); ++i) {
        std::uniform_real_distribution<double> dist(b.lo(i), b.hi(i));
        x(i) = dist(rng);
    }
    return x;
}

} // namespace

Dataset generate_dataset(const CarModel& model, const Scenario& sc) {
    std::mt19937_64 rng(sc.seed);
    Dataset d(sc.domain.dim(), model.input_count());
    std::uniform_int_distribution<int> pick_u(0, model.input_count() - 1);

    auto in_any_room = [&](const Vec& x) {
        for (const SampleRegion& r : sc.low_data_regions)
            if (r.box.contains(x)) return true;
        return false;
    };
    int made = 0;
    while (made < sc.base_budget) {
        Vec x = uniform_in_box(sc.domain, rng);
        if (in_any_room(x)) continue; // dense only outside the rooms
        input_t u = pick_u(rng);
        d.append(Sample{x, u, model.step(x, u, rng)});
        ++made;
    }
    for (const SampleRegion& r : sc.low_data_regions) {
        for (int i = 0; i < r.budget; ++i) {
            Vec x = uniform_in_box(r.box, rng);
            input_t u = pick_u(rng);
            d.append(Sample{x, u, model.step(x, u, rng)});
        }
    }
    return d;
}

std::vector<Sample> sample_region(const CarModel& model, const Scenario& sc, const Box& box,
                                  int count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_u(0, model.input_count() - 1);
    std::vector<Sample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        Vec x = uniform_in_box(box, rng);
        input_t u = pick_u(rng);
        out.push_back(Sample{x, u, model.step(x, u, rng)});
    }
    (void)sc;
    return out;
}

Trajectory rollout(const CarModel& model, const Scenario& sc, const ControllerFn& controller,
                   const Vec& x0, int horizon, uint64_t seed) {
    std::mt19937_64 rng(seed);
    GridPartition grid = sc.grid();
    std::vector<bool> goal(grid.cell_count() + 1, false), obst(grid.cell_count() + 1, false);
    for (cell_t c : sc.goals) goal[c] = true;
    for (cell_t c : sc.obstacles) obst[c] = true;

    Trajectory tr;
    tr.states.push_back(x0);
    Vec x = x0;
    for (int k = 0; k < horizon; ++k) {
        input_t u = controller(x);
        x = model.step(x, u, rng);
        tr.states.push_back(x);
        cell_t c = grid.translate(x);
        if (c < grid.cell_count()) {
            if (goal[c]) ++tr.goal_visits;
            if (obst[c]) ++tr.obstacle_hits;
        }
    }
    return tr;
}

Scenario make_experiment1_scenario(uint64_t seed, int rooms) {
    Scenario sc;
    sc.name = "experiment1";
    sc.domain.lo = Vec::Constant(2, 0.0);
    sc.domain.hi = Vec::Constant(2, 20.0);
    sc.cells_per_dim = {20, 20};
    sc.lipschitz = 1.0;
    sc.seed = seed;
    sc.base_budget = 6000;
    sc.model = CarModel();

    GridPartition grid = sc.grid();
    auto id = [&](int cx, int cy) { return grid.index_of({cx, cy}); };

    // Central obstacle block, goal patch in the upper-right corner.
    for (int cx = 9; cx <= 10; ++cx)
        for (int cy = 9; cy <= 10; ++cy) sc.obstacles.push_back(id(cx, cy));
    for (int cx = 16; cx <= 18; ++cx)
        for (int cy = 16; cy <= 18; ++cy) sc.goals.push_back(id(cx, cy));

    // One low-data region in the lower-left, served room by room: vertical
    // slices of the [1,6]x[1,6] box.
    Box region;
    region.lo = Vec(2);
    region.hi = Vec(2);
    region.lo << 1.0, 1.0;
    region.hi << 6.0, 6.0;
    double W = (region.hi(0) - region.lo(0)) / rooms;
    for (int r = 0; r < rooms; ++r) {
        SampleRegion sr;
        sr.box.lo = Vec(2);
        sr.box.hi = Vec(2);
        sr.box.lo << region.lo(0) + r * W, region.lo(1);
        sr.box.hi << region.lo(0) + (r + 1) * W, region.hi(1);
        sr.budget = 0; // nothing until the bench streams the room
        sc.low_data_regions.push_back(sr);
    }

    for (int cx = 1; cx <= 5; ++cx)
        for (int cy = 1; cy <= 5; ++cy) sc.starts.push_back(id(cx, cy));
    sc.starts.push_back(id(3, 14));
    sc.starts.push_back(id(14, 3));
    sc.validate();
    return sc;
}

Scenario make_smoke_scenario(uint64_t seed) {
    Scenario sc;
    sc.name = "smoke";
    sc.domain.lo = Vec::Constant(2, 0.0);
    sc.domain.hi = Vec::Constant(2, 4.0);
    sc.cells_per_dim = {2, 2};
    sc.lipschitz = 1.0;
    sc.seed = seed;
    sc.base_budget = 400;
    sc.model = CarModel();
    sc.model.velocities = {0.1, 0.2};
    sc.model.angles = {0.0, M_PI / 2, M_PI, 3 * M_PI / 2};
    sc.model.noise.l = Vec::Constant(2, -0.5);
    sc.model.noise.h = Vec::Constant(2, 0.5);
    GridPartition grid = sc.grid();
    sc.goals = {grid.index_of({1, 1})};
    sc.starts = {grid.index_of({0, 0})};
    sc.validate();
    return sc;
}

} // namespace incsyn
