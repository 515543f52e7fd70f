#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "common.hpp"
#include "incsyn/grid.hpp"
#include "incsyn/learn.hpp"

using namespace incsyn;

namespace {

Vec v1d(double x) { return Vec::Constant(1, x); }

Dataset make_1d(std::initializer_list<std::pair<double, double>> pts, input_t u = 0,
                int inputs = 1) {
    Dataset d(1, inputs);
    for (auto [x, y] : pts) d.append(Sample{v1d(x), u, v1d(y)});
    return d;
}

LearnerConfig cfg_1d(double lip, double lo, double hi) {
    LearnerConfig c;
    c.lipschitz = lip;
    c.noise.l = v1d(lo);
    c.noise.h = v1d(hi);
    return c;
}

// Reference evaluation of the pointwise bounds, written independently of the
// library path (plain loops over the sample list).
std::pair<Vec, Vec> bounds_reference(const Vec& x, input_t u, const Dataset& d,
                                     const LearnerConfig& cfg) {
    Vec lo, hi;
    bool first = true;
    for (size_t i = 0; i < d.size(); ++i) {
        if (d[i].u != u) continue;
        double dist = 0;
        for (int k = 0; k < x.size(); ++k) dist = std::max(dist, std::abs(d[i].x(k) - x(k)));
        Vec a(x.size()), b(x.size());
        for (int k = 0; k < x.size(); ++k) {
            a(k) = d[i].x_plus(k) - cfg.lipschitz * dist;
            b(k) = d[i].x_plus(k) + cfg.lipschitz * dist;
        }
        if (first) { lo = a; hi = b; first = false; }
        else {
            for (int k = 0; k < x.size(); ++k) {
                lo(k) = std::max(lo(k), a(k));
                hi(k) = std::min(hi(k), b(k));
            }
        }
    }
    return {lo - cfg.noise.h, hi - cfg.noise.l};
}

Dataset random_dataset(std::mt19937_64& rng, int dim, int inputs, int count) {
    Dataset d(dim, inputs);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    std::uniform_int_distribution<int> uu(0, inputs - 1);
    for (int i = 0; i < count; ++i) {
        Vec x(dim), y(dim);
        for (int k = 0; k < dim; ++k) { x(k) = ux(rng); y(k) = ux(rng); }
        d.append(Sample{x, (input_t)uu(rng), y});
    }
    return d;
}

} // namespace

TEST_CASE("pointwise bounds: single-sample substitution") {
    Dataset d = make_1d({{0.0, 1.0}});
    auto cfg = cfg_1d(1.0, -0.5, 0.5);
    PointBounds b = bounds_at_point(v1d(0.0), 0, d, cfg);
    CHECK(b.check_f(0) == doctest::Approx(0.5));
    CHECK(b.hat_f(0) == doctest::Approx(1.5));
    CHECK(!b.inconsistent);

    b = bounds_at_point(v1d(0.3), 0, d, cfg);
    CHECK(b.check_f(0) == doctest::Approx(0.2));
    CHECK(b.hat_f(0) == doctest::Approx(1.8));
}

TEST_CASE("pointwise bounds: two samples, tightest pair wins") {
    Dataset d = make_1d({{0.0, 1.0}, {1.0, 1.2}});
    auto cfg = cfg_1d(1.0, 0.0, 0.0);
    PointBounds b = bounds_at_point(v1d(0.5), 0, d, cfg);
    CHECK(b.check_f(0) == doctest::Approx(0.7));
    CHECK(b.hat_f(0) == doctest::Approx(1.5));
    auto [rc, rh] = bounds_reference(v1d(0.5), 0, d, cfg);
    CHECK(b.check_f(0) == doctest::Approx(rc(0)));
    CHECK(b.hat_f(0) == doctest::Approx(rh(0)));
}

TEST_CASE("pointwise bounds: no data for input") {
    Dataset d = make_1d({{0.0, 1.0}}, 0, 2);
    auto cfg = cfg_1d(1.0, 0.0, 0.0);
    CHECK_THROWS_AS(bounds_at_point(v1d(0.0), 1, d, cfg), no_data_for_input);
}

TEST_CASE("pointwise bounds: inconsistency is reported, not fatal") {
    // Two samples at the same state with successors further apart than the
    // noise support allows: the Lipschitz or noise assumption was wrong.
    Dataset d = make_1d({{0.0, 0.0}, {0.0, 5.0}});
    auto cfg = cfg_1d(1.0, -0.1, 0.1);
    PointBounds b = bounds_at_point(v1d(0.0), 0, d, cfg);
    CHECK(b.inconsistent);
    CHECK(b.check_f(0) > b.hat_f(0));
}

TEST_CASE("cell boxes: corner-distance closed form on the worked example") {
    Dataset d = make_1d({{0.5, 2.0}});
    auto cfg = cfg_1d(1.0, -0.1, 0.1);
    Box cell = Box::whole(v1d(0.0), v1d(1.0));
    Box domain = Box::whole(v1d(-10.0), v1d(10.0));
    ReachBoxes rb = cell_reach_boxes(0, d, cfg, cell, domain);
    CHECK(rb.over.lo(0) == doctest::Approx(1.3));
    CHECK(rb.over.hi(0) == doctest::Approx(2.7));
    CHECK(rb.under.empty);
}

TEST_CASE("cell boxes: degenerate single point when all slack vanishes") {
    Dataset d = make_1d({{0.5, 2.0}});
    auto cfg = cfg_1d(0.0, 0.0, 0.0);
    Box cell = Box::whole(v1d(0.0), v1d(1.0));
    Box domain = Box::whole(v1d(-10.0), v1d(10.0));
    ReachBoxes rb = cell_reach_boxes(0, d, cfg, cell, domain);
    CHECK(rb.over.lo(0) == doctest::Approx(2.0));
    CHECK(rb.over.hi(0) == doctest::Approx(2.0));
    CHECK(!rb.under.empty);
    CHECK(rb.under.lo(0) == doctest::Approx(2.0));
    CHECK(rb.under.hi(0) == doctest::Approx(2.0));
}

TEST_CASE("cell boxes: no data yields empty under and the whole domain over") {
    Dataset d(1, 1);
    auto cfg = cfg_1d(1.0, 0.0, 0.0);
    Box cell = Box::whole(v1d(0.0), v1d(1.0));
    Box domain = Box::whole(v1d(-10.0), v1d(10.0));
    ReachBoxes rb = cell_reach_boxes(0, d, cfg, cell, domain);
    CHECK(rb.under.empty);
    CHECK(rb.over.lo(0) == doctest::Approx(-10.0));
    CHECK(rb.over.hi(0) == doctest::Approx(10.0));
}

// The boxes must bracket the true extremized pointwise bounds: a dense grid
// over the cell estimates min/max of check_f and hat_f directly.
TEST_CASE("cell boxes: sound against dense evaluation of the extremization") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        int dim = 1 + (int)(iter % 2);
        Dataset d = random_dataset(rng, dim, 1, 6);
        LearnerConfig cfg;
        cfg.lipschitz = 0.8;
        cfg.noise.l = Vec::Constant(dim, -0.2);
        cfg.noise.h = Vec::Constant(dim, 0.3);
        Box cell = Box::whole(Vec::Constant(dim, -0.5), Vec::Constant(dim, 0.7));
        Box domain = Box::whole(Vec::Constant(dim, -50.0), Vec::Constant(dim, 50.0));

        Vec min_check = Vec::Constant(dim, 1e100), max_check = Vec::Constant(dim, -1e100);
        Vec min_hat = Vec::Constant(dim, 1e100), max_hat = Vec::Constant(dim, -1e100);
        int steps = dim == 1 ? 1000 : 33;
        std::vector<int> idx(dim, 0);
        while (true) {
            Vec x(dim);
            for (int k = 0; k < dim; ++k)
                x(k) = cell.lo(k) + (cell.hi(k) - cell.lo(k)) * idx[k] / (steps - 1);
            auto [c, h] = bounds_reference(x, 0, d, cfg);
            min_check = min_check.cwiseMin(c);
            max_check = max_check.cwiseMax(c);
            min_hat = min_hat.cwiseMin(h);
            max_hat = max_hat.cwiseMax(h);
            int k = dim - 1;
            while (k >= 0) {
                if (++idx[k] < steps) break;
                idx[k] = 0;
                --k;
            }
            if (k < 0) break;
        }

        for (int sub : {0, 3}) {
            cfg.refine_subdiv = sub;
            ReachBoxes rb = cell_reach_boxes(0, d, cfg, cell, domain);
            for (int k = 0; k < dim; ++k) {
                // over must contain [min check + l, max hat + h]
                CHECK(rb.over.lo(k) <= min_check(k) + cfg.noise.l(k) + 1e-9);
                CHECK(rb.over.hi(k) >= max_hat(k) + cfg.noise.h(k) - 1e-9);
            }
            if (!rb.under.empty) {
                for (int k = 0; k < dim; ++k) {
                    // under must fit inside [max hat + l, min check + h]
                    CHECK(rb.under.lo(k) >= max_hat(k) + cfg.noise.l(k) - 1e-9);
                    CHECK(rb.under.hi(k) <= min_check(k) + cfg.noise.h(k) + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("monotone bounds and boxes under sample append") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        int dim = 1 + (int)(rng() % 3);
        Dataset d = random_dataset(rng, dim, 2, 3 + (int)(rng() % 5));
        if (d.for_input(0).empty()) continue;
        LearnerConfig cfg;
        cfg.lipschitz = 0.5 + (rng() % 100) / 100.0;
        cfg.noise.l = Vec::Constant(dim, -0.3);
        cfg.noise.h = Vec::Constant(dim, 0.4);
        Box cell = Box::whole(Vec::Constant(dim, -0.8), Vec::Constant(dim, 0.9));
        Box domain = Box::whole(Vec::Constant(dim, -60.0), Vec::Constant(dim, 60.0));

        Vec probe(dim);
        std::uniform_real_distribution<double> ux(-2.0, 2.0);
        for (int k = 0; k < dim; ++k) probe(k) = ux(rng);

        PointBounds before = bounds_at_point(probe, 0, d, cfg);
        ReachBoxes rb_before = cell_reach_boxes(0, d, cfg, cell, domain);

        Dataset d2 = random_dataset(rng, dim, 2, 0);
        for (size_t i = 0; i < d.size(); ++i) d2.append(d[i]);
        Vec x(dim), y(dim);
        for (int k = 0; k < dim; ++k) { x(k) = ux(rng); y(k) = ux(rng); }
        d2.append(Sample{x, 0, y});

        PointBounds after = bounds_at_point(probe, 0, d2, cfg);
        ReachBoxes rb_after = cell_reach_boxes(0, d2, cfg, cell, domain);

        for (int k = 0; k < dim; ++k) {
            CHECK(after.check_f(k) >= before.check_f(k) - 1e-12);
            CHECK(after.hat_f(k) <= before.hat_f(k) + 1e-12);
            // over only shrinks
            CHECK(rb_after.over.lo(k) >= rb_before.over.lo(k) - 1e-12);
            CHECK(rb_after.over.hi(k) <= rb_before.over.hi(k) + 1e-12);
        }
        // under only grows
        if (!rb_before.under.empty) {
            REQUIRE(!rb_after.under.empty);
            for (int k = 0; k < dim; ++k) {
                CHECK(rb_after.under.lo(k) <= rb_before.under.lo(k) + 1e-12);
                CHECK(rb_after.under.hi(k) >= rb_before.under.hi(k) - 1e-12);
            }
        }
    }
}

TEST_CASE("soundness against a known ground-truth system") {
    // f(x) = 0.6 x + 0.5 (Lipschitz 0.6), noise uniform in [-0.2, 0.2].
    std::mt19937_64 rng(23);
    LearnerConfig cfg;
    cfg.lipschitz = 0.7;
    cfg.noise.l = v1d(-0.2);
    cfg.noise.h = v1d(0.2);
    Dataset d(1, 1);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uw(-0.2, 0.2);
    auto f = [](double x) { return 0.6 * x + 0.5; };
    for (int i = 0; i < 200; ++i) {
        double x = ux(rng);
        d.append(Sample{v1d(x), 0, v1d(f(x) + uw(rng))});
    }
    Box cell = Box::whole(v1d(0.0), v1d(1.0));
    Box domain = Box::whole(v1d(-20.0), v1d(20.0));
    ReachBoxes rb = cell_reach_boxes(0, d, cfg, cell, domain);
    // exact one-step reachable set of the cell: [f(0) - 0.2, f(1) + 0.2]
    double exact_lo = f(0.0) - 0.2, exact_hi = f(1.0) + 0.2;
    CHECK(rb.over.lo(0) <= exact_lo + 1e-9);
    CHECK(rb.over.hi(0) >= exact_hi - 1e-9);
    if (!rb.under.empty) {
        CHECK(rb.under.lo(0) >= exact_lo - 1e-9);
        CHECK(rb.under.hi(0) <= exact_hi + 1e-9);
    }
}

TEST_CASE("determinism: sample order does not change the boxes") {
    std::mt19937_64 rng(31);
    Dataset d = random_dataset(rng, 2, 1, 20);
    LearnerConfig cfg;
    cfg.lipschitz = 1.0;
    cfg.noise.l = Vec::Constant(2, -0.3);
    cfg.noise.h = Vec::Constant(2, 0.3);
    Box cell = Box::whole(Vec::Constant(2, 0.0), Vec::Constant(2, 1.0));
    Box domain = Box::whole(Vec::Constant(2, -30.0), Vec::Constant(2, 30.0));

    std::vector<size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Dataset shuffled(2, 1);
    for (size_t i : order) shuffled.append(d[i]);

    ReachBoxes a = cell_reach_boxes(0, d, cfg, cell, domain);
    ReachBoxes b = cell_reach_boxes(0, shuffled, cfg, cell, domain);
    CHECK(a.over.lo == b.over.lo);
    CHECK(a.over.hi == b.over.hi);
    CHECK(a.under.empty == b.under.empty);
    if (!a.under.empty) {
        CHECK(a.under.lo == b.under.lo);
        CHECK(a.under.hi == b.under.hi);
    }
}

TEST_CASE("streaming cache equals the batch pass bit for bit") {
    std::mt19937_64 rng(37);
    Dataset d = random_dataset(rng, 2, 1, 25);
    LearnerConfig cfg;
    cfg.lipschitz = 0.9;
    cfg.noise.l = Vec::Constant(2, -0.25);
    cfg.noise.h = Vec::Constant(2, 0.25);
    Box cell = Box::whole(Vec::Constant(2, -1.0), Vec::Constant(2, 0.5));
    Box domain = Box::whole(Vec::Constant(2, -30.0), Vec::Constant(2, 30.0));

    CellBoundsCache cache;
    for (size_t i = 0; i < d.size(); ++i) cache.absorb(d[i], cfg, cell);
    ReachBoxes streamed = cache.boxes(cfg, domain);
    ReachBoxes batch = cell_reach_boxes(0, d, cfg, cell, domain);
    CHECK(streamed.over.lo == batch.over.lo);
    CHECK(streamed.over.hi == batch.over.hi);
    CHECK(streamed.under.empty == batch.under.empty);
}

TEST_CASE("subgrid refinement never loosens the corner form") {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 30; ++iter) {
        Dataset d = random_dataset(rng, 2, 1, 8);
        LearnerConfig cfg;
        cfg.lipschitz = 1.1;
        cfg.noise.l = Vec::Constant(2, -0.2);
        cfg.noise.h = Vec::Constant(2, 0.2);
        Box cell = Box::whole(Vec::Constant(2, -0.6), Vec::Constant(2, 0.6));
        Box domain = Box::whole(Vec::Constant(2, -40.0), Vec::Constant(2, 40.0));
        ReachBoxes coarse = cell_reach_boxes(0, d, cfg, cell, domain);
        cfg.refine_subdiv = 4;
        ReachBoxes fine = cell_reach_boxes(0, d, cfg, cell, domain);
        for (int k = 0; k < 2; ++k) {
            CHECK(fine.over.lo(k) >= coarse.over.lo(k) - 1e-12);
            CHECK(fine.over.hi(k) <= coarse.over.hi(k) + 1e-12);
        }
        if (!coarse.under.empty) {
            REQUIRE(!fine.under.empty);
            for (int k = 0; k < 2; ++k) {
                CHECK(fine.under.lo(k) <= coarse.under.lo(k) + 1e-12);
                CHECK(fine.under.hi(k) >= coarse.under.hi(k) - 1e-12);
            }
        }
    }
}

TEST_CASE("dataset text format round-trips") {
    std::mt19937_64 rng(43);
    Dataset d = random_dataset(rng, 3, 4, 17);
    NoiseSupport noise;
    noise.l = Vec::Constant(3, -0.5);
    noise.h = Vec::Constant(3, 0.75);
    std::stringstream ss;
    write_dataset(ss, d, noise);
    DatasetFile f = read_dataset(ss);
    REQUIRE(f.data.size() == d.size());
    CHECK(f.data.dim() == 3);
    CHECK(f.data.input_count() == 4);
    CHECK(f.noise.l == noise.l);
    CHECK(f.noise.h == noise.h);
    for (size_t i = 0; i < d.size(); ++i) {
        CHECK(f.data[i].x == d[i].x);
        CHECK(f.data[i].u == d[i].u);
        CHECK(f.data[i].x_plus == d[i].x_plus);
    }
}
