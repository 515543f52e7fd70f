#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "incsyn/grid.hpp"

using namespace incsyn;

namespace {

GridPartition grid3x3() {
    Box dom;
    dom.lo = Vec::Constant(2, 0.0);
    dom.hi = Vec::Constant(2, 3.0);
    return GridPartition(dom, {3, 3});
}

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

} // namespace

TEST_CASE("translate: interior, boundary, outside") {
    GridPartition g = grid3x3();
    CHECK(g.translate(v2(0.5, 0.5)) == g.index_of({0, 0}));
    // internal boundaries belong to the upper cell (half-open rule)
    CHECK(g.translate(v2(1.0, 0.5)) == g.index_of({1, 0}));
    CHECK(g.translate(v2(-1.0, 0.0)) == g.sink());
    // the domain's upper face is closed
    CHECK(g.translate(v2(3.0, 3.0)) == g.index_of({2, 2}));
}

TEST_CASE("translate inverts cell centers") {
    GridPartition g = grid3x3();
    for (cell_t s = 0; s < g.cell_count(); ++s)
        CHECK(g.translate(g.cell_center(s)) == s);
}

TEST_CASE("abstract sets: box equal to one cell region") {
    GridPartition g = grid3x3();
    Box cb = g.cell_box(g.index_of({1, 1}));
    AbstractReachSets sets = abstract_reach_sets(cb, cb, g);
    // closed intersection lets neighbours touch at the boundary
    CHECK(std::binary_search(sets.f_under.begin(), sets.f_under.end(), g.index_of({1, 1})));
    CHECK(sets.f_under == std::vector<cell_t>{g.index_of({1, 1})});
    CHECK(std::binary_search(sets.f_over.begin(), sets.f_over.end(), g.index_of({1, 1})));
}

TEST_CASE("abstract sets: strictly interior box hits exactly one cell") {
    GridPartition g = grid3x3();
    Box b = Box::whole(v2(1.2, 1.2), v2(1.8, 1.8));
    AbstractReachSets sets = abstract_reach_sets(b, b, g);
    CHECK(sets.f_over == std::vector<cell_t>{g.index_of({1, 1})});
    CHECK(sets.f_under.empty()); // too small to contain the cell
}

TEST_CASE("abstract sets: boundary touch counts for F_over") {
    GridPartition g = grid3x3();
    Box b = Box::whole(v2(1.0, 1.2), v2(1.5, 1.8));
    AbstractReachSets sets = abstract_reach_sets(Box::make_empty(2), b, g);
    CHECK(sets.f_over == std::vector<cell_t>({g.index_of({0, 1}), g.index_of({1, 1})}));
    CHECK(sets.f_under.empty());
}

TEST_CASE("abstract sets: running-example shape in one dimension") {
    Box dom;
    dom.lo = Vec::Constant(1, 0.0);
    dom.hi = Vec::Constant(1, 2.0);
    GridPartition g(dom, {2});
    Box over = Box::whole(Vec::Constant(1, 0.3), Vec::Constant(1, 1.8));
    Box under = Box::whole(Vec::Constant(1, 1.0), Vec::Constant(1, 2.0));
    AbstractReachSets sets = abstract_reach_sets(under, over, g);
    CHECK(sets.f_over == std::vector<cell_t>({0, 1}));
    CHECK(sets.f_under == std::vector<cell_t>({1}));
}

TEST_CASE("abstract sets: spill outside the domain adds the sink") {
    GridPartition g = grid3x3();
    Box b = Box::whole(v2(2.5, 2.5), v2(3.5, 3.5));
    AbstractReachSets sets = abstract_reach_sets(Box::make_empty(2), b, g);
    CHECK(std::binary_search(sets.f_over.begin(), sets.f_over.end(), g.sink()));
    CHECK(std::binary_search(sets.f_over.begin(), sets.f_over.end(), g.index_of({2, 2})));
}

TEST_CASE("abstract sets: fully outside the domain is an error") {
    GridPartition g = grid3x3();
    Box b = Box::whole(v2(5.0, 5.0), v2(6.0, 6.0));
    CHECK_THROWS_AS(abstract_reach_sets(Box::make_empty(2), b, g), out_of_domain);
}

TEST_CASE("abstract sets: containment respects under/over nesting") {
    GridPartition g = grid3x3();
    Box over = Box::whole(v2(0.1, 0.1), v2(2.9, 2.9));
    Box under = Box::whole(v2(0.9, 0.9), v2(2.1, 2.1));
    AbstractReachSets sets = abstract_reach_sets(under, over, g);
    CHECK(sets.f_under == std::vector<cell_t>{g.index_of({1, 1})});
    CHECK(sets.f_over.size() == 9);
    for (cell_t c : sets.f_under)
        CHECK(std::binary_search(sets.f_over.begin(), sets.f_over.end(), c));
}
