#include "incsyn/grid.hpp"

#include <algorithm>
#include <cmath>

namespace incsyn {

GridPartition::GridPartition(Box domain, std::vector<int> cells_per_dim)
    : domain_(std::move(domain)), cells_per_dim_(std::move(cells_per_dim)) {
    if ((int)cells_per_dim_.size() != domain_.dim())
        throw error("GridPartition: dimension mismatch");
    cell_count_ = 1;
    for (int k : cells_per_dim_) {
        if (k < 1) throw error("GridPartition: cells_per_dim must be positive");
        cell_count_ *= k;
    }
    width_.resize(dim());
    for (int i = 0; i < dim(); ++i)
        width_[i] = (domain_.hi(i) - domain_.lo(i)) / cells_per_dim_[i];
}

cell_t GridPartition::translate(const Vec& x) const {
    cell_t id = 0;
    for (int i = 0; i < dim(); ++i) {
        if (x(i) < domain_.lo(i) || x(i) > domain_.hi(i)) return sink();
        int c = (int)std::floor((x(i) - domain_.lo(i)) / width_[i]);
        if (c >= cells_per_dim_[i]) c = cells_per_dim_[i] - 1; // domain's closed upper face
        id = id * cells_per_dim_[i] + c;
    }
    return id;
}

cell_t GridPartition::index_of(const std::vector<int>& coords) const {
    cell_t id = 0;
    for (int i = 0; i < dim(); ++i) id = id * cells_per_dim_[i] + coords[i];
    return id;
}

std::vector<int> GridPartition::coords_of(cell_t s) const {
    std::vector<int> c(dim());
    for (int i = dim() - 1; i >= 0; --i) {
        c[i] = s % cells_per_dim_[i];
        s /= cells_per_dim_[i];
    }
    return c;
}

Box GridPartition::cell_box(cell_t s) const {
    if (s < 0 || s >= cell_count_) throw error("cell_box: not a grid cell");
    auto c = coords_of(s);
    Box b;
    b.lo = Vec(dim());
    b.hi = Vec(dim());
    for (int i = 0; i < dim(); ++i) {
        b.lo(i) = domain_.lo(i) + c[i] * width_[i];
        b.hi(i) = b.lo(i) + width_[i];
    }
    return b;
}

Vec GridPartition::cell_center(cell_t s) const {
    Box b = cell_box(s);
    return 0.5 * (b.lo + b.hi);
}

AbstractReachSets abstract_reach_sets(const Box& under, const Box& over, const GridPartition& grid) {
    AbstractReachSets out;
    if (over.empty || !over.intersects_closed(grid.domain())) {
        throw out_of_domain("over-approximation box misses the gridded domain");
    }

    const int n = grid.dim();
    // Candidate index window per dimension, one cell of slack for the closed
    // boundary rule.
    auto window = [&](const Box& b, std::vector<int>& lo, std::vector<int>& hi) {
        for (int i = 0; i < n; ++i) {
            double w = (grid.domain().hi(i) - grid.domain().lo(i)) / grid.cells_per_dim()[i];
            int a = (int)std::floor((b.lo(i) - grid.domain().lo(i)) / w) - 1;
            int c = (int)std::floor((b.hi(i) - grid.domain().lo(i)) / w) + 1;
            lo[i] = std::max(0, a);
            hi[i] = std::min(grid.cells_per_dim()[i] - 1, c);
        }
    };
    auto scan = [&](const Box& b, auto&& pred, std::vector<cell_t>& dst) {
        std::vector<int> lo(n), hi(n), cur(n);
        window(b, lo, hi);
        for (int i = 0; i < n; ++i)
            if (lo[i] > hi[i]) return;
        cur = lo;
        while (true) {
            cell_t s = grid.index_of(cur);
            if (pred(grid.cell_box(s))) dst.push_back(s);
            int i = n - 1;
            while (i >= 0) {
                if (++cur[i] <= hi[i]) break;
                cur[i] = lo[i];
                --i;
            }
            if (i < 0) break;
        }
    };

    scan(over, [&](const Box& cb) { return cb.intersects_closed(over); }, out.f_over);
    if (!under.empty)
        scan(under, [&](const Box& cb) { return under.contains_closed(cb); }, out.f_under);

    if (!grid.domain().contains_closed(over)) out.f_over.push_back(grid.sink());
    std::sort(out.f_over.begin(), out.f_over.end());
    std::sort(out.f_under.begin(), out.f_under.end());
    return out;
}

} // namespace incsyn
