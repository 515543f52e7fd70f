#pragma once

#include <vector>

#include "incsyn/learn.hpp"

namespace incsyn {

using cell_t = int32_t;

// Uniform partition of a box domain into half-open cells [lo, hi) per D-dim
// index, except the domain's upper face which is closed. Cell ids are the
// row-major linearization; the id `cell_count()` names the absorbing sink
// that receives everything outside the domain.
class GridPartition {
public:
    GridPartition() = default;
    GridPartition(Box domain, std::vector<int> cells_per_dim);

    int dim() const { return (int)cells_per_dim_.size(); }
    cell_t cell_count() const { return cell_count_; }
    cell_t sink() const { return cell_count_; }
    const Box& domain() const { return domain_; }
    const std::vector<int>& cells_per_dim() const { return cells_per_dim_; }

    // Total via the sink: points outside the domain map to sink().
    cell_t translate(const Vec& x) const;

    Box cell_box(cell_t s) const;
    Vec cell_center(cell_t s) const;

    cell_t index_of(const std::vector<int>& coords) const;
    std::vector<int> coords_of(cell_t s) const;

private:
    Box domain_;
    std::vector<int> cells_per_dim_;
    std::vector<double> width_;
    cell_t cell_count_ = 0;
};

struct AbstractReachSets {
    std::vector<cell_t> f_under;   // sorted; sink never occurs here
    std::vector<cell_t> f_over;    // sorted; may include the sink
};

// Cells whose closed region intersects `over` (F_over) resp. is contained in
// `under` (F_under). Over-box mass outside the domain adds the sink to
// F_over; an over box entirely outside the domain throws out_of_domain.
AbstractReachSets abstract_reach_sets(const Box& under, const Box& over, const GridPartition& grid);

} // namespace incsyn
