#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "incsyn/errors.hpp"

namespace incsyn {

using Vec = Eigen::VectorXd;
using input_t = int32_t;

struct Sample {
    Vec x;        // state
    input_t u;    // member of the finite input set
    Vec x_plus;   // observed successor state
};

// Append-only bag of transition samples with a per-input index.
class Dataset {
public:
    Dataset() = default;
    Dataset(int dim, int input_count) : dim_(dim), by_input_(input_count) {}

    int dim() const { return dim_; }
    int input_count() const { return (int)by_input_.size(); }
    size_t size() const { return samples_.size(); }
    const Sample& operator[](size_t i) const { return samples_[i]; }
    const std::vector<size_t>& for_input(input_t u) const { return by_input_.at(u); }

    void append(Sample s);

private:
    int dim_ = 0;
    std::vector<Sample> samples_;
    std::vector<std::vector<size_t>> by_input_;
};

// Noise support Omega = [l, h], componentwise.
struct NoiseSupport {
    Vec l, h;
    void check() const;
};

struct LearnerConfig {
    double lipschitz = 0.0;   // L-infinity Lipschitz bound on the dynamics
    NoiseSupport noise;
    // 0 disables the per-cell subgrid refinement of the box extremization;
    // k >= 2 evaluates the pointwise bounds on a k^n subgrid with Lipschitz
    // slack, intersected with the corner-distance closed form.
    int refine_subdiv = 0;
};

// Axis-aligned box; `empty` boxes contain no points.
struct Box {
    Vec lo, hi;
    bool empty = false;

    static Box whole(const Vec& lo, const Vec& hi) { return Box{lo, hi, false}; }
    static Box make_empty(int dim) { return Box{Vec::Zero(dim), Vec::Zero(dim), true}; }

    int dim() const { return (int)lo.size(); }
    bool contains(const Vec& x) const;
    // Closed-comparison intersection/containment (boundary counts).
    bool intersects_closed(const Box& other) const;
    bool contains_closed(const Box& other) const;
    // Marks the box empty when some dimension is inverted.
    void normalize();
};

struct PointBounds {
    Vec check_f;        // lower bound on f(x*, u)
    Vec hat_f;          // upper bound on f(x*, u)
    bool inconsistent;  // check_f > hat_f somewhere: L or Omega were under-estimated
};

// Pointwise dynamics bounds from samples with input u. Throws
// no_data_for_input when the per-input slice is empty.
PointBounds bounds_at_point(const Vec& x_star, input_t u, const Dataset& d, const LearnerConfig& cfg);

struct ReachBoxes {
    Box under, over;
};

// One-step reachable-set under/over boxes for a cell, via the sound
// corner-distance relaxation of the box extremization (plus the optional
// subgrid refinement). With no data for u: under empty, over = domain.
ReachBoxes cell_reach_boxes(input_t u, const Dataset& d, const LearnerConfig& cfg,
                            const Box& cell, const Box& domain);

// Streaming form of the same bounds: absorbing samples one at a time yields
// bit-identical boxes to a from-scratch pass, since all aggregation is
// max/min. One instance per (cell, input).
struct CellBoundsCache {
    Vec check_lb;  // running max_i (x_i+ - L * Dmax(x_i, cell)), before -h
    Vec hat_ub;    // running min_i (x_i+ + L * Dmax(x_i, cell)), before -l
    bool has_data = false;

    void absorb(const Sample& s, const LearnerConfig& cfg, const Box& cell);
    ReachBoxes boxes(const LearnerConfig& cfg, const Box& domain) const;
};

// max over cell corners of the L-infinity distance to x.
double corner_distance(const Vec& x, const Box& cell);

// Dataset file: header `n |U| l_1..l_n h_1..h_n`, then one record per line
// `x_1 .. x_n ; u ; y_1 .. y_n`.
struct DatasetFile {
    Dataset data;
    NoiseSupport noise;
};

DatasetFile read_dataset(std::istream& in);
DatasetFile read_dataset_file(const std::string& path);
void write_dataset(std::ostream& out, const Dataset& d, const NoiseSupport& noise);
void write_dataset_file(const std::string& path, const Dataset& d, const NoiseSupport& noise);

} // namespace incsyn
