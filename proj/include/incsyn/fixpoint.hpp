#pragma once

#include <cstdint>
#include <vector>

#include "incsyn/game.hpp"
#include "incsyn/pm.hpp"

namespace incsyn {

// Dense bitset over the vertex id space.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(size_t n) : n_(n), bits_((n + 63) / 64, 0) {}

    size_t universe() const { return n_; }
    bool test(vertex_t v) const { return bits_[v >> 6] >> (v & 63) & 1; }
    void set(vertex_t v) { bits_[v >> 6] |= uint64_t(1) << (v & 63); }
    void reset(vertex_t v) { bits_[v >> 6] &= ~(uint64_t(1) << (v & 63)); }
    size_t count() const;
    bool operator==(const VertexSet& o) const { return bits_ == o.bits_; }

    std::vector<vertex_t> to_list() const;
    static VertexSet of(size_t n, const std::vector<vertex_t>& xs);

private:
    size_t n_ = 0;
    std::vector<uint64_t> bits_;
};

// Literal monotone set transformers over a (fair) game graph. These are the
// reference definitions; the solvers below compute the same fixpoints with
// worklists and are differentially tested against them.
VertexSet pre1_forall(const GameGraph& g, const VertexSet& h);
VertexSet pre0_exists(const GameGraph& g, const VertexSet& h);
VertexSet pre0_forall(const GameGraph& g, const VertexSet& h);
VertexSet pre1_exists(const GameGraph& g, const VertexSet& h);
VertexSet cpre0(const GameGraph& g, const VertexSet& h);
VertexSet cpre1(const GameGraph& g, const VertexSet& h);
VertexSet lpre_exists(const GameGraph& g, const VertexSet& h);
VertexSet lpre_forall(const GameGraph& g, const VertexSet& h);

struct FixpointTrace {
    // Outer-iteration snapshots: y_sizes[l] = |Y^l|, starting at Y^0.
    std::vector<size_t> y_sizes;
};

struct PsiResult {
    VertexSet win1;            // least fixpoint of the psi formula
    ProgressMeasure rho_psi;   // outer-iteration rank; top outside win1
    FixpointTrace trace;
};

// The mu-outer / nu-inner formula computing Win_1 of a fair Buchi game (the
// minimizing player's region of the dual cofair coBuchi game), together with
// the iteration rank, which equals the direct lifting least fixpoint.
PsiResult solve_psi(const GameGraph& g, const Spec& spec);

struct PsiBarResult {
    VertexSet win0;
    FixpointTrace trace;
};

// The negated formula: Win_0 of a fair Buchi game by nu-outer / mu-inner
// evaluation. Complement of solve_psi's win1.
PsiBarResult solve_psi_bar(const GameGraph& g, const Spec& spec);

struct ControllerResult {
    std::vector<uint32_t> rank;   // inner entry rank with Y pinned to win0; top outside
    PositionalStrategy strategy;  // minimal-rank successor for every P0 vertex in win0
};

// Final inner iteration of the psi-bar formula warm-started at win0; the
// recorded entry ranks induce the minimal-successor controller strategy.
// Requires that P0 owns no fair vertices.
ControllerResult synth_controller(const GameGraph& g, const Spec& spec, const VertexSet& win0);

} // namespace incsyn
